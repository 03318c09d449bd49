use thiserror::Error;

/// Errors shared across the crate.
///
/// Budget errors are raised by enumeration routines when a configured cap
/// would be exceeded; they are ordinary recoverable errors, not panics, so
/// callers driving large corpora can skip pathological inputs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex index {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop edge at vertex {vertex} is not allowed")]
    LoopEdge { vertex: usize },

    #[error("duplicate edge between vertices {u} and {v}")]
    DuplicateEdge { u: usize, v: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("simple cycle count exceeds the configured budget of {budget}")]
    CycleBudgetExceeded { budget: usize },

    #[error("enumeration exceeds the configured budget of {budget}")]
    EnumerationBudgetExceeded { budget: usize },

    #[error("subgraph search exceeds the configured budget of {budget}")]
    SearchBudgetExceeded { budget: usize },

    #[error("vertex {vertex} is not a pendant vertex")]
    NotPendant { vertex: usize },

    #[error("cycles are not pairwise vertex-disjoint")]
    CyclesNotDisjoint,

    #[error("identification would create a multiedge")]
    WouldCreateMultiedge,

    #[error("graph has an undirected edge, so no skew adjacency matrix exists")]
    HasUndirectedEdge,

    #[error("characteristic polynomial has a coefficient with nonzero imaginary part (input is not Hermitian)")]
    NonRealCoefficient,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("check does not apply: {0}")]
    NotApplicable(String),
}

/// Caps for the potentially exponential enumeration routines.
///
/// Every budgeted operation takes the caps explicitly so library calls stay
/// pure; binaries may populate the struct from environment variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Maximum number of simple cycles enumerated per graph.
    pub cycles: usize,
    /// Maximum number of items produced by matching / subgraph enumerations.
    pub enumeration: usize,
    /// Maximum number of distinct states visited by reduction searches.
    pub search: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            cycles: 1_000_000,
            enumeration: 1_000_000,
            search: 100_000,
        }
    }
}

impl Budgets {
    /// Reads overrides from `HRANK_CYCLE_BUDGET`, `HRANK_ENUM_BUDGET` and
    /// `HRANK_SEARCH_BUDGET`; unset or unparsable variables keep defaults.
    pub fn from_env() -> Self {
        fn read(name: &str, default: usize) -> usize {
            std::env::var(name)
                .ok()
                .and_then(|v| v.trim().parse().ok())
                .unwrap_or(default)
        }
        let d = Budgets::default();
        Budgets {
            cycles: read("HRANK_CYCLE_BUDGET", d.cycles),
            enumeration: read("HRANK_ENUM_BUDGET", d.enumeration),
            search: read("HRANK_SEARCH_BUDGET", d.search),
        }
    }
}
