//! The verification engine behind `hrank verify`: runs selected checkers
//! over a corpus, records one row per graph, and never aborts on a
//! violation so every reported counterexample ships with its MG1 text.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{self, Write};
use std::sync::mpsc;
use std::sync::Mutex;
use std::time::Instant;

use hrank::algebra::{charpoly_exact, h_rank, hermitian_adjacency};
use hrank::checkers::{
    bound_report, check_theorem_1_1, check_theorem_1_3, check_theorem_1_4, check_theorem_1_5,
    is_bare_cycle, split_off_pendant_cycle, BoundReport,
};
use hrank::graph::{components, structure_summary, EdgeRecord, MixedGraph};
use hrank::matching::{fractional_matching_number, max_matching};
use hrank::mg1::emit_mg1;
use hrank::oracle::exists_augmenting_path;
use hrank::sachs::{cycle_rank_formula, identification_rank, sachs_coefficients_all};
use hrank::{Budgets, Error};

use crate::corpus::{CorpusItem, CorpusSpec};
use crate::report::{graph_id, CheckOutcome, SummaryCounts, VerificationRow};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Check {
    Bounds,
    Thm11,
    Thm13,
    Thm14,
    Thm15,
    Sachs,
    Lemmas,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Bounds,
        Check::Thm11,
        Check::Thm13,
        Check::Thm14,
        Check::Thm15,
        Check::Sachs,
        Check::Lemmas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Bounds => "bounds",
            Check::Thm11 => "thm11",
            Check::Thm13 => "thm13",
            Check::Thm14 => "thm14",
            Check::Thm15 => "thm15",
            Check::Sachs => "sachs",
            Check::Lemmas => "lemmas",
        }
    }

    /// Parses a comma-separated subset; `all` selects every check.
    pub fn parse_set(text: &str) -> Result<BTreeSet<Check>, String> {
        let mut out = BTreeSet::new();
        for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if token == "all" {
                out.extend(Check::ALL);
                continue;
            }
            let found = Check::ALL.iter().copied().find(|c| c.name() == token);
            match found {
                Some(c) => {
                    out.insert(c);
                }
                None => return Err(format!("unknown check '{token}'")),
            }
        }
        if out.is_empty() {
            return Err("no checks selected".into());
        }
        Ok(out)
    }
}

/// Violated lemma invariants of `g`, by message. Covers the rank and
/// matching facts 2.1 through 2.8 and 2.12 through 2.16 from the checker
/// glossary: deletion bounds, pendant reductions, component additivity,
/// forest and cycle closed forms, the excluded rank value, bipartite
/// fractional collapse, pendant-cycle reductions, and the Berge
/// certificate of the computed maximum matching.
pub fn lemma_violations(g: &MixedGraph, budgets: &Budgets) -> Result<Vec<String>, Error> {
    let mut bad = Vec::new();
    let n = g.n();
    let summary = structure_summary(g, budgets)?;
    let r = h_rank(g) as i64;
    let (matching, m_usize) = max_matching(g);
    let m = m_usize as i64;
    let c = summary.c as i64;

    for v in 0..n {
        let (sub, _) = g.delete_vertices(&[v]);
        let rv = h_rank(&sub) as i64;
        if !(r - 2 <= rv && rv <= r) {
            bad.push(format!("2.1: rank went {r} -> {rv} deleting vertex {v}"));
        }
        let mv = max_matching(&sub).1 as i64;
        if !(m - 1 <= mv && mv <= m) {
            bad.push(format!("2.6: matching went {m} -> {mv} deleting vertex {v}"));
        }
    }

    for &x in &summary.pendant_vertices {
        let y = g.neighbors(x).next().expect("pendant vertex has a neighbor").0;
        let (gxy, _) = g.delete_vertices(&[x, y]);
        let rxy = h_rank(&gxy) as i64;
        if r != rxy + 2 {
            bad.push(format!("2.2: pendant pair ({x},{y}) gave rank {rxy}+2 != {r}"));
        }
        let (gy, _) = g.delete_vertices(&[y]);
        let my = max_matching(&gy).1 as i64;
        let mxy = max_matching(&gxy).1 as i64;
        if my != m - 1 || mxy != m - 1 {
            bad.push(format!("2.7: pendant pair ({x},{y}) gave m(G-y)={my}, m(G-x-y)={mxy}, m={m}"));
        }
        if r == 2 * m - 2 * c {
            if summary.cycles.iter().any(|cyc| cyc.vertices.contains(&y)) {
                bad.push(format!("2.14a: tight graph has cycle through pendant neighbor {y}"));
            }
            let s2 = structure_summary(&gxy, budgets)?;
            let m2 = max_matching(&gxy).1 as i64;
            if rxy != 2 * m2 - 2 * (s2.c as i64) {
                bad.push(format!(
                    "2.14b: reduced graph has r={rxy}, 2m-2c={}",
                    2 * m2 - 2 * (s2.c as i64)
                ));
            }
        }
    }

    let comp_rank_sum: i64 = components(g).iter().map(|(comp, _)| h_rank(comp) as i64).sum();
    if comp_rank_sum != r {
        bad.push(format!("2.3: component ranks sum to {comp_rank_sum}, graph rank {r}"));
    }
    if (r == 0) != (g.edge_count() == 0) {
        bad.push(format!("2.3: rank {r} with {} edges", g.edge_count()));
    }

    if summary.cycles.is_empty() {
        if r != 2 * m {
            bad.push(format!("2.4: forest with r={r}, 2m={}", 2 * m));
        }
        let undirected = MixedGraph::new(
            n,
            g.edges().iter().map(|e| EdgeRecord::undirected(e.u, e.v)).collect(),
        )
        .expect("forgetting directions preserves simplicity");
        if h_rank(&undirected) as i64 != r {
            bad.push("2.4: forest rank changed when directions were dropped".into());
        }
    }

    if is_bare_cycle(g) {
        let cyc = &summary.cycles[0];
        if r != cycle_rank_formula(n, cyc.sigma()) as i64 {
            bad.push(format!(
                "2.5: cycle n={n} sigma={} has rank {r}, formula says {}",
                cyc.sigma(),
                cycle_rank_formula(n, cyc.sigma())
            ));
        }
    }

    for pc in &summary.pendant_cycles {
        let h_part = split_off_pendant_cycle(g, pc);
        let (f_part, _) = g.delete_vertices(&pc.vertices);
        let q = pc.len();
        if let Some(want) = identification_rank(h_rank(&h_part), h_rank(&f_part), q, pc.sigma())
        {
            if r != want as i64 {
                bad.push(format!("2.8: pendant cycle q={q} sigma={} gave rank {r} != {want}", pc.sigma()));
            }
        }
        if q % 2 == 1 {
            let mh = max_matching(&h_part).1;
            if m_usize != mh + (q - 1) / 2 {
                bad.push(format!("2.15: pendant odd cycle q={q} gave m={m_usize} != {mh}+{}", (q - 1) / 2));
            }
        }
    }

    if r == 2 * m - 2 * c + 1 {
        bad.push(format!("2.12: rank hit the excluded value 2m-2c+1 = {r}"));
    }

    if g.is_bipartite() {
        let two_m_star = fractional_matching_number(g).doubled() as i64;
        if two_m_star != 2 * m {
            bad.push(format!("2.13: bipartite graph with 2m*={two_m_star}, 2m={}", 2 * m));
        }
    }

    if exists_augmenting_path(g, &matching.edge_refs) {
        bad.push("2.16: computed maximum matching admits an augmenting path".into());
    }

    Ok(bad)
}

fn theorem_outcome(
    result: Result<(bool, String), Error>,
    fact: Option<bool>,
    label: &str,
    violations: &mut Vec<String>,
) -> CheckOutcome {
    match result {
        Ok((verdict, cert)) => match fact {
            Some(fact) => {
                if verdict == fact {
                    CheckOutcome::ok()
                } else {
                    let msg = format!(
                        "{label}: checker said {verdict}, rank fact said {fact} ({cert})"
                    );
                    violations.push(msg.clone());
                    CheckOutcome::fail(msg)
                }
            }
            None => CheckOutcome::error("rank facts unavailable".into()),
        },
        Err(Error::NotApplicable(why)) => CheckOutcome::not_applicable(why),
        Err(e) => CheckOutcome::error(e.to_string()),
    }
}

/// Runs every requested check on one corpus graph.
pub fn evaluate(
    item: &CorpusItem,
    checks: &BTreeSet<Check>,
    budgets: &Budgets,
    timings: bool,
) -> VerificationRow {
    let start = timings.then(Instant::now);
    let g = &item.graph;
    let mut outcomes: BTreeMap<&'static str, CheckOutcome> = BTreeMap::new();
    let mut violations: Vec<String> = Vec::new();

    let report = bound_report(g, budgets);
    let bounds: Option<BoundReport> = report.as_ref().ok().copied();

    if checks.contains(&Check::Bounds) {
        let outcome = match &report {
            Ok(rep) => {
                let broken = rep.violations();
                if broken.is_empty() {
                    CheckOutcome::ok()
                } else {
                    violations.extend(broken.iter().cloned());
                    CheckOutcome::fail(broken.join("; "))
                }
            }
            Err(e) => CheckOutcome::error(e.to_string()),
        };
        outcomes.insert(Check::Bounds.name(), outcome);
    }

    let facts = bounds.map(|b| (b.r as i64, b.m as i64, b.c as i64, b.kappa as i64));

    if checks.contains(&Check::Thm11) {
        let fact = facts.map(|(r, m, c, _)| r == 2 * m - 2 * c);
        let outcome =
            theorem_outcome(check_theorem_1_1(g, budgets), fact, "thm11", &mut violations);
        outcomes.insert(Check::Thm11.name(), outcome);
    }
    if checks.contains(&Check::Thm13) {
        let fact = facts.map(|(r, m, _, k)| r == 2 * m - 2 * k);
        let outcome =
            theorem_outcome(check_theorem_1_3(g, budgets), fact, "thm13", &mut violations);
        outcomes.insert(Check::Thm13.name(), outcome);
    }
    if checks.contains(&Check::Thm14) {
        let fact = facts.map(|(r, m, _, k)| r == 2 * m - 2 * k + 1);
        let outcome =
            theorem_outcome(check_theorem_1_4(g, budgets), fact, "thm14", &mut violations);
        outcomes.insert(Check::Thm14.name(), outcome);
    }
    if checks.contains(&Check::Thm15) {
        let fact = facts.map(|(r, _, _, _)| r == g.n() as i64);
        let outcome =
            theorem_outcome(check_theorem_1_5(g, budgets), fact, "thm15", &mut violations);
        outcomes.insert(Check::Thm15.name(), outcome);
    }

    if checks.contains(&Check::Sachs) {
        let outcome = match (sachs_coefficients_all(g, budgets), charpoly_exact(&hermitian_adjacency(g))) {
            (Ok(sachs), Ok(cp)) => {
                if sachs == cp.coeffs {
                    CheckOutcome::ok()
                } else {
                    let msg = "sachs: subgraph expansion disagrees with elimination".to_string();
                    violations.push(msg.clone());
                    CheckOutcome::fail(msg)
                }
            }
            (Err(e), _) | (_, Err(e)) => CheckOutcome::error(e.to_string()),
        };
        outcomes.insert(Check::Sachs.name(), outcome);
    }

    if checks.contains(&Check::Lemmas) {
        let outcome = match lemma_violations(g, budgets) {
            Ok(broken) if broken.is_empty() => CheckOutcome::ok(),
            Ok(broken) => {
                violations.extend(broken.iter().cloned());
                CheckOutcome::fail(broken.join("; "))
            }
            Err(e) => CheckOutcome::error(e.to_string()),
        };
        outcomes.insert(Check::Lemmas.name(), outcome);
    }

    VerificationRow {
        index: item.index,
        graph_id: format!("{:016x}", graph_id(g)),
        n: item.n,
        mg1: emit_mg1(g),
        bounds,
        checks: outcomes,
        violations,
        elapsed_us: start.map(|t| t.elapsed().as_micros()),
    }
}

#[derive(Debug)]
pub struct VerifyOutcome {
    pub summary: SummaryCounts,
    pub rows: u64,
    pub violations: u64,
}

/// Streams the corpus through the checks, writing one JSON line per graph
/// in corpus order. With several jobs the rows are computed out of order
/// and re-sequenced, so output bytes do not depend on the worker count.
pub fn run_verify(
    spec: &CorpusSpec,
    checks: &BTreeSet<Check>,
    jobs: usize,
    timings: bool,
    budgets: &Budgets,
    jsonl: &mut dyn Write,
) -> Result<VerifyOutcome, Error> {
    spec.validate()?;
    let mut summary = SummaryCounts::default();
    let mut rows = 0u64;
    let mut violations = 0u64;

    let mut absorb = |row: &VerificationRow, jsonl: &mut dyn Write| -> io::Result<()> {
        summary.absorb_row(row);
        rows += 1;
        if !row.violations.is_empty() {
            violations += 1;
        }
        jsonl.write_all(row.to_jsonl().as_bytes())
    };

    if jobs <= 1 {
        for item in spec.iter()? {
            let row = evaluate(&item, checks, budgets, timings);
            absorb(&row, jsonl).map_err(|e| Error::InvalidParameters(e.to_string()))?;
        }
    } else {
        let source = Mutex::new(spec.iter()?);
        let (tx, rx) = mpsc::sync_channel::<VerificationRow>(jobs * 4);
        std::thread::scope(|scope| -> io::Result<()> {
            for _ in 0..jobs {
                let tx = tx.clone();
                let source = &source;
                scope.spawn(move || loop {
                    let item = { source.lock().expect("corpus lock").next() };
                    match item {
                        Some(item) => {
                            let row = evaluate(&item, checks, budgets, timings);
                            if tx.send(row).is_err() {
                                return;
                            }
                        }
                        None => return,
                    }
                });
            }
            drop(tx);

            // Re-sequence by row index; the sync channel bounds how far
            // ahead any worker can run, so the buffer stays small.
            let mut pending: BTreeMap<u64, VerificationRow> = BTreeMap::new();
            let mut next = 0u64;
            for row in rx {
                pending.insert(row.index, row);
                while let Some(row) = pending.remove(&next) {
                    absorb(&row, jsonl)?;
                    next += 1;
                }
            }
            while let Some(row) = pending.remove(&next) {
                absorb(&row, jsonl)?;
                next += 1;
            }
            assert!(pending.is_empty(), "corpus indices must be contiguous");
            Ok(())
        })
        .map_err(|e| Error::InvalidParameters(e.to_string()))?;
    }

    Ok(VerifyOutcome { summary, rows, violations })
}
