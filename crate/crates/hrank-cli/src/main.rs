use std::fs;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hrank::algebra::{charpoly_exact, h_rank, hermitian_adjacency};
use hrank::checkers::{
    bound_report, check_theorem_1_1, check_theorem_1_3, check_theorem_1_4, check_theorem_1_5,
    classify_component,
};
use hrank::graph::{components, structure_summary, MixedGraph};
use hrank::matching::{
    fractional_matching_number, max_disjoint_odd_cycles, max_matching,
    optimal_fractional_matchings,
};
use hrank::mg1::parse_mg1;
use hrank::{Budgets, Error};

use hrank_cli::corpus::{CorpusMode, CorpusSpec};
use hrank_cli::verify::{run_verify, Check};

#[derive(Parser)]
#[command(
    name = "hrank",
    version,
    about = "Exact H-rank computations and corpus verification for mixed graphs",
    long_about = "Computes exact spectral and matching invariants of mixed graphs \
                  (graphs whose edges may be undirected or directed), checks the \
                  structural rank characterizations, and drives verification sweeps \
                  over exhaustive or random corpora.\n\nAll single-graph commands read \
                  the MG1 text format: a line `n <count>`, then `e <u> <v>` per \
                  undirected edge and `a <u> <v>` per arc, with `#` comments."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rank of the Hermitian adjacency matrix
    Rank { input: Option<PathBuf> },
    /// Characteristic polynomial coefficients, highest power first
    Charpoly { input: Option<PathBuf> },
    /// Maximum matching of the underlying graph
    Matching { input: Option<PathBuf> },
    /// Fractional matching number and all optimal fractional matchings
    Fracmatching { input: Option<PathBuf> },
    /// Cycle structure: counts, signatures, and disjointness
    Cycles { input: Option<PathBuf> },
    /// Family classification of every connected component
    Classify { input: Option<PathBuf> },
    /// Evaluate one of the rank characterization checkers
    Check {
        #[arg(long)]
        theorem: TheoremId,
        input: Option<PathBuf>,
    },
    /// Rank bounds, tightness flags, and invariant violations as JSON
    Bounds { input: Option<PathBuf> },
    /// Sweep a corpus of graphs through the checkers
    Verify {
        /// Corpus kind
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// Order or inclusive order range, e.g. `4` or `3..5`
        #[arg(long, default_value = "4")]
        n: String,
        /// Graphs per order (random mode)
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Stream seed (random mode)
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Probability that a vertex pair carries an edge (random mode)
        #[arg(long, default_value_t = 0.3)]
        edge_probability: f64,
        /// Comma-separated subset of bounds,thm11,thm13,thm14,thm15,sachs,lemmas
        #[arg(long, default_value = "all")]
        checks: String,
        /// Worker threads
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Report path prefix; writes <out>.jsonl and <out>.csv
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record per-row elapsed time (makes output nondeterministic)
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremId {
    #[value(name = "1.1")]
    T11,
    #[value(name = "1.3")]
    T13,
    #[value(name = "1.4")]
    T14,
    #[value(name = "1.5")]
    T15,
}

fn read_graph(input: &Option<PathBuf>) -> Result<MixedGraph, String> {
    let text = match input {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| format!("reading {}: {e}", path.display()))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("reading standard input: {e}"))?;
            buf
        }
    };
    parse_mg1(&text).map_err(|e| e.to_string())
}

fn parse_order_range(text: &str) -> Result<(usize, usize), String> {
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|e| format!("bad order '{s}': {e}"));
    match text.split_once("..") {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi)?)),
        None => {
            let n = parse(text)?;
            Ok((n, n))
        }
    }
}

fn single_graph(cmd: &Cmd, g: &MixedGraph, budgets: &Budgets) -> Result<bool, Error> {
    let mut clean = true;
    match cmd {
        Cmd::Rank { .. } => println!("{}", h_rank(g)),
        Cmd::Charpoly { .. } => {
            let cp = charpoly_exact(&hermitian_adjacency(g))?;
            println!("{}", cp.to_decimal_strings().join(" "));
        }
        Cmd::Matching { .. } => {
            let (matching, m) = max_matching(g);
            println!("m {m}");
            for &e in &matching.edge_refs {
                let rec = &g.edges()[e];
                println!("{} {}", rec.u, rec.v);
            }
        }
        Cmd::Fracmatching { .. } => {
            let star = fractional_matching_number(g);
            println!("m* {star}");
            let optima = optimal_fractional_matchings(g, budgets)?;
            let e2_max = optima
                .first()
                .map(|f| f.weights.iter().filter(|&&w| w == 2).count())
                .unwrap_or(0);
            println!("weight-1 edges {e2_max}");
            for f in &optima {
                let digits: String =
                    f.weights.iter().map(|w| char::from(b'0' + w)).collect();
                println!("{digits}");
            }
        }
        Cmd::Cycles { .. } => {
            let s = structure_summary(g, budgets)?;
            let (_, rho) = max_disjoint_odd_cycles(g, budgets)?;
            println!(
                "omega {} c {} kappa {} rho {} disjoint {}",
                s.omega,
                s.c,
                s.kappa,
                rho,
                s.cycles_disjoint(false)
            );
            for cyc in &s.cycles {
                let verts: Vec<String> =
                    cyc.vertices.iter().map(|v| v.to_string()).collect();
                println!("cycle len {} sigma {} vertices {}", cyc.len(), cyc.sigma(), verts.join(","));
            }
        }
        Cmd::Classify { .. } => {
            for (k, (comp, verts)) in components(g).iter().enumerate() {
                let label = classify_component(comp, budgets)?;
                let verts: Vec<String> = verts.iter().map(|v| v.to_string()).collect();
                println!(
                    "component {k} [{}]: {:?} ({})",
                    verts.join(","),
                    label.tag,
                    label.witness
                );
            }
        }
        Cmd::Check { theorem, .. } => {
            let (name, result) = match theorem {
                TheoremId::T11 => ("1.1", check_theorem_1_1(g, budgets)),
                TheoremId::T13 => ("1.3", check_theorem_1_3(g, budgets)),
                TheoremId::T14 => ("1.4", check_theorem_1_4(g, budgets)),
                TheoremId::T15 => ("1.5", check_theorem_1_5(g, budgets)),
            };
            match result {
                Ok((verdict, cert)) => {
                    println!("theorem {name}: {}", if verdict { "holds" } else { "fails" });
                    println!("{cert}");
                }
                Err(Error::NotApplicable(why)) => {
                    println!("theorem {name}: not applicable");
                    println!("{why}");
                }
                Err(e) => return Err(e),
            }
        }
        Cmd::Bounds { .. } => {
            let rep = bound_report(g, budgets)?;
            let broken = rep.violations();
            let mut doc = serde_json::to_value(rep).expect("report serializes");
            doc.as_object_mut()
                .expect("report is an object")
                .insert("violations".into(), serde_json::json!(broken));
            println!("{doc}");
            clean = broken.is_empty();
        }
        Cmd::Verify { .. } => unreachable!("verify is dispatched separately"),
    }
    Ok(clean)
}

#[allow(clippy::too_many_arguments)]
fn verify_cmd(
    mode: ModeArg,
    n: &str,
    trials: u64,
    seed: u64,
    edge_probability: f64,
    checks: &str,
    jobs: usize,
    out: &Option<PathBuf>,
    timings: bool,
    budgets: &Budgets,
) -> Result<bool, String> {
    let (n_lo, n_hi) = parse_order_range(n)?;
    let spec = match mode {
        ModeArg::Exhaustive => CorpusSpec::exhaustive(n_lo, n_hi),
        ModeArg::Random => {
            let mut s = CorpusSpec::random(n_lo, n_hi, trials, seed);
            s.edge_probability = edge_probability;
            s
        }
    };
    if spec.mode == CorpusMode::Random && spec.n_hi > 12 {
        return Err("random corpora are intended for n <= 12".into());
    }
    let checks = Check::parse_set(checks)?;

    let outcome = match out {
        Some(prefix) => {
            let jsonl_path = with_suffix(prefix, "jsonl");
            let csv_path = with_suffix(prefix, "csv");
            let mut jsonl = BufWriter::new(
                fs::File::create(&jsonl_path)
                    .map_err(|e| format!("creating {}: {e}", jsonl_path.display()))?,
            );
            let outcome = run_verify(&spec, &checks, jobs, timings, budgets, &mut jsonl)
                .map_err(|e| e.to_string())?;
            jsonl.flush().map_err(|e| e.to_string())?;
            let mut csv = BufWriter::new(
                fs::File::create(&csv_path)
                    .map_err(|e| format!("creating {}: {e}", csv_path.display()))?,
            );
            outcome.summary.write_csv(&mut csv).map_err(|e| e.to_string())?;
            csv.flush().map_err(|e| e.to_string())?;
            eprintln!(
                "wrote {} rows to {} and summary to {}",
                outcome.rows,
                jsonl_path.display(),
                csv_path.display()
            );
            outcome
        }
        None => {
            let stdout = std::io::stdout();
            let mut jsonl = BufWriter::new(stdout.lock());
            let outcome = run_verify(&spec, &checks, jobs, timings, budgets, &mut jsonl)
                .map_err(|e| e.to_string())?;
            jsonl.flush().map_err(|e| e.to_string())?;
            let mut csv = Vec::new();
            outcome.summary.write_csv(&mut csv).map_err(|e| e.to_string())?;
            eprint!("{}", String::from_utf8_lossy(&csv));
            outcome
        }
    };
    eprintln!("rows {} violations {}", outcome.rows, outcome.violations);
    Ok(outcome.violations == 0)
}

fn with_suffix(prefix: &Path, ext: &str) -> PathBuf {
    let mut name = prefix.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(".");
    name.push(ext);
    prefix.with_file_name(name)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budgets = Budgets::from_env();

    let clean = match &cli.cmd {
        Cmd::Verify {
            mode,
            n,
            trials,
            seed,
            edge_probability,
            checks,
            jobs,
            out,
            timings,
        } => verify_cmd(
            *mode,
            n,
            *trials,
            *seed,
            *edge_probability,
            checks,
            *jobs,
            out,
            *timings,
            &budgets,
        ),
        cmd => {
            let input = match cmd {
                Cmd::Rank { input }
                | Cmd::Charpoly { input }
                | Cmd::Matching { input }
                | Cmd::Fracmatching { input }
                | Cmd::Cycles { input }
                | Cmd::Classify { input }
                | Cmd::Check { input, .. }
                | Cmd::Bounds { input } => input,
                Cmd::Verify { .. } => unreachable!(),
            };
            match read_graph(input) {
                Ok(g) => single_graph(cmd, &g, &budgets).map_err(|e| e.to_string()),
                Err(e) => Err(e),
            }
        }
    };

    match clean {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
