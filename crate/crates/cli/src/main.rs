//! `braidcover`: command-line front end.
//!
//! Output is one JSON object per line unless `--table` is given. Exit codes:
//! 0 success, 1 a check failed, 2 bad input, 3 a search ran out of budget.

use std::process::ExitCode;

use braidcover::action::{self, ColoredBraid};
use braidcover::braid::{self, BraidWord};
use braidcover::catalog::{self, CensusLimits, CensusMode, Derivation, GeneratorSet, MoveId};
use braidcover::complex::OrbitComplex;
use braidcover::homlift::SurfaceModel;
use braidcover::rewrite::{self, Budget, Outcome, RewriteCertificate};
use braidcover::verify::{self, VerifyConfig};
use braidcover::{Coloring, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "braidcover", version, about = "Colored braids and their lifts to branched covers")]
struct Cli {
    /// Human-readable tables instead of JSON lines.
    #[arg(long, global = true)]
    table: bool,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct BudgetArgs {
    /// Maximum local moves on a search path.
    #[arg(long, global = true, env = "BRAIDCOVER_DEPTH", default_value_t = 24)]
    depth: usize,
    /// Maximum word length during search.
    #[arg(long, global = true, env = "BRAIDCOVER_LENGTH", default_value_t = 64)]
    length: usize,
    /// Maximum visited states per search.
    #[arg(long, global = true, env = "BRAIDCOVER_STATES", default_value_t = 10_000_000)]
    states: usize,
    /// Vertex cap for orbit enumeration.
    #[arg(long, global = true, env = "BRAIDCOVER_CAP", default_value_t = 200_000)]
    cap: usize,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = "BRAIDCOVER_WORKERS", default_value_t = 0)]
    workers: usize,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            depth: self.depth,
            length: self.length,
            states: self.states,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Gens {
    Bw,
    Full,
}

impl From<Gens> for GeneratorSet {
    fn from(g: Gens) -> Self {
        match g {
            Gens::Bw => GeneratorSet::Bw,
            Gens::Full => GeneratorSet::Full,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Apply a braid word to a coloring.
    Act { coloring: String, word: String },
    /// Whether a braid word fixes a coloring.
    Liftable { coloring: String, word: String },
    /// The orbit of a coloring.
    Orbit {
        #[arg(long)]
        seed: String,
        #[arg(long, value_enum, default_value = "bw")]
        gens: Gens,
    },
    /// The orbit complex of a coloring under the BW generators.
    Complex {
        #[arg(long)]
        seed: String,
        /// Print Graphviz instead of a summary.
        #[arg(long)]
        dot: bool,
    },
    /// Schreier generators of the stabilizer, one lasso per line.
    Lassos {
        #[arg(long)]
        seed: String,
    },
    /// Certify that a liftable word is trivial modulo the local moves.
    Reduce { coloring: String, word: String },
    /// Certify that two colored braids agree modulo the local moves.
    Equiv { coloring: String, left: String, right: String },
    /// Replay a certificate stored as JSON.
    CheckCert { path: String },
    /// Rank of the closed cover and, given a word, its action matrix.
    Homology {
        #[arg(long)]
        coloring: String,
        #[arg(long)]
        word: Option<String>,
    },
    /// The move catalog.
    Moves {
        #[command(subcommand)]
        action: MovesCmd,
    },
    /// Braid orbits on colorings of degree 4 or 5.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Seed colorings, comma separated; exhaustive when absent.
        #[arg(long, value_delimiter = ',')]
        seeds: Vec<String>,
        #[arg(long, value_enum, default_value = "full")]
        gens: Gens,
        /// Schreier generators examined per orbit.
        #[arg(long, default_value_t = 4)]
        sample: usize,
    },
    /// Run the acceptance suite.
    Verify {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
        /// Seed for the randomized criteria.
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Accepted for compatibility; the suite's widths are fixed.
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
}

#[derive(Subcommand)]
enum MovesCmd {
    /// Print every move.
    List,
    /// Check liftability and homology triviality.
    Validate {
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Try to derive a move from M, P and one trivial sheet.
    Derive {
        id: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
}

/// Failure modes mapped to exit codes.
enum Fail {
    Usage(String),
    Check(String),
    Unknown(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::MalformedIndexSet(_)
            | Error::InvalidColoring(_)
            | Error::InvalidTransposition(..)
            | Error::StrandMismatch { .. }
            | Error::IndexOutOfRange { .. }
            | Error::MoveWidth(..)
            | Error::Unsupported(_) => Fail::Usage(e.to_string()),
            other => Fail::Check(other.to_string()),
        }
    }
}

type Run = Result<(), Fail>;

fn coloring(s: &str) -> Result<Coloring, Fail> {
    Ok(s.parse::<Coloring>()?)
}

fn word(s: &str, c: &Coloring) -> Result<BraidWord, Fail> {
    Ok(braid::parse_word(s, c.len())?)
}

fn emit(v: serde_json::Value) {
    println!("{v}");
}

fn outcome(o: Outcome, table: bool) -> Run {
    match o {
        Outcome::Certified(c) => {
            if table {
                println!("certified: {} steps, {} local moves", c.steps.len(), c.local_moves());
                for s in &c.steps {
                    println!("  {s}");
                }
            } else {
                emit(json!({ "status": "CERTIFIED", "certificate": c }));
            }
            Ok(())
        }
        Outcome::Unknown { states } => {
            if table {
                println!("unknown after {states} states");
            } else {
                emit(json!({ "status": "UNKNOWN", "states": states }));
            }
            Err(Fail::Unknown(format!("budget exhausted after {states} states")))
        }
    }
}

fn run(cli: Cli) -> Run {
    let budget = cli.budget.budget();
    let cap = cli.budget.cap;
    let table = cli.table;
    match cli.cmd {
        Cmd::Act { coloring: c, word: w } => {
            let c = coloring(&c)?;
            let w = word(&w, &c)?;
            let out = action::apply(&w, &c)?;
            if table {
                println!("{c}\n  {w}\n{out}");
            } else {
                emit(json!({ "source": c.canonical_text(), "word": w.to_string(), "target": out.canonical_text(), "liftable": out == c }));
            }
        }
        Cmd::Liftable { coloring: c, word: w } => {
            let c = coloring(&c)?;
            let w = word(&w, &c)?;
            let ok = action::is_liftable(&w, &c)?;
            if table {
                println!("{}", if ok { "liftable" } else { "not liftable" });
            } else {
                emit(json!({ "liftable": ok }));
            }
        }
        Cmd::Orbit { seed, gens } => {
            let c = coloring(&seed)?;
            let (words, labels) = match gens {
                Gens::Bw => (braid::bw_generator_set(c.len())?, braid::bw_generator_labels(c.len())),
                Gens::Full => (
                    (0..c.len() - 1).map(|i| BraidWord::gen(c.len(), i, 1)).collect::<Result<_, _>>()?,
                    (0..c.len() - 1).map(|i| format!("b{i}")).collect(),
                ),
            };
            let o = action::orbit(&c, &words, &labels, cap)?;
            if table {
                println!("{} vertices", o.len());
                for v in o.sorted_vertices() {
                    println!("  {v}");
                }
            } else {
                emit(json!({ "seed": c.canonical_text(), "size": o.len(), "orbit": o.report() }));
            }
        }
        Cmd::Complex { seed, dot } => {
            let c = coloring(&seed)?;
            let cx = OrbitComplex::bw(&c, cap)?;
            if dot {
                print!("{}", cx.to_dot(verify::short_name));
                return Ok(());
            }
            let squares = cx.squares()?;
            let lassos = cx.schreier_generators().len();
            let tree = cx.cells.iter().filter(|c| c.tree).count();
            if table {
                println!(
                    "{} vertices, {} loops, {} edges ({tree} in tree), {lassos} lassos, {} squares",
                    cx.vertex_count(),
                    cx.loops().count(),
                    cx.edges().count(),
                    squares.len()
                );
                for (g, a, b) in cx.edge_labels(verify::short_name) {
                    println!("  {a} -{g}- {b}");
                }
            } else {
                emit(json!({
                    "vertices": cx.vertex_count(),
                    "loops": cx.loops().count(),
                    "edges": cx.edge_labels(verify::short_name),
                    "tree_edges": tree,
                    "lassos": lassos,
                    "squares": squares,
                }));
            }
        }
        Cmd::Lassos { seed } => {
            let c = coloring(&seed)?;
            let cx = OrbitComplex::bw(&c, cap)?;
            for l in cx.schreier_generators() {
                let (from, to) = (&cx.orbit.vertices[l.vertex], &cx.orbit.vertices[l.other]);
                if table {
                    println!("{} {} -> {}: {}", l.label, verify::short_name(from), verify::short_name(to), l.word);
                } else {
                    emit(json!({ "head": l.label, "from": from.canonical_text(), "to": to.canonical_text(), "word": l.word.to_string() }));
                }
            }
        }
        Cmd::Reduce { coloring: c, word: w } => {
            let c = coloring(&c)?;
            let w = word(&w, &c)?;
            return outcome(rewrite::in_reduced_kernel(&w, &c, budget)?, table);
        }
        Cmd::Equiv { coloring: c, left, right } => {
            let c = coloring(&c)?;
            let a = ColoredBraid::new(c.clone(), word(&left, &c)?)?;
            let b = ColoredBraid::new(c.clone(), word(&right, &c)?)?;
            return outcome(rewrite::equivalent(&a, &b, budget)?, table);
        }
        Cmd::CheckCert { path } => {
            let text = std::fs::read_to_string(&path).map_err(|e| Fail::Usage(format!("{path}: {e}")))?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| Fail::Usage(format!("{path}: {e}")))?;
            let value = value.get("certificate").cloned().unwrap_or(value);
            let cert: RewriteCertificate =
                serde_json::from_value(value).map_err(|e| Fail::Usage(format!("{path}: {e}")))?;
            let ok = rewrite::replay(&cert)?;
            if table {
                println!("{}", if ok { "replays" } else { "rejected" });
            } else {
                emit(json!({ "replays": ok, "steps": cert.steps.len(), "local_moves": cert.local_moves() }));
            }
            if !ok {
                return Err(Fail::Check("certificate rejected".into()));
            }
        }
        Cmd::Homology { coloring: c, word: w } => {
            let c = coloring(&c)?;
            let m = SurfaceModel::build(&c)?;
            let action = match &w {
                Some(w) => Some(m.action(&word(w, &c)?)?),
                None => None,
            };
            if table {
                println!("rank {} genus {}", m.rank(), m.genus());
                if let Some(a) = &action {
                    for row in a.rows() {
                        println!("  {row:?}");
                    }
                }
            } else {
                emit(json!({
                    "rank": m.rank(),
                    "genus": m.genus(),
                    "basis": m.basis_description(),
                    "matrix": action.as_ref().map(|a| a.rows()),
                    "identity": action.as_ref().map(|a| a.is_identity()),
                }));
            }
        }
        Cmd::Moves { action: m } => return moves(m, budget, table),
        Cmd::Census { n, d, seeds, gens, sample } => {
            let mode = if seeds.is_empty() {
                CensusMode::Exhaustive
            } else {
                CensusMode::Seeded {
                    seeds: seeds.iter().map(|s| coloring(s)).collect::<Result<_, _>>()?,
                    gens: gens.into(),
                }
            };
            let limits = CensusLimits {
                orbit_cap: cap,
                sample,
                budget: Budget {
                    states: budget.states.min(CensusLimits::default().budget.states),
                    ..budget
                },
            };
            let report = catalog::census(n, d, &mode, limits)?;
            if table {
                print!("{}", report.table());
            } else {
                println!("{}", report.to_json());
            }
        }
        Cmd::Verify { only, seed, n_max: _ } => {
            let cfg = VerifyConfig {
                seed,
                budget,
                ..VerifyConfig::default()
            };
            let ids: Vec<usize> = if only.is_empty() { (1..=verify::CRITERIA.len()).collect() } else { only };
            let mut failed = 0;
            for id in ids {
                let r = verify::run(id, &cfg);
                if table {
                    println!("{r}");
                } else {
                    emit(serde_json::to_value(&r).expect("serializable"));
                }
                failed += usize::from(!r.pass);
            }
            if failed > 0 {
                return Err(Fail::Check(format!("{failed} criteria failed")));
            }
        }
    }
    Ok(())
}

fn moves(cmd: MovesCmd, budget: Budget, table: bool) -> Run {
    match cmd {
        MovesCmd::List => {
            for spec in catalog::move_specs()? {
                if table {
                    println!("{:<4} n>={:<3} {:<40} {}", spec.id, spec.min_strands, spec.lhs, spec.context.head.join(""));
                } else {
                    emit(serde_json::to_value(&spec).expect("serializable"));
                }
            }
        }
        MovesCmd::Validate { n } => {
            let mut bad = 0;
            for id in MoveId::ALL {
                let chk = catalog::check_move(id, n)?;
                bad += usize::from(!chk.passes());
                if table {
                    println!("{:<4} n={:<3} liftable {:<5} homology trivial {}", id, chk.strands, chk.liftable, chk.homology_trivial);
                } else {
                    emit(serde_json::to_value(&chk).expect("serializable"));
                }
            }
            if bad > 0 {
                return Err(Fail::Check(format!("{bad} moves rejected")));
            }
        }
        MovesCmd::Derive { id, n } => {
            let id: MoveId = id.parse()?;
            match catalog::derive_move(id, n, budget)? {
                Derivation::Certified(c) => return outcome(Outcome::Certified(c), table),
                Derivation::Obstructed { context, relative_rank, deviation_rank } => {
                    if table {
                        println!("obstructed over {context}: relative action moves a rank-{deviation_rank} part of {relative_rank}");
                    } else {
                        emit(json!({ "status": "OBSTRUCTED", "context": context, "relative_rank": relative_rank, "deviation_rank": deviation_rank }));
                    }
                    return Err(Fail::Check(format!("move {id} cannot be derived by local moves")));
                }
                Derivation::Unknown { reason } => {
                    if table {
                        println!("unknown: {reason}");
                    } else {
                        emit(json!({ "status": "UNKNOWN", "reason": reason }));
                    }
                    return Err(Fail::Unknown(reason));
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.budget.workers > 0 {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.budget.workers).build_global();
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Unknown(m)) => {
            eprintln!("unknown: {m}");
            ExitCode::from(3)
        }
    }
}
