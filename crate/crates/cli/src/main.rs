//! `sgs`: entropy, zeta functions, properties, transforms, constructions
//! and a word oracle for set-equipped graph shifts.
//!
//! Set literals are comma-separated terms: `7` (an element), `3..6` (a
//! range), `2+2k` (2, 4, 6, …), `N` (all of ℕ). A leading `~` marks a set
//! known only up to a prefix. Gap sets may also contain `0`, and `N0` is ℕ₀.

mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sgs_core::dynamics::spec_constants;
use sgs_core::transforms::{edge_extend, in_split, lift, out_split, vertex_clone};
use sgs_core::zeta::{big_list_json, s_gap_p1};
use sgs_core::{
    build_gap_pair, build_ordered_limited, build_s_gap, build_unordered_limited, entropy,
    family_member, fingerprint, fingerprint_compare, greedy_beta_expansion, least_period_counts,
    parse_lambda, periodic_counts, properties, realize_entropy, s_gap_lambda, s_gap_zeta,
    sft_truncation, spiced_expansion, zeta_coeffs, EntropyMethod, GapSet, NSet, Oracle,
    OracleOptions, SGraph,
};

use crate::output::{emit, Format};

#[derive(Parser, Debug)]
#[command(
    name = "sgs",
    version,
    about = "Set-equipped graph shifts from the command line"
)]
struct Cli {
    /// Output format. Defaults to json, except word lists, which default to one word per line.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Also write the resulting graph (or report) to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Root-finding tolerance for entropy.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,

    /// Power-series order for zeta computations.
    #[arg(long, global = true, env = "SGS_SERIES_ORDER", default_value_t = 32)]
    order: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Entropy of the shift on a graph file.
    Entropy {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "spectral")]
        method: MethodArg,
        /// Restrict every set to [1, N] first.
        #[arg(long)]
        truncate: Option<u64>,
    },
    /// SFT, sofic, mixing, specification and related properties.
    Props {
        graph: PathBuf,
        /// Word length m for the specification constant r.
        #[arg(short = 'm', long, default_value_t = 1)]
        m: u64,
    },
    /// Zeta coefficients and periodic-point counts.
    Zeta { graph: PathBuf },
    /// p₁ and det(I - B(t)), optionally compared with a second graph.
    Fingerprint {
        graph: PathBuf,
        #[arg(long)]
        compare: Option<PathBuf>,
    },
    /// Apply one entropy-preserving transform.
    Op {
        #[command(subcommand)]
        op: OpCommand,
    },
    /// Conjugate shift on exactly q vertices.
    Lift {
        graph: PathBuf,
        #[arg(short = 'q', long)]
        q: usize,
    },
    /// Shift with entropy log λ from an expansion of 1 in base λ.
    Construct {
        /// A number or expression such as `2+sqrt(3)` or `phi`.
        #[arg(long)]
        lambda: String,
        /// Print the digit expansion instead of building a graph.
        #[arg(long, value_enum)]
        expansion: Option<FlavorArg>,
        /// Digits to print with --expansion.
        #[arg(long, default_value_t = 24)]
        digits: usize,
    },
    /// Member of the specification family for λ selected by a seed.
    Family {
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Brute-force word oracle.
    Oracle {
        #[command(subcommand)]
        query: OracleCommand,
    },
    /// Compare oracle counts with entropy and zeta computations.
    Crosscheck {
        graph: PathBuf,
        #[arg(short = 'n', long, default_value_t = 12)]
        n: usize,
        /// Allowed |log|B_n|/n - h| at the largest n.
        #[arg(long, default_value_t = 0.1)]
        entropy_tol: f64,
    },
    /// Build a graph for a named family.
    Builders {
        #[command(subcommand)]
        kind: BuilderCommand,
    },
}

#[derive(Subcommand, Debug)]
enum OpCommand {
    /// Split S_v as T1 ⊕ T2 along a new vertex.
    EdgeExtend {
        graph: PathBuf,
        #[arg(long)]
        at: String,
        #[arg(long)]
        t1: String,
        #[arg(long)]
        t2: String,
    },
    /// Split the out-neighbours of v into E1 and E2 (comma-separated names).
    OutSplit(SplitArgs),
    /// Split the in-neighbours of v into E1 and E2 (comma-separated names).
    InSplit(SplitArgs),
    /// Clone v with S_v = S1 ⊔ S2.
    Clone {
        graph: PathBuf,
        #[arg(long)]
        at: String,
        #[arg(long)]
        s1: String,
        #[arg(long)]
        s2: String,
    },
}

#[derive(Args, Debug)]
struct SplitArgs {
    graph: PathBuf,
    #[arg(long)]
    at: String,
    #[arg(long)]
    e1: String,
    #[arg(long)]
    e2: String,
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// All words of length n, sorted.
    Words(OracleArgs),
    /// |B_n|.
    Count(OracleArgs),
    /// Points of period n, grouped into orbits.
    Periodic(OracleArgs),
    /// log|B_n| / n.
    Estimate(OracleArgs),
}

#[derive(Args, Debug)]
struct OracleArgs {
    graph: PathBuf,
    #[arg(short = 'n', long)]
    n: usize,
    /// Longest word the oracle will enumerate.
    #[arg(long, default_value_t = sgs_core::oracle::DEFAULT_MAX_LEN)]
    max_len: usize,
    /// Use the known part of approximate sets.
    #[arg(long)]
    lower_bound: bool,
}

#[derive(Subcommand, Debug)]
enum BuilderCommand {
    /// S-gap shift: runs of 0s with lengths in S, separated by single 1s.
    SGap {
        #[arg(long)]
        set: String,
    },
    /// Two vertices with sets S and S' joined both ways.
    GapPair {
        #[arg(long)]
        s: String,
        #[arg(long)]
        s_prime: String,
    },
    /// Directed cycle through the given sets in order (repeat --set).
    Ordered {
        #[arg(long = "set", required = true)]
        sets: Vec<String>,
    },
    /// Complete digraph on the given sets (repeat --set).
    Unordered {
        #[arg(long = "set", required = true)]
        sets: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Spectral,
    Det,
    Cycles,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FlavorArg {
    Greedy,
    Spiced,
}

/// Failure with its exit code: 1 for bad input, 2 for a broken internal invariant.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn user(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<sgs_core::Error> for Failure {
    fn from(e: sgs_core::Error) -> Self {
        Failure {
            code: if e.is_internal() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

type Outcome = Result<Value, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("sgs: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if !(cli.tol > 0.0 && cli.tol < 1.0) {
        return Err(Failure::user(format!(
            "--tol must lie in (0, 1), got {}",
            cli.tol
        )));
    }
    if cli.order == 0 {
        return Err(Failure::user("--order must be positive"));
    }
    let (value, graph) = dispatch(cli)?;
    if let Some(path) = &cli.out {
        let doc = match &graph {
            Some(g) => g.to_json(),
            None => serde_json::to_string_pretty(&value).expect("json values serialize"),
        };
        fs::write(path, doc + "\n")
            .map_err(|e| Failure::user(format!("{}: {e}", path.display())))?;
    }
    let lines = matches!(
        cli.command,
        Command::Oracle {
            query: OracleCommand::Words(_)
        }
    );
    let format = cli
        .format
        .unwrap_or(if lines { Format::Human } else { Format::Json });
    print!("{}", emit(&value, format));
    Ok(())
}

/// The report, plus the graph a command produced (for `--out`).
fn dispatch(cli: &Cli) -> Result<(Value, Option<SGraph>), Failure> {
    let tol = cli.tol;
    let order = cli.order;
    match &cli.command {
        Command::Entropy {
            graph,
            method,
            truncate,
        } => {
            let mut g = load(graph)?;
            if let Some(n) = truncate {
                g = sft_truncation(&g, *n)?;
            }
            let m = match method {
                MethodArg::Spectral => EntropyMethod::Spectral,
                MethodArg::Det => EntropyMethod::Det,
                MethodArg::Cycles => EntropyMethod::Cycles,
            };
            let r = entropy(&g, m, tol)?;
            Ok((
                json!({
                    "lambda": r.lambda,
                    "lambda_inv": r.lambda_inv,
                    "entropy_nat": r.entropy,
                    "entropy_log2": r.entropy_log2,
                    "method": r.method,
                    "bracket": [r.bracket.0, r.bracket.1],
                    "residual": r.residual,
                    "iterations": r.iterations,
                    "lower_bound": r.lower_bound,
                    "notes": r.notes,
                }),
                None,
            ))
        }
        Command::Props { graph, m } => {
            let g = load(graph)?;
            let p = properties(&g)?;
            let mut v = serde_json::to_value(&p).map_err(internal)?;
            if p.weak_spec.is_true() {
                let c = spec_constants(&g, *m)?;
                v["spec_constants"] = serde_json::to_value(&c).map_err(internal)?;
            }
            Ok((v, None))
        }
        Command::Zeta { graph } => {
            let g = load(graph)?;
            let z = zeta_coeffs(&g, order)?;
            let p = periodic_counts(&g, order)?;
            let q = least_period_counts(&p);
            Ok((
                json!({
                    "order": order,
                    "zeta": big_list_json(z.coeffs()),
                    "periodic_points": big_list_json(&p),
                    "least_period_points": big_list_json(&q),
                }),
                None,
            ))
        }
        Command::Fingerprint { graph, compare } => {
            let f = fingerprint(&load(graph)?, order)?;
            let mut v = json!({ "fingerprint": f.to_json_value() });
            if let Some(other) = compare {
                let h = fingerprint(&load(other)?, order)?;
                v["other"] = h.to_json_value();
                v["verdict"] = Value::String(fingerprint_compare(&f, &h).to_string());
            }
            Ok((v, None))
        }
        Command::Op { op } => {
            let (g, record) = match op {
                OpCommand::EdgeExtend { graph, at, t1, t2 } => {
                    edge_extend(&load(graph)?, at, nset(t1)?, nset(t2)?)?
                }
                OpCommand::OutSplit(a) => {
                    let (e1, e2) = (names(&a.e1), names(&a.e2));
                    out_split(&load(&a.graph)?, &a.at, &refs(&e1), &refs(&e2))?
                }
                OpCommand::InSplit(a) => {
                    let (e1, e2) = (names(&a.e1), names(&a.e2));
                    in_split(&load(&a.graph)?, &a.at, &refs(&e1), &refs(&e2))?
                }
                OpCommand::Clone { graph, at, s1, s2 } => {
                    vertex_clone(&load(graph)?, at, nset(s1)?, nset(s2)?)?
                }
            };
            let v = json!({ "record": record, "graph": g.to_json_value() });
            Ok((v, Some(g)))
        }
        Command::Lift { graph, q } => {
            let (g, steps) = lift(&load(graph)?, *q)?;
            Ok((
                json!({ "steps": steps, "graph": g.to_json_value() }),
                Some(g),
            ))
        }
        Command::Construct {
            lambda,
            expansion,
            digits,
        } => {
            let lambda = parse_lambda(lambda)?;
            if let Some(flavor) = expansion {
                let e = match flavor {
                    FlavorArg::Greedy => greedy_beta_expansion(lambda, *digits)?,
                    FlavorArg::Spiced => spiced_expansion(lambda, *digits)?,
                };
                return Ok((serde_json::to_value(&e).map_err(internal)?, None));
            }
            let r = realize_entropy(lambda)?;
            let h = entropy(&r.graph, EntropyMethod::Spectral, tol)?;
            let v = json!({
                "lambda": lambda,
                "exact": r.exact,
                "entropy_nat": h.entropy,
                "target_entropy": lambda.ln(),
                "lower_bound": h.lower_bound,
                "expansion": r.expansion,
                "graph": r.graph.to_json_value(),
            });
            Ok((v, Some(r.graph)))
        }
        Command::Family { lambda, seed } => {
            let lambda = parse_lambda(lambda)?;
            let f = family_member(lambda, *seed)?;
            let h = entropy(&f.graph, EntropyMethod::Spectral, tol)?;
            let p = properties(&f.graph)?;
            let v = json!({
                "lambda": lambda,
                "seed": seed,
                "entropy_nat": h.entropy,
                "spec": p.spec,
                "mixing": p.is_mixing,
                "a": f.a.to_string(),
                "b": f.b.to_string(),
                "clone": f.clone,
                "graph": f.graph.to_json_value(),
            });
            Ok((v, Some(f.graph)))
        }
        Command::Oracle { query } => Ok((oracle_query(query)?, None)),
        Command::Crosscheck {
            graph,
            n,
            entropy_tol,
        } => {
            let o = Oracle::new(&load(graph)?, OracleOptions::default())?;
            let r = o.crosscheck(*n, *entropy_tol)?;
            if !r.all_pass() {
                let failed: Vec<&str> = r
                    .checks
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| c.name)
                    .collect();
                return Err(Failure {
                    code: 2,
                    message: format!("crosscheck failed: {}", failed.join(", ")),
                });
            }
            Ok((r.to_json_value(), None))
        }
        Command::Builders { kind } => {
            let (g, extra) = match kind {
                BuilderCommand::SGap { set } => {
                    let s: GapSet = set.parse().map_err(sgs_core::Error::from)?;
                    let g = build_s_gap(&s)?;
                    let mut extra = json!({ "p1": s_gap_p1(&s), "zeta": big_list_json(s_gap_zeta(&s, order)?.coeffs()) });
                    if let Ok(r) = s_gap_lambda(&s, tol) {
                        extra["lambda"] = json!(r.lambda);
                        extra["entropy_nat"] = json!(r.entropy);
                    }
                    (g, extra)
                }
                BuilderCommand::GapPair { s, s_prime } => {
                    (build_gap_pair(nset(s)?, nset(s_prime)?)?, Value::Null)
                }
                BuilderCommand::Ordered { sets } => {
                    (build_ordered_limited(nsets(sets)?)?, Value::Null)
                }
                BuilderCommand::Unordered { sets } => {
                    (build_unordered_limited(nsets(sets)?)?, Value::Null)
                }
            };
            let mut v = json!({ "graph": g.to_json_value() });
            if !extra.is_null() {
                v["s_gap"] = extra;
            }
            Ok((v, Some(g)))
        }
    }
}

fn oracle_query(query: &OracleCommand) -> Outcome {
    let (OracleCommand::Words(a)
    | OracleCommand::Count(a)
    | OracleCommand::Periodic(a)
    | OracleCommand::Estimate(a)) = query;
    let opts = OracleOptions {
        max_len: a.max_len,
        lower_bound: a.lower_bound,
        ..OracleOptions::default()
    };
    let o = Oracle::new(&load(&a.graph)?, opts)?;
    let n = a.n;
    Ok(match query {
        OracleCommand::Words(_) => {
            let mut words: Vec<String> = o.enum_words(n)?.iter().map(|w| o.render(w)).collect();
            words.sort();
            json!({ "n": n, "count": words.len(), "words": words })
        }
        OracleCommand::Count(_) => json!({ "n": n, "count": o.count_words(n)? }),
        OracleCommand::Periodic(_) => {
            let e = o.enum_periodic(n)?;
            let mut words: Vec<String> = e.words.iter().map(|w| o.render(w)).collect();
            words.sort();
            json!({ "n": n, "count": e.count, "words": words, "orbits": e.orbits })
        }
        OracleCommand::Estimate(_) => json!({ "n": n, "estimate": o.entropy_estimate(n)? }),
    })
}

fn load(path: &Path) -> Result<SGraph, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::user(format!("{}: {e}", path.display())))?;
    SGraph::from_json(&text).map_err(|e| Failure::user(format!("{}: {e}", path.display())))
}

fn nset(lit: &str) -> Result<NSet, Failure> {
    Ok(lit.parse::<NSet>()?)
}

fn nsets(lits: &[String]) -> Result<Vec<NSet>, Failure> {
    lits.iter().map(|s| nset(s)).collect()
}

fn names(list: &str) -> Vec<String> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

fn internal(e: serde_json::Error) -> Failure {
    Failure {
        code: 2,
        message: format!("serialization: {e}"),
    }
}
