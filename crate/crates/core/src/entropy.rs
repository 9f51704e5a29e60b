//! Entropy of a set-equipped graph shift.
//!
//! With `B(x)_{ij} = H_i(x) = Σ_{s in S_i} x^s` on every edge, the entropy
//! is `-ln λ` where λ is the unique positive root of `ρ(B(x)) = 1`. The
//! root is found three ways: bisection on ρ, the first zero of
//! `det(I - B(x))`, and the sum over disjoint cycle families.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{for_each_disjoint_family, SGraph, DEFAULT_CYCLE_CAP};
use crate::linalg::{compare_radius, spectral_radius, Matrix};
use crate::nset::{EvalMode, GapSet, NSet};

pub const DEFAULT_TOL: f64 = 1e-12;

/// Largest x used when some set is infinite (the series diverge at 1).
const X_HI_INFINITE: f64 = 1.0 - 1e-12;
const GRID_LO: f64 = 1e-6;
const GRID_POINTS: usize = 2000;
/// Disagreement with the spectral root above which det/cycles defer to it.
const CROSSCHECK_TOL: f64 = 1e-9;

/// Root-finding route requested by the caller.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyMethod {
    Spectral,
    Det,
    Cycles,
}

/// Route that actually produced the reported λ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Spectral,
    Det,
    Cycles,
    ClosedFormSGap,
    ExactZero,
}

impl From<EntropyMethod> for Method {
    fn from(m: EntropyMethod) -> Method {
        match m {
            EntropyMethod::Spectral => Method::Spectral,
            EntropyMethod::Det => Method::Det,
            EntropyMethod::Cycles => Method::Cycles,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub lambda: f64,
    pub lambda_inv: f64,
    /// Natural logarithm of `1/λ`.
    pub entropy: f64,
    pub entropy_log2: f64,
    pub method: Method,
    pub bracket: (f64, f64),
    pub residual: f64,
    pub iterations: usize,
    /// Set when some vertex set was only known up to a truncation; the
    /// value is then a lower bound on the true entropy.
    pub lower_bound: bool,
    pub notes: Vec<String>,
}

impl EntropyReport {
    fn new(
        lambda: f64,
        method: Method,
        bracket: (f64, f64),
        residual: f64,
        iterations: usize,
    ) -> EntropyReport {
        let entropy = if lambda == 1.0 { 0.0 } else { -lambda.ln() };
        EntropyReport {
            lambda,
            lambda_inv: 1.0 / lambda,
            entropy,
            entropy_log2: entropy / std::f64::consts::LN_2,
            method,
            bracket,
            residual,
            iterations,
            lower_bound: false,
            notes: Vec::new(),
        }
    }
}

/// `B(x)`. Entries are `+∞` never: divergent entries are an error.
pub fn gen_matrix(g: &SGraph, x: f64, mode: EvalMode) -> Result<Matrix> {
    let n = g.len();
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        if g.successors(i).is_empty() {
            continue;
        }
        let h = g.set(i).gf_eval(x, mode)?;
        if h.is_infinite() {
            return Err(Error::DivergentEntry {
                vertex: g.name(i).to_string(),
                x,
            });
        }
        for &j in g.successors(i) {
            m[(i, j)] = h;
        }
    }
    Ok(m)
}

/// The part of a graph that carries entropy: the essential graph restricted
/// to vertices on cycles, with approximate sets replaced by their known
/// elements.
struct Core {
    graph: SGraph,
    blocks: Vec<Vec<usize>>,
    lower_bound: bool,
}

impl Core {
    fn of(g: &SGraph) -> Result<Core> {
        let ess = g.essentialize();
        if ess.is_empty() {
            return Err(Error::EmptyShift);
        }
        let lower_bound = ess.any_approximate();
        let ess = if lower_bound {
            ess.with_sets(ess.sets().map(NSet::known_part).collect())
        } else {
            ess
        };
        let mut keep = vec![false; ess.len()];
        for c in ess.nontrivial_sccs() {
            for v in c {
                keep[v] = true;
            }
        }
        let graph = ess.induced(&keep);
        let blocks = graph.nontrivial_sccs();
        Ok(Core {
            graph,
            blocks,
            lower_bound,
        })
    }

    fn x_hi(&self, block: Option<&[usize]>) -> f64 {
        let infinite = match block {
            Some(b) => b.iter().any(|&v| self.graph.set(v).is_infinite()),
            None => self.graph.sets().any(NSet::is_infinite),
        };
        if infinite {
            X_HI_INFINITE
        } else {
            1.0
        }
    }

    /// Every cyclic component is a directed cycle carrying singletons.
    fn is_trivial(&self) -> bool {
        self.blocks.iter().all(|b| {
            b.iter().all(|&v| {
                self.graph.set(v).is_singleton()
                    && self
                        .graph
                        .successors(v)
                        .iter()
                        .filter(|w| b.contains(w))
                        .count()
                        == 1
            })
        })
    }

    fn block_graph(&self, b: &[usize]) -> SGraph {
        let mut keep = vec![false; self.graph.len()];
        for &v in b {
            keep[v] = true;
        }
        self.graph.induced(&keep)
    }
}

/// Entropy by the requested method. Directed cycles of singletons (and
/// graphs made only of such cycles) give `λ = 1` exactly.
pub fn entropy(g: &SGraph, method: EntropyMethod, tol: f64) -> Result<EntropyReport> {
    if !(tol > 0.0) {
        return Err(Error::Precondition(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let core = Core::of(g)?;
    let mut report = if core.is_trivial() {
        EntropyReport::new(1.0, Method::ExactZero, (1.0, 1.0), 0.0, 0)
    } else {
        match method {
            EntropyMethod::Spectral => spectral(&core, tol)?,
            EntropyMethod::Det | EntropyMethod::Cycles => {
                let found = grid_method(&core, method, tol);
                let reference = spectral(&core, tol)?;
                match found {
                    Ok(r)
                        if (r.lambda - reference.lambda).abs()
                            <= CROSSCHECK_TOL.max(10.0 * tol) =>
                    {
                        r
                    }
                    Ok(r) => {
                        let mut s = reference;
                        s.notes.push(format!(
                            "{:?} root {} disagreed with the spectral root; spectral value used",
                            method, r.lambda
                        ));
                        s
                    }
                    Err(e) => {
                        let mut s = reference;
                        s.notes.push(format!(
                            "{method:?} root isolation failed ({e}); spectral value used"
                        ));
                        s
                    }
                }
            }
        }
    };
    if core.lower_bound {
        report.lower_bound = true;
        report
            .notes
            .push("approximate sets: entropy of the known elements, a lower bound".into());
    }
    Ok(report)
}

fn spectral(core: &Core, tol: f64) -> Result<EntropyReport> {
    let g = &core.graph;
    let x_hi = core.x_hi(None);
    let cmp_tol = 1e-15;
    let rho_cmp = |x: f64| -> Result<Ordering> {
        compare_radius(&gen_matrix(g, x, EvalMode::Exact)?, 1.0, cmp_tol)
    };
    if rho_cmp(x_hi)? == Ordering::Less {
        return Err(Error::Numerical(format!(
            "ρ(B({x_hi})) < 1: no root in the convergence domain"
        )));
    }
    let (mut lo, mut hi) = (0.0, x_hi);
    let mut iterations = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        match rho_cmp(mid)? {
            Ordering::Less => lo = mid,
            Ordering::Greater => hi = mid,
            Ordering::Equal => {
                lo = mid;
                hi = mid;
            }
        }
        iterations += 1;
    }
    let lambda = 0.5 * (lo + hi);
    let rho = spectral_radius(&gen_matrix(g, lambda, EvalMode::Exact)?, 1e-15)?;
    Ok(EntropyReport::new(
        lambda,
        Method::Spectral,
        (lo, hi),
        (rho - 1.0).abs(),
        iterations,
    ))
}

/// Sample points for root isolation: geometric from `GRID_LO`; when the
/// domain ends just below 1, the second half is geometric in `1 - x`.
fn grid(x_hi: f64) -> Vec<f64> {
    if x_hi >= 1.0 {
        let r = (x_hi / GRID_LO).ln();
        (0..=GRID_POINTS)
            .map(|i| GRID_LO * (r * i as f64 / GRID_POINTS as f64).exp())
            .collect()
    } else {
        let half = GRID_POINTS / 2;
        let r1 = (0.5 / GRID_LO).ln();
        let r2 = (0.5 / (1.0 - x_hi)).ln();
        let first = (0..half).map(|i| GRID_LO * (r1 * i as f64 / half as f64).exp());
        let second = (0..=half).map(|i| 1.0 - 0.5 * (-r2 * i as f64 / half as f64).exp());
        first.chain(second).collect()
    }
}

/// `det(I - B(x))` or `1 - Σ_families (-1)^{|F|+1} Π H_v(x)`, per block.
enum BlockFn {
    Det(SGraph),
    Cycles {
        graph: SGraph,
        families: Vec<(f64, Vec<usize>)>,
    },
}

impl BlockFn {
    fn eval(&self, x: f64) -> Result<f64> {
        match self {
            BlockFn::Det(g) => Ok(gen_matrix(g, x, EvalMode::Exact)?.identity_minus().det()),
            BlockFn::Cycles { graph, families } => {
                let h: Vec<f64> = graph
                    .sets()
                    .map(|s| s.gf_eval(x, EvalMode::Exact))
                    .collect::<Result<_>>()?;
                let f: f64 = families
                    .iter()
                    .map(|(sign, vs)| sign * vs.iter().map(|&v| h[v]).product::<f64>())
                    .sum();
                Ok(1.0 - f)
            }
        }
    }
}

fn grid_method(core: &Core, method: EntropyMethod, tol: f64) -> Result<EntropyReport> {
    let mut best: Option<EntropyReport> = None;
    for b in &core.blocks {
        let bg = core.block_graph(b);
        let f = match method {
            EntropyMethod::Det => BlockFn::Det(bg),
            _ => {
                let cycles = bg.simple_cycles(DEFAULT_CYCLE_CAP)?;
                let mut families = Vec::new();
                for_each_disjoint_family(bg.len(), &cycles, DEFAULT_CYCLE_CAP, |fam| {
                    let sign = if fam.len() % 2 == 1 { 1.0 } else { -1.0 };
                    let vs = fam
                        .iter()
                        .flat_map(|&c| cycles[c].iter().copied())
                        .collect();
                    families.push((sign, vs));
                })?;
                BlockFn::Cycles {
                    graph: bg,
                    families,
                }
            }
        };
        let r = first_root(&f, core.x_hi(Some(b)), tol, method.into())?;
        if best.as_ref().is_none_or(|cur| r.lambda < cur.lambda) {
            best = Some(r);
        }
    }
    best.ok_or(Error::EmptyShift)
}

fn first_root(f: &BlockFn, x_hi: f64, tol: f64, method: Method) -> Result<EntropyReport> {
    let pts = grid(x_hi);
    let mut prev = pts[0];
    if f.eval(prev)? <= 0.0 {
        return Err(Error::Numerical(format!(
            "root below {prev}: entropy out of range"
        )));
    }
    for &x in &pts[1..] {
        if f.eval(x)? <= 0.0 {
            let (mut lo, mut hi) = (prev, x);
            let mut iterations = 0;
            while hi - lo > tol {
                let mid = 0.5 * (lo + hi);
                if f.eval(mid)? <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
                iterations += 1;
            }
            let lambda = 0.5 * (lo + hi);
            let residual = f.eval(lambda)?.abs();
            return Ok(EntropyReport::new(
                lambda,
                method,
                (lo, hi),
                residual,
                iterations,
            ));
        }
        prev = x;
    }
    Err(Error::Numerical(format!("no sign change below {x_hi}")))
}

/// λ for the S-gap shift from `Σ_{s in S} x^{s+1} = 1`.
pub fn s_gap_lambda(s: &GapSet, tol: f64) -> Result<EntropyReport> {
    let pos = s.positive.as_ref().map(NSet::known_part);
    let f = |x: f64| -> Result<f64> {
        let h = match &pos {
            Some(p) => p.gf_eval(x, EvalMode::Exact)?,
            None => 0.0,
        };
        Ok(x * (h + if s.contains_zero { 1.0 } else { 0.0 }) - 1.0)
    };
    let x_hi = if s.is_infinite() { X_HI_INFINITE } else { 1.0 };
    let (mut lo, mut hi) = (0.0, x_hi);
    let mut iterations = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let lambda = 0.5 * (lo + hi);
    let mut r = EntropyReport::new(
        lambda,
        Method::ClosedFormSGap,
        (lo, hi),
        f(lambda)?.abs(),
        iterations,
    );
    if s.positive.as_ref().is_some_and(NSet::is_approximate) {
        r.lower_bound = true;
        r.notes.push("approximate set: lower bound".into());
    }
    Ok(r)
}

/// Same graph with every set cut down to `S_v ∩ [1, n]`.
pub fn sft_truncation(g: &SGraph, n: u64) -> Result<SGraph> {
    let sets = g
        .sets()
        .map(|s| s.truncate(n))
        .collect::<Result<Vec<_>>>()?;
    Ok(g.with_sets(sets))
}
