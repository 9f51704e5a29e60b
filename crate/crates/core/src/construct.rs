//! β-expansions of 1 and shifts of prescribed entropy.
//!
//! For a λ-expansion `(x_i)` of 1 with digits up to `n = ⌈λ⌉ - 1`, the sets
//! `T_k = {m : x_m ≥ k}` placed on both sides of `K_{n,n}` give a shift of
//! entropy `log λ`, since `Σ_k H_k(1/λ) = Σ_i x_i λ^{-i} = 1`.

use exmex::prelude::*;
use serde::Serialize;

use crate::dynamics::{has_spec, is_mixing};
use crate::error::{Error, Result};
use crate::graph::{SGraph, Vertex};
use crate::nset::{Bound, NSet};
use crate::transforms::{vertex_clone, TransformRecord};
use crate::tri::Tri;

/// Relative uncertainty assumed for an input λ.
const LAMBDA_REL_ERR: f64 = 2.5e-16;
/// Digits closer than this to a digit boundary are flagged.
const UNSTABLE_MARGIN: f64 = 1e-12;
/// Digits are trusted for periodicity detection while the propagated
/// error in the scaled residual stays below this.
const RELIABLE_ERR: f64 = 1e-6;
const CLOSURE_TOL: f64 = 1e-12;
pub const MAX_TAIL_PERIOD: usize = 32;
pub const DEFAULT_DIGITS: usize = 64;
const MAX_DIGITS: usize = 200_000;

/// Evaluate a λ literal: a decimal, or an arithmetic expression over
/// `phi`, `pi`, `e` and functions such as `sqrt`.
pub fn parse_lambda(expr: &str) -> Result<f64> {
    let bad = |why: String| Error::Precondition(format!("cannot evaluate λ = {expr:?}: {why}"));
    let parsed = exmex::parse::<f64>(expr).map_err(|e| bad(e.to_string()))?;
    let values = parsed
        .var_names()
        .iter()
        .map(|v| match v.as_str() {
            "phi" => Ok((1.0 + 5f64.sqrt()) / 2.0),
            "pi" => Ok(std::f64::consts::PI),
            "e" => Ok(std::f64::consts::E),
            other => Err(bad(format!("unknown name {other:?}"))),
        })
        .collect::<Result<Vec<f64>>>()?;
    let v = parsed.eval(&values).map_err(|e| bad(e.to_string()))?;
    if !v.is_finite() {
        return Err(bad("not finite".into()));
    }
    Ok(v)
}

/// Largest digit allowed for base λ.
pub fn max_digit(lambda: f64) -> u32 {
    (lambda.ceil() - 1.0) as u32
}

// Double-double residual: `hi + lo` with |lo| ≤ ulp(hi)/2.
#[derive(Clone, Copy, Debug)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

impl Dd {
    fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn mul(self, x: f64) -> Dd {
        let p = self.hi * x;
        let e = self.hi.mul_add(x, -p);
        let (hi, lo) = two_sum(p, e + self.lo * x);
        Dd { hi, lo }
    }

    fn sub(self, x: f64) -> Dd {
        let (s, t) = two_sum(self.hi, -x);
        let (hi, lo) = two_sum(s, t + self.lo);
        Dd { hi, lo }
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    Greedy,
    Spiced,
}

/// `digits[p..p+q]` repeats forever.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicTail {
    pub preperiod: usize,
    pub period: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BetaExpansion {
    pub lambda: f64,
    pub flavor: Flavor,
    /// `x_1 … x_count`.
    pub digits: Vec<u32>,
    /// Present only when detected within the trusted prefix and verified
    /// to sum to 1.
    pub tail: Option<PeriodicTail>,
    /// 1-based positions whose digit was decided by a margin below 1e-12
    /// (or below the propagated error).
    pub unstable: Vec<usize>,
    /// Length of the prefix trusted for periodicity detection.
    pub reliable: usize,
    /// `Σ x_i λ^{-i}`, over the periodic extension when there is a tail.
    pub value: f64,
}

struct Raw {
    digits: Vec<u32>,
    unstable: Vec<usize>,
    reliable: usize,
}

/// Greedy digits from the scaled residual `r`, with `fixed` positions
/// forced (their weight is assumed already taken out of `r`).
fn greedy_digits(
    lambda: f64,
    count: usize,
    start: f64,
    fixed: impl Fn(usize) -> Option<u32>,
) -> Raw {
    let n = max_digit(lambda);
    let dl = LAMBDA_REL_ERR * lambda;
    let mut r = Dd::new(start);
    let mut err = start.abs() * f64::EPSILON;
    let mut raw = Raw {
        digits: Vec::with_capacity(count),
        unstable: Vec::new(),
        reliable: 0,
    };
    for pos in 1..=count {
        let prev = r.value();
        r = r.mul(lambda);
        err = err * lambda + prev.abs() * dl;
        if err < RELIABLE_ERR {
            raw.reliable = pos;
        }
        if let Some(d) = fixed(pos) {
            raw.digits.push(d);
            continue;
        }
        let v = r.value();
        let tol = UNSTABLE_MARGIN.max(err);
        let mut d = v.floor().clamp(0.0, f64::from(n));
        let up = d + 1.0;
        if up <= f64::from(n) && up - v < tol {
            // Treat as an exact hit: the expansion terminates here.
            d = up;
            raw.unstable.push(pos);
            r = Dd::new(0.0);
        } else {
            if d >= 1.0 && v - d < tol {
                raw.unstable.push(pos);
            }
            r = r.sub(d);
        }
        raw.digits.push(d as u32);
    }
    raw
}

fn weights(lambda: f64, len: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(len);
    let mut x = 1.0;
    for _ in 0..len {
        x /= lambda;
        w.push(x);
    }
    w
}

fn prefix_value(lambda: f64, digits: &[u32]) -> f64 {
    // Neumaier summation.
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for (d, w) in digits.iter().zip(weights(lambda, digits.len())) {
        let t = f64::from(*d) * w;
        let u = s + t;
        c += if s.abs() >= t.abs() {
            (s - u) + t
        } else {
            (t - u) + s
        };
        s = u;
    }
    s + c
}

fn tail_value(lambda: f64, digits: &[u32], t: PeriodicTail) -> f64 {
    let head = prefix_value(lambda, &digits[..t.preperiod]);
    let block = prefix_value(lambda, &digits[t.preperiod..t.preperiod + t.period]);
    head + lambda.powi(-(t.preperiod as i32)) * block / (1.0 - lambda.powi(-(t.period as i32)))
}

/// Candidate (preperiod, period) pairs consistent with `digits`, with at
/// least three repetitions observed, ordered by `p + q` then `q`.
fn period_candidates(digits: &[u32]) -> Vec<PeriodicTail> {
    let len = digits.len();
    let mut out = Vec::new();
    for q in 1..=MAX_TAIL_PERIOD.min(len / 3) {
        // Smallest p with digits[i] == digits[i + q] for all i ≥ p.
        let mut p = len - q;
        while p > 0 && digits[p - 1] == digits[p - 1 + q] {
            p -= 1;
        }
        if len - p >= 3 * q {
            out.push(PeriodicTail {
                preperiod: p,
                period: q,
            });
        }
    }
    out.sort_by_key(|t| (t.preperiod + t.period, t.period));
    out
}

fn find_tail(lambda: f64, digits: &[u32], reliable: usize) -> Option<PeriodicTail> {
    period_candidates(&digits[..reliable.min(digits.len())])
        .into_iter()
        .find(|&t| (tail_value(lambda, digits, t) - 1.0).abs() <= CLOSURE_TOL)
}

fn check_lambda(lambda: f64, count: usize) -> Result<()> {
    if !(lambda > 1.0 + 1e-9) || !lambda.is_finite() {
        return Err(Error::Expansion(format!(
            "λ must exceed 1 + 1e-9, got {lambda}"
        )));
    }
    if count == 0 {
        return Err(Error::Expansion("at least one digit is required".into()));
    }
    Ok(())
}

/// The first `count` digits of the greedy λ-expansion of 1.
pub fn greedy_beta_expansion(lambda: f64, count: usize) -> Result<BetaExpansion> {
    check_lambda(lambda, count)?;
    let raw = greedy_digits(lambda, count, 1.0, |_| None);
    let tail = find_tail(lambda, &raw.digits, raw.reliable);
    let value = match tail {
        Some(t) => tail_value(lambda, &raw.digits, t),
        None => prefix_value(lambda, &raw.digits),
    };
    Ok(BetaExpansion {
        lambda,
        flavor: Flavor::Greedy,
        digits: raw.digits,
        tail,
        unstable: raw.unstable,
        reliable: raw.reliable,
        value,
    })
}

/// Smallest `k ≥ 1` with `n λ^{1-k} / (λ² - 1) < 1`.
pub fn spiced_k(lambda: f64) -> usize {
    let n = f64::from(max_digit(lambda));
    let mut k = 1;
    while n * lambda.powi(1 - k as i32) / (lambda * lambda - 1.0) >= 1.0 {
        k += 1;
    }
    k
}

/// An expansion of 1 with a pair of consecutive nonzero digits in which
/// eventually every other digit is `n = ⌈λ⌉ - 1`.
///
/// Digit `n` is placed at positions `k+1, k+3, …`; the remaining positions
/// are filled greedily, and if no consecutive nonzero pair appears the
/// digits are rewritten as `y_1 = x_1 - 1`, `y_i = x_i` for `x_i > 0`,
/// `y_i = x_{i-1}` for `x_i = 0`. The result is checked to sum to 1 and to
/// have both structural properties; any failure is an error.
pub fn spiced_expansion(lambda: f64, count: usize) -> Result<BetaExpansion> {
    check_lambda(lambda, count)?;
    let n = max_digit(lambda);
    let k = spiced_k(lambda);
    if count < k + 4 {
        return Err(Error::Expansion(format!(
            "spiced expansion needs at least {} digits, got {count}",
            k + 4
        )));
    }
    let fixed = move |pos: usize| (pos > k && (pos - k) % 2 == 1).then_some(n);
    let base = f64::from(n) * lambda.powi(-(k as i32 + 1)) / (1.0 - lambda.powi(-2));
    let raw = greedy_digits(lambda, count, 1.0 - base, fixed);
    let mut digits = raw.digits;
    let mut tail = find_tail(lambda, &digits, raw.reliable);
    let closed = |digits: &[u32], tail: Option<PeriodicTail>| match tail {
        Some(t) => tail_value(lambda, digits, t),
        // Without a detected period, count the forced digits past the prefix.
        None => {
            let beyond = (count + 1..count + 3)
                .find(|&p| fixed(p).is_some())
                .unwrap_or(count + 1);
            prefix_value(lambda, digits)
                + f64::from(n) * lambda.powi(-(beyond as i32)) / (1.0 - lambda.powi(-2))
        }
    };
    let value = closed(&digits, tail);
    if (value - 1.0).abs() > CLOSURE_TOL {
        return Err(Error::Expansion(format!(
            "the alternating-digit greedy procedure does not reach 1 for λ = {lambda}: value {value:.15}"
        )));
    }
    if !has_consecutive_nonzero(&digits) {
        let x = digits.clone();
        for i in 0..x.len() {
            digits[i] = if i == 0 {
                x[0] - 1
            } else if x[i] > 0 {
                x[i]
            } else {
                x[i - 1]
            };
        }
        tail = tail.map(|t| PeriodicTail {
            preperiod: t.preperiod + 1,
            period: t.period,
        });
    }
    let e = BetaExpansion {
        lambda,
        flavor: Flavor::Spiced,
        value: closed(&digits, tail),
        digits,
        tail,
        unstable: raw.unstable,
        reliable: raw.reliable,
    };
    e.validate_spiced()?;
    Ok(e)
}

fn has_consecutive_nonzero(d: &[u32]) -> bool {
    d.windows(2).any(|w| w[0] > 0 && w[1] > 0)
}

impl BetaExpansion {
    pub fn max_digit(&self) -> u32 {
        max_digit(self.lambda)
    }

    /// `x_i` for 1-based `i`, following the periodic tail past the prefix.
    pub fn digit(&self, i: usize) -> Option<u32> {
        if i == 0 {
            return None;
        }
        if i <= self.digits.len() {
            return Some(self.digits[i - 1]);
        }
        let t = self.tail?;
        Some(self.digits[t.preperiod + (i - 1 - t.preperiod) % t.period])
    }

    pub fn is_exact(&self) -> bool {
        self.tail.is_some()
    }

    pub fn has_consecutive_nonzero(&self) -> bool {
        has_consecutive_nonzero(&self.digits)
    }

    /// Eventually every other digit equals `n`: checked over two periods of
    /// the tail, or over the trusted prefix when there is no tail.
    pub fn eventually_alternating(&self) -> bool {
        let n = self.max_digit();
        let window: Vec<u32> = match self.tail {
            Some(t) => (1..=2 * t.period)
                .filter_map(|j| self.digit(t.preperiod + j))
                .collect(),
            None => {
                let from = self.reliable.min(self.digits.len()) / 2;
                self.digits[from..self.reliable.min(self.digits.len())].to_vec()
            }
        };
        if window.len() < 2 {
            return false;
        }
        (0..2).any(|parity| window.iter().skip(parity).step_by(2).all(|&d| d == n))
    }

    pub fn validate_spiced(&self) -> Result<()> {
        if (self.value - 1.0).abs() > CLOSURE_TOL {
            return Err(Error::Expansion(format!(
                "digits sum to {:.15}, not 1",
                self.value
            )));
        }
        if !self.has_consecutive_nonzero() {
            return Err(Error::Expansion(
                "no pair of consecutive nonzero digits".into(),
            ));
        }
        if !self.eventually_alternating() {
            return Err(Error::Expansion(format!(
                "tail does not alternate with digit {}",
                self.max_digit()
            )));
        }
        Ok(())
    }

    /// `T_k = {m : x_m ≥ k}` for `k = 1 … n`: exact when the expansion has
    /// a tail, otherwise approximate sets listing the computed prefix.
    pub fn level_sets(&self) -> Result<Vec<NSet>> {
        let n = self.max_digit();
        (1..=n)
            .map(|k| {
                let member = |d: &u32| *d >= k;
                let set = match self.tail {
                    Some(t) => {
                        let prefix: Vec<bool> =
                            self.digits[..t.preperiod].iter().map(member).collect();
                        let pattern: Vec<bool> = self.digits[t.preperiod..t.preperiod + t.period]
                            .iter()
                            .map(member)
                            .collect();
                        NSet::from_indicator(1, &prefix, &pattern)
                    }
                    None => NSet::approximate(
                        self.digits
                            .iter()
                            .enumerate()
                            .filter(|(_, d)| member(d))
                            .map(|(i, _)| i as u64 + 1),
                    ),
                };
                set.map_err(|e| Error::Expansion(format!("level set T_{k}: {e}")))
            })
            .collect()
    }
}

/// `K_{n,n}` on vertices "1" … "2n" with `S_k = S_{k+n} = sets[k-1]`.
pub fn bipartite_graph(sets: &[NSet]) -> Result<SGraph> {
    let n = sets.len();
    let vertices: Vec<Vertex> = sets
        .iter()
        .chain(sets)
        .enumerate()
        .map(|(i, s)| Vertex {
            name: (i + 1).to_string(),
            set: s.clone(),
        })
        .collect();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (n..2 * n).flat_map(move |j| [(i, j), (j, i)]))
        .collect();
    SGraph::new(vertices, &edges)
}

#[derive(Clone, Debug, Serialize)]
pub struct Realization {
    pub graph: SGraph,
    pub expansion: BetaExpansion,
    /// False when the sets are approximate prefixes; entropy is then a
    /// lower bound that converges to `log λ`.
    pub exact: bool,
}

/// Digits needed for the omitted tail weight `λ^{-m}` to drop below 1e-13.
fn digit_budget(lambda: f64) -> usize {
    let m = (13.0 * std::f64::consts::LN_10 / lambda.ln()).ceil() as usize + 2;
    m.clamp(DEFAULT_DIGITS, MAX_DIGITS)
}

/// A shift with entropy `log λ` built from the greedy expansion of 1.
pub fn realize_entropy(lambda: f64) -> Result<Realization> {
    check_lambda(lambda, 1)?;
    let expansion = greedy_beta_expansion(lambda, digit_budget(lambda))?;
    let graph = bipartite_graph(&expansion.level_sets()?)?;
    Ok(Realization {
        exact: expansion.is_exact(),
        graph,
        expansion,
    })
}

/// Split `s` into `A ⊔ B`, labelling its elements in increasing order by
/// runs of length `1 + bit_i(seed)` that alternate between A and B, then
/// alternating element by element. Consecutive members of either part are
/// therefore separated by at most two members of the other, so both gap
/// sequences stay within `3 · sup Δ(s)`. Distinct seeds give distinct A
/// when `s` is infinite.
pub fn seeded_partition(s: &NSet, seed: u64) -> Result<(NSet, NSet)> {
    let mut labels: Vec<bool> = Vec::new(); // true = A
    for i in 0..64 {
        let run = 1 + ((seed >> i) & 1) as usize;
        labels.extend(std::iter::repeat_n(i % 2 == 0, run));
    }
    let prefix_len = labels.len();
    let label = |j: usize, labels: &[bool]| {
        if j < prefix_len {
            labels[j]
        } else {
            // Continue by alternation, opposite to the last run.
            let last = labels[prefix_len - 1];
            ((j - prefix_len) % 2 == 0) != last
        }
    };
    match s.tail() {
        None => {
            let elems: Vec<u64> = s.iter().collect();
            if elems.len() < 2 {
                return Err(Error::Precondition(format!(
                    "{s} has fewer than two elements to split"
                )));
            }
            let mut a: Vec<u64> = Vec::new();
            let mut b: Vec<u64> = Vec::new();
            for (j, &e) in elems.iter().enumerate() {
                if label(j, &labels) {
                    a.push(e)
                } else {
                    b.push(e)
                }
            }
            if b.is_empty() {
                b.push(a.pop().expect("at least two elements"));
            }
            Ok((NSet::finite(a)?, NSet::finite(b)?))
        }
        Some(t) => {
            let per_period = t.residues.len();
            let head_len = s.head().len();
            let start = prefix_len.max(head_len);
            // Two periods hold an even number of elements, so the
            // alternation repeats with value period 2p.
            let elems: Vec<u64> = s.iter().take(start + 2 * per_period).collect();
            let offset = elems[start];
            let mut parts = [(Vec::new(), Vec::new()), (Vec::new(), Vec::new())];
            for (j, &e) in elems.iter().enumerate() {
                let part = &mut parts[usize::from(!label(j, &labels))];
                if j < start {
                    part.0.push(e);
                } else {
                    part.1.push(e - offset);
                }
            }
            let [(ha, ra), (hb, rb)] = parts;
            let a = NSet::with_tail(ha, offset, 2 * t.period, ra)?;
            let b = NSet::with_tail(hb, offset, 2 * t.period, rb)?;
            Ok((a, b))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyMember {
    pub graph: SGraph,
    pub expansion: BetaExpansion,
    pub a: NSet,
    pub b: NSet,
    pub clone: TransformRecord,
}

/// A `(2⌈λ⌉ - 1)`-vertex shift with entropy `log λ` and the specification
/// property: the `K_{n,n}` realization with vertex "1" cloned along a
/// seeded partition of `S_1`.
///
/// The exact greedy expansion is tried first and the spiced expansion
/// second; a candidate is kept only if the clone is mixing and has
/// specification.
pub fn family_member(lambda: f64, seed: u64) -> Result<FamilyMember> {
    check_lambda(lambda, 1)?;
    let count = digit_budget(lambda);
    let mut reasons = Vec::new();
    let candidates = [
        greedy_beta_expansion(lambda, count),
        spiced_expansion(lambda, count),
    ];
    for cand in candidates {
        let expansion = match cand {
            Ok(e) if e.is_exact() => e,
            Ok(e) => {
                reasons.push(format!(
                    "{:?} expansion is not eventually periodic within {count} digits",
                    e.flavor
                ));
                continue;
            }
            Err(e) => {
                reasons.push(e.to_string());
                continue;
            }
        };
        let sets = expansion.level_sets()?;
        let base = bipartite_graph(&sets)?;
        let (a, b) = match seeded_partition(&sets[0], seed) {
            Ok(p) => p,
            Err(e) => {
                reasons.push(e.to_string());
                continue;
            }
        };
        if let Bound::Finite(n) = sets[0].gap_sup() {
            for part in [&a, &b] {
                if part.is_infinite() && part.gap_sup() > Bound::Finite(3 * n) {
                    return Err(Error::Internal(format!(
                        "partition part {part} has gaps above 3·{n}"
                    )));
                }
            }
        }
        let (graph, clone) = vertex_clone(&base, "1", a.clone(), b.clone())?;
        if has_spec(&graph)? == Tri::True && is_mixing(&graph)? == Tri::True {
            return Ok(FamilyMember {
                graph,
                expansion,
                a,
                b,
                clone,
            });
        }
        reasons.push(format!(
            "{:?} expansion gives a clone without specification",
            expansion.flavor
        ));
    }
    Err(Error::Expansion(format!(
        "no family member for λ = {lambda}: {}",
        reasons.join("; ")
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    const PHI: f64 = 1.618_033_988_749_895;

    fn two_plus_sqrt3() -> f64 {
        2.0 + 3f64.sqrt()
    }

    #[test]
    fn lambda_literals() {
        assert_eq!(parse_lambda("2.5").unwrap(), 2.5);
        assert!((parse_lambda("phi").unwrap() - PHI).abs() < 1e-15);
        assert!((parse_lambda("2+sqrt(3)").unwrap() - two_plus_sqrt3()).abs() < 1e-15);
        assert!(parse_lambda("2+").is_err());
        assert!(parse_lambda("x+1").is_err());
        assert_eq!(parse_lambda("1/2").unwrap(), 0.5);
    }

    #[test]
    fn greedy_examples() {
        let e = greedy_beta_expansion(two_plus_sqrt3(), 20).unwrap();
        assert_eq!(&e.digits[..5], &[3, 2, 2, 2, 2]);
        assert_eq!(
            e.tail,
            Some(PeriodicTail {
                preperiod: 1,
                period: 1
            })
        );

        let two = greedy_beta_expansion(2.0, 30).unwrap();
        assert!(two.digits.iter().all(|&d| d == 1));
        assert_eq!(
            two.tail,
            Some(PeriodicTail {
                preperiod: 0,
                period: 1
            })
        );

        let phi = greedy_beta_expansion(PHI, 10).unwrap();
        assert_eq!(&phi.digits[..4], &[1, 1, 0, 0]);
        assert_eq!(phi.unstable, vec![2]);
        assert_eq!(
            phi.tail,
            Some(PeriodicTail {
                preperiod: 2,
                period: 1
            })
        );

        assert!(greedy_beta_expansion(1.0, 5).is_err());
    }

    #[test]
    fn greedy_is_maximal() {
        for lambda in [PHI, 2.0, 2.5, two_plus_sqrt3(), 1.3] {
            let e = greedy_beta_expansion(lambda, 40).unwrap();
            let n = e.max_digit();
            let w = weights(lambda, e.digits.len());
            let mut partial = 0.0;
            for (i, &d) in e.digits.iter().enumerate().take(e.reliable) {
                assert!(d <= n);
                if d < n && !e.unstable.contains(&(i + 1)) {
                    assert!(
                        partial + f64::from(d + 1) * w[i] > 1.0,
                        "λ = {lambda}, position {}",
                        i + 1
                    );
                }
                partial += f64::from(d) * w[i];
                assert!(partial <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn spiced_golden_mean() {
        let e = spiced_expansion(PHI, 40).unwrap();
        assert!(e.has_consecutive_nonzero());
        assert!(e.eventually_alternating());
        assert!((e.value - 1.0).abs() < 1e-12);
        assert!(spiced_expansion(1.0, 40).is_err());
        assert!(
            matches!(spiced_expansion(PHI, 2), Err(Error::Expansion(m)) if m.contains("at least 5"))
        );
    }

    #[test]
    fn spiced_procedure_stalls_for_two_plus_sqrt3() {
        // Free digits saturate at 3 while the sum stays near 0.83.
        let err = spiced_expansion(two_plus_sqrt3(), 40).unwrap_err();
        assert!(err.to_string().contains("does not reach 1"), "{err}");
    }

    #[test]
    fn worked_example_sets() {
        let r = realize_entropy(two_plus_sqrt3()).unwrap();
        assert!(r.exact);
        let sets: Vec<String> = r.graph.sets().map(ToString::to_string).collect();
        let n = NSet::naturals().to_string();
        assert_eq!(
            sets,
            vec![
                n.clone(),
                n.clone(),
                "1".to_string(),
                n.clone(),
                n,
                "1".to_string()
            ]
        );
        assert_eq!(r.graph.edge_count(), 18);
    }

    #[test]
    fn small_realizations() {
        let g = realize_entropy(PHI).unwrap().graph;
        assert_eq!(g.len(), 2);
        assert_eq!(g.set(0), &NSet::finite([1, 2]).unwrap());
        let g = realize_entropy(2.0).unwrap().graph;
        assert_eq!(g.set(0), &NSet::naturals());
        let r = realize_entropy(2.5).unwrap();
        assert!(!r.exact);
        assert!(r.graph.any_approximate());
    }

    #[test]
    fn partitions_follow_seed() {
        let (a, b) = seeded_partition(&NSet::naturals(), 0).unwrap();
        assert_eq!(a, NSet::arithmetic(1, 2).unwrap());
        assert_eq!(b, NSet::arithmetic(2, 2).unwrap());
        let (a1, b1) = seeded_partition(&NSet::naturals(), 1).unwrap();
        assert_eq!(a1.elements_up_to(6), vec![1, 2, 4, 6]);
        assert_eq!(b1.elements_up_to(6), vec![3, 5]);
        assert_eq!(a1.is_partition_of(&b1, &NSet::naturals()), Tri::True);
        assert!(a1.gap_sup() <= Bound::Finite(3));
        let (fa, fb) = seeded_partition(&NSet::finite([1, 2]).unwrap(), 1).unwrap();
        assert_eq!(
            (fa.to_string(), fb.to_string()),
            ("1".to_string(), "2".to_string())
        );
        assert!(seeded_partition(&NSet::singleton(4).unwrap(), 0).is_err());
    }

    #[test]
    fn golden_mean_family() {
        let m = family_member(PHI, 3).unwrap();
        assert_eq!(m.graph.len(), 3);
        assert_eq!(
            (m.a.to_string(), m.b.to_string()),
            ("1".to_string(), "2".to_string())
        );
    }
}
