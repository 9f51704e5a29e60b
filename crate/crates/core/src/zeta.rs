//! Zeta functions, periodic-point counts and the determinant fingerprint.
//!
//! For an essential S-graph `G` with generating matrix `B(t)`,
//! `ζ(t) = 1 / ((1 - t)^{p₁} det(I - B(t)))` where `p₁` counts the
//! vertices carrying an infinite set.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::SGraph;
use crate::nset::{GapSet, NSet};
use crate::series::{series_det, IntSeries, RatSeries, TruncSeries};

pub const DEFAULT_ORDER: usize = 32;

fn exact_core(g: &SGraph) -> Result<SGraph> {
    if g.any_approximate() {
        return Err(Error::ApproximateSet);
    }
    let e = g.essentialize();
    if e.is_empty() {
        return Err(Error::EmptyShift);
    }
    Ok(e)
}

fn set_series(s: &NSet, order: usize) -> IntSeries {
    TruncSeries::from_coeffs(
        s.gf_coeffs(order).into_iter().map(BigInt::from).collect(),
        order,
    )
}

fn one_minus_t_pow(p1: usize, order: usize) -> IntSeries {
    let one = IntSeries::one(order);
    (&one - &IntSeries::t(order)).pow(p1)
}

/// `B(t)` with entries `H_i(t)` on the edges `i → j`.
fn gen_series_matrix(g: &SGraph, order: usize) -> Vec<Vec<IntSeries>> {
    let n = g.len();
    let mut m = vec![vec![IntSeries::zero(order); n]; n];
    for i in 0..n {
        let h = set_series(g.set(i), order);
        for &j in g.successors(i) {
            m[i][j] = h.clone();
        }
    }
    m
}

/// Number of vertices of the essential part carrying an infinite set.
pub fn p1_count(g: &SGraph) -> Result<usize> {
    let e = exact_core(g)?;
    Ok(e.sets().filter(|s| s.is_infinite()).count())
}

/// `det(I - B(t))` on the essential part, to order `order`.
pub fn det_series(g: &SGraph, order: usize) -> Result<IntSeries> {
    let e = exact_core(g)?;
    det_of_core(&e, order)
}

fn det_of_core(e: &SGraph, order: usize) -> Result<IntSeries> {
    let mut m = gen_series_matrix(e, order);
    for (i, row) in m.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let neg = -&*x;
            *x = if i == j {
                &IntSeries::one(order) + &neg
            } else {
                neg
            };
        }
    }
    series_det(&m, order)
}

/// Coefficients `ζ_0 … ζ_order` of the zeta function.
pub fn zeta_coeffs(g: &SGraph, order: usize) -> Result<IntSeries> {
    let e = exact_core(g)?;
    let p1 = e.sets().filter(|s| s.is_infinite()).count();
    let denom = &one_minus_t_pow(p1, order) * &det_of_core(&e, order)?;
    denom.inverse()
}

/// `p_1 … p_order` via `Σ_k tr(B^k)/k = Σ_n (p_n - p₁)/n · t^n`.
pub fn periodic_counts(g: &SGraph, order: usize) -> Result<Vec<BigInt>> {
    let e = exact_core(g)?;
    let p1 = BigInt::from(e.sets().filter(|s| s.is_infinite()).count());
    let b = gen_series_matrix(&e, order);
    let n = b.len();
    // sums[m] = Σ_k [t^m] tr(B^k) / k
    let mut sums = vec![BigRational::zero(); order + 1];
    let mut pow = b.clone();
    for k in 1..=order {
        let kq = BigRational::from_integer(BigInt::from(k));
        // B has no constant term, so B^k starts at t^k.
        for m in k..=order {
            let tr: BigInt = (0..n).map(|i| pow[i][i].coeff(m).clone()).sum();
            if !tr.is_zero() {
                sums[m] += BigRational::from_integer(tr) / kq.clone();
            }
        }
        if k < order {
            pow = mat_mul(&pow, &b, order);
        }
    }
    let mut out = Vec::with_capacity(order);
    for (m, s) in sums.into_iter().enumerate().skip(1) {
        let v = s * BigRational::from_integer(BigInt::from(m));
        if !v.is_integer() {
            return Err(Error::Internal(format!(
                "periodic count p_{m} = {v} is not an integer"
            )));
        }
        out.push(v.to_integer() + &p1);
    }
    Ok(out)
}

fn mat_mul(a: &[Vec<IntSeries>], b: &[Vec<IntSeries>], order: usize) -> Vec<Vec<IntSeries>> {
    let n = a.len();
    let mut c = vec![vec![IntSeries::zero(order); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    c[i][j] = &c[i][j] + &(&a[i][k] * &b[k][j]);
                }
            }
        }
    }
    c
}

fn mobius(mut n: usize) -> i32 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Points of least period `n` from the counts `p_1 …`: `q_n = Σ_{d|n} μ(n/d) p_d`.
pub fn least_period_counts(p: &[BigInt]) -> Vec<BigInt> {
    (1..=p.len())
        .map(|n| {
            (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| BigInt::from(mobius(n / d)) * &p[d - 1])
                .sum()
        })
        .collect()
}

/// `exp(Σ p_n t^n / n)` truncated at `order`; integer if the counts come
/// from an actual shift.
pub fn zeta_from_counts(p: &[BigInt], order: usize) -> Result<IntSeries> {
    let mut c = vec![BigRational::zero(); order + 1];
    for (i, pn) in p.iter().enumerate().take(order) {
        let n = i + 1;
        c[n] = BigRational::new(pn.clone(), BigInt::from(n));
    }
    let z = RatSeries::from_coeffs(c, order).exp()?;
    z.to_int()
        .ok_or_else(|| Error::Internal("zeta series from periodic counts is not integral".into()))
}

/// Zeta of the ordered limited shift on `sets`:
/// `ζ⁻¹ = (1 - t)^{p₁} (1 - Π H_i(t))`.
pub fn ordered_limited_zeta(sets: &[NSet], order: usize) -> Result<IntSeries> {
    if sets.len() < 2 {
        return Err(Error::TooFewSets(sets.len()));
    }
    if sets.iter().any(NSet::is_approximate) {
        return Err(Error::ApproximateSet);
    }
    let p1 = sets.iter().filter(|s| s.is_infinite()).count();
    let prod = sets
        .iter()
        .fold(IntSeries::one(order), |acc, s| &acc * &set_series(s, order));
    let inner = &IntSeries::one(order) - &prod;
    (&one_minus_t_pow(p1, order) * &inner).inverse()
}

/// `p₁` of the S-gap shift: `[0 ∈ S] + [S infinite]`.
pub fn s_gap_p1(s: &GapSet) -> usize {
    usize::from(s.contains_zero) + usize::from(s.is_infinite())
}

/// Zeta of the S-gap shift. With `S' = S ∖ {0}`:
/// `ζ⁻¹ = (1 - t)^{p₁} (1 - t Σ_{S} t^s)` if `0 ∉ S`, and
/// `ζ⁻¹ = (1 - t)^{p₁} (1 - t/(1 - t) Σ_{S'} t^s)` if `0 ∈ S`.
pub fn s_gap_zeta(s: &GapSet, order: usize) -> Result<IntSeries> {
    if s.positive.as_ref().is_some_and(NSet::is_approximate) {
        return Err(Error::ApproximateSet);
    }
    let one = IntSeries::one(order);
    let t = IntSeries::t(order);
    let sum = s
        .positive
        .as_ref()
        .map_or_else(|| IntSeries::zero(order), |p| set_series(p, order));
    let factor = if s.contains_zero {
        (&one - &t).inverse()?
    } else {
        one.clone()
    };
    let inner = &one - &(&(&t * &factor) * &sum);
    (&one_minus_t_pow(s_gap_p1(s), order) * &inner).inverse()
}

/// `(p₁, det(I - B(t)))`: together equivalent to the zeta function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub p1: usize,
    pub det: Vec<BigInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FingerprintVerdict {
    /// Not conjugate.
    Distinct,
    /// Agree through this order; says nothing about conjugacy.
    IndistinguishableAtOrder(usize),
}

impl fmt::Display for FingerprintVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FingerprintVerdict::Distinct => f.write_str("distinct"),
            FingerprintVerdict::IndistinguishableAtOrder(n) => {
                write!(f, "indistinguishable_at_order {n}")
            }
        }
    }
}

pub fn fingerprint(g: &SGraph, order: usize) -> Result<Fingerprint> {
    let e = exact_core(g)?;
    let p1 = e.sets().filter(|s| s.is_infinite()).count();
    Ok(Fingerprint {
        p1,
        det: det_of_core(&e, order)?.into_coeffs(),
    })
}

pub fn fingerprint_compare(a: &Fingerprint, b: &Fingerprint) -> FingerprintVerdict {
    let n = a.det.len().min(b.det.len());
    if a.p1 != b.p1 || a.det[..n] != b.det[..n] {
        FingerprintVerdict::Distinct
    } else {
        FingerprintVerdict::IndistinguishableAtOrder(n.saturating_sub(1))
    }
}

impl Fingerprint {
    pub fn to_json_value(&self) -> Value {
        json!({ "p1": self.p1, "det": big_list_json(&self.det) })
    }
}

/// JSON number when it fits in an `i64`, decimal string otherwise.
pub fn big_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn big_list_json(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(big_json).collect())
}

/// Compare two series coefficientwise up to the shorter order.
pub fn series_agree(a: &IntSeries, b: &IntSeries) -> bool {
    let n = a.order().min(b.order());
    a.coeffs()[..=n] == b.coeffs()[..=n]
}

/// First coefficient index where two series differ, if any.
pub fn first_difference(a: &IntSeries, b: &IntSeries) -> Option<usize> {
    let n = a.order().min(b.order());
    (0..=n).find(|&k| a.coeff(k).cmp(b.coeff(k)) != Ordering::Equal)
}
