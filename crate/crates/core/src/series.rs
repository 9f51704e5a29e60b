//! Truncated formal power series with exact coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient ring for `TruncSeries`.
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    /// Multiplicative inverse, if this element is a unit.
    fn try_inv(&self) -> Option<Self>;
}

impl Coeff for BigInt {
    fn try_inv(&self) -> Option<BigInt> {
        if self.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
}

impl Coeff for BigRational {
    fn try_inv(&self) -> Option<BigRational> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// `c_0 + c_1 t + ... + c_N t^N`; arithmetic discards powers above `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries<T> {
    coeffs: Vec<T>,
}

pub type IntSeries = TruncSeries<BigInt>;
pub type RatSeries = TruncSeries<BigRational>;

impl<T: Coeff> TruncSeries<T> {
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![T::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `t` (or 0 at order 0).
    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = T::one();
        }
        s
    }

    /// From coefficients, padded with zeros or truncated to `order`.
    pub fn from_coeffs(mut coeffs: Vec<T>, order: usize) -> Self {
        coeffs.resize(order + 1, T::zero());
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "series orders differ");
    }

    pub fn scale(&self, c: &T) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// `self^k`.
    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `1/self`; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.coeffs[0]
            .try_inv()
            .ok_or_else(|| Error::Series("inverse needs a unit constant term".into()))?;
        let n = self.order();
        let mut out: Vec<T> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut s = T::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s = s + self.coeffs[j].clone() * out[k - j].clone();
                }
            }
            out.push(-(s * inv0.clone()));
        }
        Ok(TruncSeries { coeffs: out })
    }
}

impl RatSeries {
    /// Exact embedding of an integer series.
    pub fn from_int(s: &IntSeries) -> RatSeries {
        TruncSeries {
            coeffs: s
                .coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }

    /// Integer coefficients, if every coefficient is an integer.
    pub fn to_int(&self) -> Option<IntSeries> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                if c.is_integer() {
                    Some(c.to_integer())
                } else {
                    None
                }
            })
            .collect::<Option<Vec<_>>>()?;
        Some(TruncSeries { coeffs })
    }

    fn derivative(&self) -> RatSeries {
        let n = self.order();
        let mut c = vec![BigRational::zero(); n + 1];
        for k in 1..=n {
            c[k - 1] = self.coeffs[k].clone() * BigRational::from_integer(BigInt::from(k));
        }
        TruncSeries { coeffs: c }
    }

    /// Antiderivative with zero constant term; the top coefficient of
    /// `self` falls off.
    fn integral(&self) -> RatSeries {
        let n = self.order();
        let mut c = vec![BigRational::zero(); n + 1];
        for k in 1..=n {
            c[k] = self.coeffs[k - 1].clone() / BigRational::from_integer(BigInt::from(k));
        }
        TruncSeries { coeffs: c }
    }

    /// `exp(self)`; the constant term must be 0.
    pub fn exp(&self) -> Result<RatSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Series("exp needs a zero constant term".into()));
        }
        // g' = f' g, coefficientwise: n g_n = Σ_{k=1}^n k f_k g_{n-k}.
        let n = self.order();
        let mut g = vec![BigRational::zero(); n + 1];
        g[0] = BigRational::one();
        for m in 1..=n {
            let mut s = BigRational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    s += BigRational::from_integer(BigInt::from(k))
                        * self.coeffs[k].clone()
                        * g[m - k].clone();
                }
            }
            g[m] = s / BigRational::from_integer(BigInt::from(m));
        }
        Ok(TruncSeries { coeffs: g })
    }

    /// `log(self)`; the constant term must be 1.
    pub fn log(&self) -> Result<RatSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Series("log needs constant term 1".into()));
        }
        Ok((&self.derivative() * &self.inverse()?).integral())
    }
}

impl<T: Coeff> Add for &TruncSeries<T> {
    type Output = TruncSeries<T>;

    fn add(self, o: &TruncSeries<T>) -> TruncSeries<T> {
        self.check_order(o);
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Coeff> Sub for &TruncSeries<T> {
    type Output = TruncSeries<T>;

    fn sub(self, o: &TruncSeries<T>) -> TruncSeries<T> {
        self.check_order(o);
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: Coeff> Neg for &TruncSeries<T> {
    type Output = TruncSeries<T>;

    fn neg(self) -> TruncSeries<T> {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }
}

impl<T: Coeff> Mul for &TruncSeries<T> {
    type Output = TruncSeries<T>;

    fn mul(self, o: &TruncSeries<T>) -> TruncSeries<T> {
        self.check_order(o);
        let n = self.order();
        let mut c = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = c[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        TruncSeries { coeffs: c }
    }
}

impl<T: Coeff + fmt::Display> fmt::Display for TruncSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Determinant of a square matrix of series by elimination, dividing
/// only by series with a unit constant term. Falls back to cofactor
/// expansion (up to 10×10) when no unit pivot is available.
pub fn series_det<T: Coeff>(m: &[Vec<TruncSeries<T>>], order: usize) -> Result<TruncSeries<T>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Series("determinant of a non-square matrix".into()));
    }
    let mut a: Vec<Vec<TruncSeries<T>>> = m.to_vec();
    let mut det = TruncSeries::<T>::one(order);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k].coeffs[0].try_inv().is_some()) else {
            return cofactor_det(m, order);
        };
        if p != k {
            a.swap(p, k);
            det = -&det;
        }
        let inv = a[k][k].inverse()?;
        det = &det * &a[k][k];
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] * &inv;
            for j in k..n {
                let d = &f * &a[k][j];
                a[i][j] = &a[i][j] - &d;
            }
        }
    }
    Ok(det)
}

fn cofactor_det<T: Coeff>(m: &[Vec<TruncSeries<T>>], order: usize) -> Result<TruncSeries<T>> {
    let n = m.len();
    if n > 10 {
        return Err(Error::Series(format!(
            "no unit pivot and {n}×{n} is too large for cofactor expansion"
        )));
    }
    if n == 0 {
        return Ok(TruncSeries::one(order));
    }
    let mut acc = TruncSeries::zero(order);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<TruncSeries<T>>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &cofactor_det(&minor, order)?;
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    Ok(acc)
}
