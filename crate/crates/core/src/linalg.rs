//! Small dense matrices and the Perron root of nonnegative matrices.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::tarjan;

const MAX_POWER_ITERS: usize = 200_000;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Matrix {
        Matrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Matrix {
        let n = rows.len();
        let mut m = Matrix::zeros(n);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n, "matrix must be square");
            m.data[i * n..(i + 1) * n].copy_from_slice(r);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data
            .chunks(self.n.max(1))
            .map(<[f64]>::to_vec)
            .take(self.n)
            .collect()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.data[i * self.n..(i + 1) * self.n].iter().sum())
            .collect()
    }

    /// Principal submatrix on `idx`.
    pub fn sub(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m[(a, b)] = self[(i, j)];
            }
        }
        m
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> f64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[i * n + k].abs().total_cmp(&a[j * n + k].abs()))
                .expect("nonempty pivot range");
            if a[p * n + k] == 0.0 {
                return 0.0;
            }
            if p != k {
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                det = -det;
            }
            let piv = a[k * n + k];
            det *= piv;
            for i in k + 1..n {
                let f = a[i * n + k] / piv;
                if f != 0.0 {
                    for c in k..n {
                        a[i * n + c] -= f * a[k * n + c];
                    }
                }
            }
        }
        det
    }

    /// `I - self`.
    pub fn identity_minus(&self) -> Matrix {
        let mut m = self.clone();
        for v in &mut m.data {
            *v = -*v;
        }
        for i in 0..self.n {
            m[(i, i)] += 1.0;
        }
        m
    }

    fn mul_vec(&self, v: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.data[i * self.n..(i + 1) * self.n]
                .iter()
                .zip(v)
                .map(|(a, b)| a * b)
                .sum();
        }
    }

    /// Irreducible diagonal blocks of the nonzero pattern.
    fn blocks(&self) -> Vec<Vec<usize>> {
        let succ: Vec<Vec<usize>> = (0..self.n)
            .map(|i| (0..self.n).filter(|&j| self[(i, j)] != 0.0).collect())
            .collect();
        tarjan(self.n, |u| &succ[u])
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// Collatz-Wielandt bracket `[min (Av)_i/v_i, max (Av)_i/v_i]` for an
/// irreducible nonnegative block, driven by power iteration on `A + δI`.
struct Perron<'a> {
    a: &'a Matrix,
    shift: f64,
    v: Vec<f64>,
    w: Vec<f64>,
    lo: f64,
    hi: f64,
    iters: usize,
}

impl<'a> Perron<'a> {
    fn new(a: &'a Matrix) -> Perron<'a> {
        let sums = a.row_sums();
        let lo = sums.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = sums.iter().copied().fold(0.0, f64::max);
        // A shift near ρ damps the eigenvalues of modulus ρ that an
        // imprimitive block would otherwise leave oscillating.
        let shift = 0.5 * (lo + hi);
        let n = a.dim();
        Perron {
            a,
            shift,
            v: vec![1.0; n],
            w: vec![0.0; n],
            lo,
            hi,
            iters: 0,
        }
    }

    fn step(&mut self) {
        self.a.mul_vec(&self.v, &mut self.w);
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for (wi, vi) in self.w.iter().zip(&self.v) {
            let r = wi / vi;
            lo = lo.min(r);
            hi = hi.max(r);
        }
        // Both bounds are valid for any positive v, so keep the tightest.
        self.lo = self.lo.max(lo);
        self.hi = self.hi.min(hi);
        let mut norm = 0.0f64;
        for (wi, vi) in self.w.iter_mut().zip(&self.v) {
            *wi += self.shift * vi;
            norm = norm.max(*wi);
        }
        for (vi, wi) in self.v.iter_mut().zip(&self.w) {
            *vi = (wi / norm).max(f64::MIN_POSITIVE);
        }
        self.iters += 1;
    }

    fn width_ok(&self, tol: f64) -> bool {
        self.hi - self.lo <= tol * self.hi.max(1.0)
    }
}

/// Largest real root of `det(xI - A)` in `[lo, hi]`, scanning down from `hi`.
fn charpoly_root(a: &Matrix, lo: f64, hi: f64, tol: f64) -> Option<f64> {
    let n = a.dim();
    let f = |x: f64| {
        let mut m = a.clone();
        for v in &mut m.data {
            *v = -*v;
        }
        for i in 0..n {
            m[(i, i)] += x;
        }
        m.det()
    };
    let steps = 2000;
    let mut top = hi;
    if f(top) < 0.0 {
        return None;
    }
    for k in 1..=steps {
        let x = hi - (hi - lo) * k as f64 / steps as f64;
        if f(x) <= 0.0 {
            let (mut l, mut h) = (x, top);
            while h - l > tol * h.max(1.0) {
                let m = 0.5 * (l + h);
                if f(m) <= 0.0 {
                    l = m;
                } else {
                    h = m;
                }
            }
            return Some(0.5 * (l + h));
        }
        top = x;
    }
    None
}

fn block_radius(a: &Matrix, tol: f64) -> Result<f64> {
    if a.dim() == 1 {
        return Ok(a[(0, 0)]);
    }
    let mut p = Perron::new(a);
    while !p.width_ok(tol) && p.iters < MAX_POWER_ITERS {
        p.step();
    }
    if p.width_ok(tol) {
        return Ok(0.5 * (p.lo + p.hi));
    }
    charpoly_root(a, p.lo, p.hi, tol).ok_or_else(|| {
        Error::Numerical(format!(
            "spectral radius did not converge after {} iterations (bracket [{}, {}])",
            p.iters, p.lo, p.hi
        ))
    })
}

/// ρ(M) for entrywise nonnegative `m`, to relative tolerance `tol`.
/// Handles reducible matrices block by block.
pub fn spectral_radius(m: &Matrix, tol: f64) -> Result<f64> {
    if m.data.iter().any(|&v| !(v >= 0.0) || v.is_infinite()) {
        return Err(Error::Numerical(
            "spectral radius needs a finite nonnegative matrix".into(),
        ));
    }
    let mut rho = 0.0f64;
    for b in m.blocks() {
        rho = rho.max(block_radius(&m.sub(&b), tol)?);
    }
    Ok(rho)
}

/// Compare ρ(M) with `target`, stopping as soon as the bracket decides.
/// `Equal` means the two agree to relative tolerance `tol`.
pub fn compare_radius(m: &Matrix, target: f64, tol: f64) -> Result<Ordering> {
    if m.data.iter().any(|v| v.is_infinite()) {
        return Ok(Ordering::Greater);
    }
    let mut all_less = true;
    for b in m.blocks() {
        let a = m.sub(&b);
        if a.dim() == 1 {
            match a[(0, 0)].partial_cmp(&target) {
                Some(Ordering::Greater) => return Ok(Ordering::Greater),
                Some(Ordering::Less) => continue,
                _ => {
                    all_less = false;
                    continue;
                }
            }
        }
        let mut p = Perron::new(&a);
        loop {
            if p.lo > target {
                return Ok(Ordering::Greater);
            }
            if p.hi < target {
                break;
            }
            if p.width_ok(tol) {
                all_less = false;
                break;
            }
            if p.iters >= MAX_POWER_ITERS {
                let r = block_radius(&a, tol)?;
                if r > target * (1.0 + tol) {
                    return Ok(Ordering::Greater);
                }
                if r >= target * (1.0 - tol) {
                    all_less = false;
                }
                break;
            }
            p.step();
        }
    }
    Ok(if all_less {
        Ordering::Less
    } else {
        Ordering::Equal
    })
}
