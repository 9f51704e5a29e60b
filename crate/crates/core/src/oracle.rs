//! Brute-force ground truth: allowed words, periodic points and empirical
//! entropy, computed directly from run decompositions.
//!
//! A word with maximal runs `u_1^{k_1} … u_m^{k_m}` is allowed when
//! consecutive run letters are adjacent, every interior run has
//! `k_i ∈ S_{u_i}`, and each boundary run fits inside some block
//! (`∃ s ∈ S_u, s ≥ k`). A word `w` of length `n` gives a point `w^∞` of
//! period `n` when all of its cyclic runs are interior, or when `w = u^n`
//! with `S_u` infinite.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::entropy::{entropy, EntropyMethod, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::graph::SGraph;
use crate::nset::NSet;
use crate::zeta::{
    big_list_json, least_period_counts, periodic_counts, zeta_coeffs, zeta_from_counts,
};

pub const DEFAULT_MAX_LEN: usize = 22;
pub const DEFAULT_MAX_WORDS: usize = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    pub max_len: usize,
    pub max_words: usize,
    /// Accept approximate sets by using their known parts; results then
    /// describe a subshift.
    pub lower_bound: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            max_len: DEFAULT_MAX_LEN,
            max_words: DEFAULT_MAX_WORDS,
            lower_bound: false,
        }
    }
}

/// A word as a sequence of vertex indices of the oracle's graph.
pub type Word = Vec<usize>;

/// State of the run automaton after a nonempty prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct RunState {
    vertex: usize,
    run: usize,
    first: bool,
}

#[derive(Clone, Debug)]
pub struct Oracle {
    g: SGraph,
    opts: OracleOptions,
    single_char: bool,
}

impl Oracle {
    /// Works on the essential part of `g`.
    pub fn new(g: &SGraph, opts: OracleOptions) -> Result<Oracle> {
        let g = if g.any_approximate() {
            if !opts.lower_bound {
                return Err(Error::ApproximateSet);
            }
            g.with_sets(g.sets().map(NSet::known_part).collect())
        } else {
            g.clone()
        };
        let g = g.essentialize();
        if g.is_empty() {
            return Err(Error::EmptyShift);
        }
        let single_char = (0..g.len()).all(|i| g.name(i).chars().count() == 1);
        Ok(Oracle {
            g,
            opts,
            single_char,
        })
    }

    pub fn graph(&self) -> &SGraph {
        &self.g
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n > self.opts.max_len {
            return Err(Error::CapExceeded {
                what: "letters per word",
                cap: self.opts.max_len,
            });
        }
        Ok(())
    }

    fn contains(&self, v: usize, k: usize) -> bool {
        self.g.set(v).contains(k as u64)
    }

    /// Some block of `v` has length at least `k`.
    fn fits(&self, v: usize, k: usize) -> bool {
        let s = self.g.set(v);
        s.is_infinite() || s.max().is_some_and(|m| m >= k as u64)
    }

    /// Letters concatenated when every name is one character, otherwise
    /// separated by spaces.
    pub fn render(&self, w: &[usize]) -> String {
        let names = w.iter().map(|&v| self.g.name(v));
        if self.single_char {
            names.collect()
        } else {
            names.collect::<Vec<_>>().join(" ")
        }
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let lookup = |s: &str| {
            self.g
                .index_of(s)
                .ok_or_else(|| Error::UnknownVertex(s.to_string()))
        };
        if self.single_char && !text.contains(' ') {
            text.chars().map(|c| lookup(&c.to_string())).collect()
        } else {
            text.split_whitespace().map(lookup).collect()
        }
    }

    fn step(&self, st: Option<RunState>, a: usize) -> Option<RunState> {
        match st {
            None => self.fits(a, 1).then_some(RunState {
                vertex: a,
                run: 1,
                first: true,
            }),
            Some(s) if s.vertex == a => self.fits(a, s.run + 1).then_some(RunState {
                run: s.run + 1,
                ..s
            }),
            Some(s) => {
                let closes = s.first || self.contains(s.vertex, s.run);
                (closes && self.g.has_edge(s.vertex, a)).then_some(RunState {
                    vertex: a,
                    run: 1,
                    first: false,
                })
            }
        }
    }

    /// Membership in the language, by running the run automaton.
    pub fn is_word(&self, w: &[usize]) -> bool {
        let mut st = None;
        for &a in w {
            match self.step(st, a) {
                Some(s) => st = Some(s),
                None => return false,
            }
        }
        true
    }

    /// Lengths `L ≤ max_gap` for which some word `c` of length `L` makes
    /// `u c w` allowed.
    pub fn connecting_lengths(&self, u: &[usize], w: &[usize], max_gap: usize) -> Vec<usize> {
        let mut st = None;
        for &a in u {
            match self.step(st, a) {
                Some(s) => st = Some(s),
                None => return Vec::new(),
            }
        }
        let mut frontier: HashSet<Option<RunState>> = HashSet::from([st]);
        let mut out = Vec::new();
        for len in 0..=max_gap {
            let finishes = frontier.iter().any(|&s0| {
                let mut s = s0;
                for &a in w {
                    match self.step(s, a) {
                        Some(t) => s = Some(t),
                        None => return false,
                    }
                }
                true
            });
            if finishes {
                out.push(len);
            }
            let mut next = HashSet::new();
            for &s in &frontier {
                for a in 0..self.g.len() {
                    if let Some(t) = self.step(s, a) {
                        next.insert(Some(t));
                    }
                }
            }
            frontier = next;
        }
        out
    }

    /// `|ℬ_n|` by dynamic programming over run compositions.
    pub fn count_words(&self, n: usize) -> Result<u64> {
        if n == 0 {
            return Ok(1);
        }
        let v = self.g.len();
        let overflow = || Error::CapExceeded {
            what: "words (u64 count)",
            cap: usize::MAX,
        };
        // f[x][r]: ways to place the remaining r ≥ 1 letters after a run of x.
        let mut f = vec![vec![0u64; n + 1]; v];
        for r in 1..n {
            for x in 0..v {
                let mut total = 0u64;
                for &y in self.g.successors(x) {
                    if self.fits(y, r) {
                        total = total.checked_add(1).ok_or_else(overflow)?;
                    }
                    for k in 1..r {
                        if self.contains(y, k) {
                            total = total.checked_add(f[y][r - k]).ok_or_else(overflow)?;
                        }
                    }
                }
                f[x][r] = total;
            }
        }
        let mut total = 0u64;
        for u in 0..v {
            if self.fits(u, n) {
                total += 1;
            }
            for k in 1..n {
                if self.fits(u, k) {
                    total = total.checked_add(f[u][n - k]).ok_or_else(overflow)?;
                }
            }
        }
        Ok(total)
    }

    /// `ℬ_n`, sorted by rendered form.
    pub fn enum_words(&self, n: usize) -> Result<Vec<Word>> {
        self.check_len(n)?;
        let mut out = Vec::new();
        if n == 0 {
            return Ok(vec![Vec::new()]);
        }
        let mut buf = Vec::with_capacity(n);
        for u in 0..self.g.len() {
            for k in 1..=n {
                if !self.fits(u, k) {
                    break;
                }
                buf.extend(std::iter::repeat_n(u, k));
                if k == n {
                    self.push_word(&mut out, &buf)?;
                } else {
                    self.extend_words(&mut out, &mut buf, u, n)?;
                }
                buf.truncate(0);
            }
        }
        self.sort_words(&mut out);
        Ok(out)
    }

    fn push_word(&self, out: &mut Vec<Word>, w: &[usize]) -> Result<()> {
        if out.len() >= self.opts.max_words {
            return Err(Error::CapExceeded {
                what: "enumerated words",
                cap: self.opts.max_words,
            });
        }
        out.push(w.to_vec());
        Ok(())
    }

    fn extend_words(
        &self,
        out: &mut Vec<Word>,
        buf: &mut Word,
        last: usize,
        n: usize,
    ) -> Result<()> {
        let r = n - buf.len();
        for &y in self.g.successors(last) {
            for k in 1..=r {
                let ok = if k == r {
                    self.fits(y, k)
                } else {
                    self.contains(y, k)
                };
                if !ok {
                    continue;
                }
                let mark = buf.len();
                buf.extend(std::iter::repeat_n(y, k));
                if k == r {
                    self.push_word(out, buf)?;
                } else {
                    self.extend_words(out, buf, y, n)?;
                }
                buf.truncate(mark);
            }
        }
        Ok(())
    }

    fn sort_words(&self, words: &mut [Word]) {
        words.sort_by_cached_key(|w| self.render(w));
    }

    /// `p_n`: words `w` of length `n` with `w^∞` in the shift, counted by
    /// dynamic programming over cyclic run sequences.
    pub fn count_periodic(&self, n: usize) -> Result<u64> {
        if n == 0 {
            return Err(Error::Precondition("period must be positive".into()));
        }
        let v = self.g.len();
        let mut total = (0..v).filter(|&u| self.g.set(u).is_infinite()).count() as u64;
        for a in 0..v {
            // g[x][r]: run sequences using exactly r letters after a run of
            // x whose last run has an edge back to a.
            let mut g = vec![vec![0u64; n + 1]; v];
            for r in 1..n {
                for x in 0..v {
                    let mut t = 0u64;
                    for &y in self.g.successors(x) {
                        for k in 1..=r {
                            if !self.contains(y, k) {
                                continue;
                            }
                            t += if k == r {
                                u64::from(self.g.has_edge(y, a))
                            } else {
                                g[y][r - k]
                            };
                        }
                    }
                    g[x][r] = t;
                }
            }
            for k1 in 1..n {
                if self.contains(a, k1) {
                    // k1 positions of the first run can hold index 0.
                    total += k1 as u64 * g[a][n - k1];
                }
            }
        }
        Ok(total)
    }

    /// Every periodic word of length `n` (sorted) and the count `p_n`.
    pub fn enum_periodic(&self, n: usize) -> Result<PeriodicEnumeration> {
        self.check_len(n)?;
        if n == 0 {
            return Err(Error::Precondition("period must be positive".into()));
        }
        let mut words = Vec::new();
        for u in 0..self.g.len() {
            if self.g.set(u).is_infinite() {
                self.push_word(&mut words, &vec![u; n])?;
            }
        }
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for a in 0..self.g.len() {
            for k1 in 1..n {
                if self.contains(a, k1) {
                    runs.push((a, k1));
                    self.cyclic_runs(&mut words, &mut runs, n - k1)?;
                    runs.pop();
                }
            }
        }
        self.sort_words(&mut words);
        let mut orbits: BTreeSet<Word> = BTreeSet::new();
        for w in &words {
            orbits.insert(min_rotation(w));
        }
        let mut orbits: Vec<Orbit> = orbits
            .into_iter()
            .map(|w| Orbit {
                least_period: least_period(&w),
                word: self.render(&w),
            })
            .collect();
        orbits.sort_by(|a, b| a.word.cmp(&b.word));
        Ok(PeriodicEnumeration {
            n,
            count: words.len() as u64,
            words,
            orbits,
        })
    }

    fn cyclic_runs(
        &self,
        out: &mut Vec<Word>,
        runs: &mut Vec<(usize, usize)>,
        r: usize,
    ) -> Result<()> {
        let (a, k1) = runs[0];
        let last = runs.last().expect("nonempty").0;
        for &y in self.g.successors(last) {
            for k in 1..=r {
                if !self.contains(y, k) {
                    continue;
                }
                runs.push((y, k));
                if k == r {
                    if self.g.has_edge(y, a) {
                        let flat: Word = runs
                            .iter()
                            .flat_map(|&(v, k)| std::iter::repeat_n(v, k))
                            .collect();
                        // The word starts at each offset inside the first run.
                        for j in 0..k1 {
                            let mut w = flat[j..].to_vec();
                            w.extend_from_slice(&flat[..j]);
                            self.push_word(out, &w)?;
                        }
                    }
                } else {
                    self.cyclic_runs(out, runs, r - k)?;
                }
                runs.pop();
            }
        }
        Ok(())
    }

    /// `log |ℬ_n| / n`.
    pub fn entropy_estimate(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::Precondition("word length must be positive".into()));
        }
        Ok((self.count_words(n)? as f64).ln() / n as f64)
    }

    /// Compare brute force with the analytic routes for `n = 1 … n_max`.
    pub fn crosscheck(&self, n_max: usize, entropy_tol: f64) -> Result<OracleReport> {
        self.check_len(n_max)?;
        if n_max == 0 {
            return Err(Error::Precondition("n_max must be positive".into()));
        }
        let mut checks = Vec::new();
        let word_counts: Vec<u64> = (1..=n_max)
            .map(|n| self.count_words(n))
            .collect::<Result<_>>()?;
        let estimates: Vec<f64> = word_counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (c as f64).ln() / (i + 1) as f64)
            .collect();
        let h = entropy(&self.g, EntropyMethod::Spectral, DEFAULT_TOL)?.entropy;
        let deltas: Vec<f64> = estimates.iter().map(|e| e - h).collect();
        let below = deltas.iter().position(|&d| d < -1e-9);
        checks.push(Check::new(
            "entropy_is_infimum",
            below.is_none(),
            match below {
                Some(i) => format!("log|B_{}|/{} is below the entropy", i + 1, i + 1),
                None => "every estimate is at least the entropy".into(),
            },
        ));
        let last = *deltas.last().expect("n_max ≥ 1");
        checks.push(Check::new(
            "entropy_estimate",
            last <= entropy_tol,
            format!("estimate at n = {n_max} exceeds the entropy by {last:.6} (tolerance {entropy_tol})"),
        ));
        let mut submult = true;
        for m in 1..=n_max {
            for n in 1..=n_max - m {
                let (a, b, c) = (
                    word_counts[m - 1],
                    word_counts[n - 1],
                    word_counts[m + n - 1],
                );
                if u128::from(c) > u128::from(a) * u128::from(b) {
                    submult = false;
                }
            }
        }
        checks.push(Check::new(
            "submultiplicative",
            submult,
            "|B_(m+n)| ≤ |B_m|·|B_n|".into(),
        ));

        let p_hat: Vec<u64> = (1..=n_max)
            .map(|n| self.count_periodic(n))
            .collect::<Result<_>>()?;
        let p_hat_big: Vec<BigInt> = p_hat.iter().map(|&p| BigInt::from(p)).collect();
        let p_analytic = periodic_counts(&self.g, n_max)?;
        let mismatch = (0..n_max).find(|&i| p_hat_big[i] != p_analytic[i]);
        checks.push(Check::new(
            "periodic_counts",
            mismatch.is_none(),
            match mismatch {
                Some(i) => format!(
                    "p_{} brute force {} vs trace {}",
                    i + 1,
                    p_hat[i],
                    p_analytic[i]
                ),
                None => "brute-force p_n equals the trace formula".into(),
            },
        ));
        let zeta_hat = zeta_from_counts(&p_hat_big, n_max)?;
        let zeta_analytic = zeta_coeffs(&self.g, n_max)?;
        checks.push(Check::new(
            "zeta",
            zeta_hat == zeta_analytic,
            "exp(Σ p_n t^n / n) against 1/((1-t)^p1 det(I - B(t)))".into(),
        ));
        let q_hat = least_period_counts(&p_hat_big);
        Ok(OracleReport {
            n_max,
            word_counts,
            estimates,
            entropy: h,
            deltas,
            p_hat: p_hat_big,
            p_analytic,
            q_hat,
            zeta_hat: zeta_hat.into_coeffs(),
            zeta_analytic: zeta_analytic.into_coeffs(),
            checks,
        })
    }
}

fn min_rotation(w: &[usize]) -> Word {
    (0..w.len())
        .map(|i| {
            let mut r = w[i..].to_vec();
            r.extend_from_slice(&w[..i]);
            r
        })
        .min()
        .unwrap_or_default()
}

fn least_period(w: &[usize]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&d| n % d == 0 && (0..n).all(|i| w[i] == w[(i + d) % n]))
        .unwrap_or(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// Lexicographically least rotation.
    pub word: String,
    pub least_period: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicEnumeration {
    pub n: usize,
    pub count: u64,
    pub words: Vec<Word>,
    pub orbits: Vec<Orbit>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, pass: bool, detail: String) -> Check {
        Check { name, pass, detail }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub n_max: usize,
    /// `|ℬ_n|` for `n = 1 … n_max`.
    pub word_counts: Vec<u64>,
    pub estimates: Vec<f64>,
    pub entropy: f64,
    pub deltas: Vec<f64>,
    pub p_hat: Vec<BigInt>,
    pub p_analytic: Vec<BigInt>,
    pub q_hat: Vec<BigInt>,
    pub zeta_hat: Vec<BigInt>,
    pub zeta_analytic: Vec<BigInt>,
    pub checks: Vec<Check>,
}

impl OracleReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "n_max": self.n_max,
            "word_counts": self.word_counts,
            "estimates": self.estimates,
            "entropy": self.entropy,
            "deltas": self.deltas,
            "p_hat": big_list_json(&self.p_hat),
            "p_analytic": big_list_json(&self.p_analytic),
            "q_hat": big_list_json(&self.q_hat),
            "zeta_hat": big_list_json(&self.zeta_hat),
            "zeta_analytic": big_list_json(&self.zeta_analytic),
            "checks": self.checks,
            "all_pass": self.all_pass(),
        })
    }
}
