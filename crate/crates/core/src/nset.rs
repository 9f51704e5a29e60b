//! Subsets of ℕ = {1, 2, ...} in "finite head + eventually periodic tail" form.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tri::Tri;

/// Periodic part `{offset + r + k*period : r in residues, k >= 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tail {
    pub offset: u64,
    pub period: u64,
    pub residues: Vec<u64>,
}

/// A nonempty subset of ℕ.
///
/// Values are always in canonical form: the tail uses its minimal period
/// and minimal preperiod, its offset is itself an element (so residue 0 is
/// present) and every head element lies below the offset. Two `NSet`s
/// denote the same set iff they compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawNSet", into = "RawNSet")]
pub struct NSet {
    head: Vec<u64>,
    tail: Option<Tail>,
    approximate: bool,
}

#[derive(Serialize, Deserialize)]
struct RawNSet {
    #[serde(default)]
    head: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tail: Option<Tail>,
    #[serde(default)]
    approximate: bool,
}

impl TryFrom<RawNSet> for NSet {
    type Error = Error;

    fn try_from(raw: RawNSet) -> Result<Self> {
        match raw.tail {
            Some(t) => {
                if raw.approximate {
                    return Err(Error::InvalidSet(
                        "an approximate set cannot carry a tail".into(),
                    ));
                }
                NSet::with_tail(raw.head, t.offset, t.period, t.residues)
            }
            None if raw.approximate => NSet::approximate(raw.head),
            None => NSet::finite(raw.head),
        }
    }
}

impl From<NSet> for RawNSet {
    fn from(s: NSet) -> Self {
        RawNSet {
            head: s.head,
            tail: s.tail,
            approximate: s.approximate,
        }
    }
}

/// Supremum of a gap sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Finite(u64),
    Infinite,
    Unknown,
}

impl Bound {
    pub fn finite(self) -> Option<u64> {
        match self {
            Bound::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::Infinite => f.write_str("inf"),
            Bound::Unknown => f.write_str("unknown"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NSetStats {
    pub min: u64,
    pub is_finite: Tri,
    pub is_cofinite: Tri,
    pub gap_sup: Bound,
    pub diff_gcd: u64,
    pub eventually_periodic_gaps: Tri,
}

/// How `gf_eval` treats approximate sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalMode {
    /// Refuse approximate sets.
    Exact,
    /// Evaluate the known elements only; for x > 0 this is a lower bound.
    LowerBound,
}

impl NSet {
    /// Finite set from arbitrary (unsorted, possibly repeated) elements.
    pub fn finite<I: IntoIterator<Item = u64>>(elems: I) -> Result<NSet> {
        let head = sorted_positive(elems)?;
        if head.is_empty() {
            return Err(Error::InvalidSet("the set is empty".into()));
        }
        Ok(NSet {
            head,
            tail: None,
            approximate: false,
        })
    }

    /// Explicit truncation of an unknown larger set.
    pub fn approximate<I: IntoIterator<Item = u64>>(elems: I) -> Result<NSet> {
        let mut s = NSet::finite(elems)?;
        s.approximate = true;
        Ok(s)
    }

    pub fn singleton(n: u64) -> Result<NSet> {
        NSet::finite([n])
    }

    /// ℕ itself.
    pub fn naturals() -> NSet {
        NSet::arithmetic(1, 1).expect("1 + k is valid")
    }

    /// `{start + k*step : k >= 0}`.
    pub fn arithmetic(start: u64, step: u64) -> Result<NSet> {
        NSet::with_tail(Vec::new(), start, step, vec![0])
    }

    /// `head ∪ {offset + r + k*period}`, normalized. Head elements may
    /// overlap the tail.
    pub fn with_tail(head: Vec<u64>, offset: u64, period: u64, residues: Vec<u64>) -> Result<NSet> {
        if offset == 0 {
            return Err(Error::InvalidSet("tail offset must be positive".into()));
        }
        if period == 0 {
            return Err(Error::InvalidSet("tail period must be positive".into()));
        }
        if residues.is_empty() {
            return Err(Error::InvalidSet("tail residues must be nonempty".into()));
        }
        if let Some(&r) = residues.iter().find(|&&r| r >= period) {
            return Err(Error::InvalidSet(format!(
                "residue {r} is not below period {period}"
            )));
        }
        let head = sorted_positive(head)?;
        let mut pattern = vec![false; period as usize];
        for &r in &residues {
            pattern[r as usize] = true;
        }
        Ok(normalize(head, offset, pattern))
    }

    /// Set given by an indicator: `prefix[i]` says whether `start_index + i`
    /// is a member for the finite prefix, then `pattern` repeats forever
    /// starting at `start_index + prefix.len()`. `start_index` must be ≥ 1.
    pub fn from_indicator(start_index: u64, prefix: &[bool], pattern: &[bool]) -> Result<NSet> {
        if start_index == 0 {
            return Err(Error::InvalidSet(
                "indicator must start at 1 or later".into(),
            ));
        }
        let head: Vec<u64> = prefix
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| start_index + i as u64)
            .collect();
        if pattern.iter().any(|&b| b) {
            let offset = start_index + prefix.len() as u64;
            Ok(normalize(head, offset, pattern.to_vec()))
        } else {
            NSet::finite(head)
        }
    }

    pub fn head(&self) -> &[u64] {
        &self.head
    }

    pub fn tail(&self) -> Option<&Tail> {
        self.tail.as_ref()
    }

    pub fn is_approximate(&self) -> bool {
        self.approximate
    }

    /// Finite set with the same known elements and the approximate flag
    /// cleared. Used to compute lower bounds.
    pub fn known_part(&self) -> NSet {
        NSet {
            head: self.head.clone(),
            tail: self.tail.clone(),
            approximate: false,
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        if let Some(t) = &self.tail {
            if n >= t.offset {
                return t
                    .residues
                    .binary_search(&((n - t.offset) % t.period))
                    .is_ok();
            }
        }
        self.head.binary_search(&n).is_ok()
    }

    pub fn min(&self) -> u64 {
        match (self.head.first(), &self.tail) {
            (Some(&h), _) => h,
            (None, Some(t)) => t.offset,
            (None, None) => unreachable!("NSet is never empty"),
        }
    }

    /// Largest element of a finite set (of the known part, if approximate).
    pub fn max(&self) -> Option<u64> {
        match self.tail {
            Some(_) => None,
            None => self.head.last().copied(),
        }
    }

    /// Whether the denoted set is infinite. Approximate sets are
    /// unknowable here; callers check `is_approximate` first.
    pub fn is_infinite(&self) -> bool {
        self.tail.is_some()
    }

    /// Number of elements of a finite set.
    pub fn len(&self) -> Option<usize> {
        match self.tail {
            Some(_) => None,
            None => Some(self.head.len()),
        }
    }

    pub fn is_singleton(&self) -> bool {
        !self.approximate && self.tail.is_none() && self.head.len() == 1
    }

    /// Elements in increasing order; infinite for infinite sets.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            set: self,
            head_pos: 0,
            block: 0,
            res_pos: 0,
        }
    }

    /// Elements `<= bound`.
    pub fn elements_up_to(&self, bound: u64) -> Vec<u64> {
        self.iter().take_while(|&x| x <= bound).collect()
    }

    /// `{s + k : s in self}`.
    pub fn shifted_up(&self, k: u64) -> NSet {
        NSet {
            head: self.head.iter().map(|h| h + k).collect(),
            tail: self.tail.as_ref().map(|t| Tail {
                offset: t.offset + k,
                period: t.period,
                residues: t.residues.clone(),
            }),
            approximate: self.approximate,
        }
    }

    /// `{s - k : s in self}`; requires `min > k`.
    pub fn shifted_down(&self, k: u64) -> Result<NSet> {
        if self.min() <= k {
            return Err(Error::InvalidSet(format!(
                "cannot shift down by {k}: minimum is {}",
                self.min()
            )));
        }
        Ok(NSet {
            head: self.head.iter().map(|h| h - k).collect(),
            tail: self.tail.as_ref().map(|t| Tail {
                offset: t.offset - k,
                period: t.period,
                residues: t.residues.clone(),
            }),
            approximate: self.approximate,
        })
    }

    /// Index below which the set may be irregular: every element `>= preperiod`
    /// follows the period.
    pub fn preperiod(&self) -> u64 {
        match (&self.tail, self.head.last()) {
            (Some(t), _) => t.offset,
            (None, Some(&m)) => m + 1,
            (None, None) => 1,
        }
    }

    /// Period of the indicator sequence (1 for finite sets).
    pub fn period(&self) -> u64 {
        self.tail.as_ref().map_or(1, |t| t.period)
    }

    pub fn stats(&self) -> NSetStats {
        let (is_finite, is_cofinite, ep) = if self.approximate {
            (Tri::Unknown, Tri::Unknown, Tri::Unknown)
        } else {
            let cofinite = self
                .tail
                .as_ref()
                .is_some_and(|t| t.residues.len() as u64 == t.period);
            (
                Tri::from(self.tail.is_none()),
                Tri::from(cofinite),
                Tri::True,
            )
        };
        NSetStats {
            min: self.min(),
            is_finite,
            is_cofinite,
            gap_sup: self.gap_sup(),
            diff_gcd: self.diff_gcd(),
            eventually_periodic_gaps: ep,
        }
    }

    /// `sup Δ(S)`, 0 for a singleton.
    pub fn gap_sup(&self) -> Bound {
        if self.approximate {
            return Bound::Unknown;
        }
        match &self.tail {
            None => Bound::Finite(max_gap(&self.head)),
            Some(t) => {
                // One full period plus the wrap to the next block covers every
                // gap the tail will ever produce.
                let upto = t.offset + 2 * t.period;
                Bound::Finite(max_gap(&self.elements_up_to(upto)))
            }
        }
    }

    /// `gcd{s - min S : s in S}`, 0 for a singleton.
    pub fn diff_gcd(&self) -> u64 {
        let m = self.min();
        let mut g = 0u64;
        for &h in &self.head {
            g = g.gcd(&(h - m));
        }
        if let Some(t) = &self.tail {
            // gcd{x, x+p, x+2p, ...} = gcd(x, p)
            for &r in &t.residues {
                g = g.gcd(&(t.offset + r - m)).gcd(&t.period);
            }
        }
        g
    }

    /// `Σ_{s in S} x^s` in closed form.
    pub fn gf_eval(&self, x: f64, mode: EvalMode) -> Result<f64> {
        if self.approximate && mode == EvalMode::Exact {
            return Err(Error::ApproximateSet);
        }
        if !(x >= 0.0) {
            return Err(Error::InvalidSet(format!(
                "generating function evaluated at {x}"
            )));
        }
        if x == 0.0 {
            return Ok(0.0);
        }
        let mut sum: f64 = self.head.iter().map(|&h| x.powf(h as f64)).sum();
        if let Some(t) = &self.tail {
            if x >= 1.0 {
                return Ok(f64::INFINITY);
            }
            let lx = x.ln();
            let num: f64 = t
                .residues
                .iter()
                .map(|&r| ((t.offset + r) as f64 * lx).exp())
                .sum();
            // 1 - x^p without cancellation near x = 1
            let den = -((t.period as f64) * lx).exp_m1();
            sum += num / den;
        }
        Ok(sum)
    }

    /// Indicator coefficients `c_0..=c_order`.
    pub fn gf_coeffs(&self, order: usize) -> Vec<i64> {
        let mut c = vec![0i64; order + 1];
        for s in self.iter().take_while(|&s| s <= order as u64) {
            c[s as usize] = 1;
        }
        c
    }

    /// `S ∩ [1, n]`. Keeps the approximate flag.
    pub fn truncate(&self, n: u64) -> Result<NSet> {
        let head = self.elements_up_to(n);
        if head.is_empty() {
            return Err(Error::EmptyTruncation(n));
        }
        Ok(NSet {
            head,
            tail: None,
            approximate: self.approximate,
        })
    }

    /// Exact check that `self` and `other` are disjoint and their union is `whole`.
    pub fn is_partition_of(&self, other: &NSet, whole: &NSet) -> Tri {
        if self.approximate || other.approximate || whole.approximate {
            return Tri::Unknown;
        }
        let horizon = [self, other, whole]
            .iter()
            .map(|s| s.preperiod())
            .max()
            .unwrap_or(1)
            + lcm3(self.period(), other.period(), whole.period());
        let ok = (1..=horizon).all(|n| {
            let (a, b) = (self.contains(n), other.contains(n));
            !(a && b) && ((a || b) == whole.contains(n))
        });
        Tri::from(ok)
    }

    /// Smallest horizon for which `direct_sum_check` is conclusive.
    pub fn direct_sum_bound(t1: &NSet, t2: &NSet, s: &NSet) -> u64 {
        t1.preperiod()
            + t2.preperiod()
            + s.preperiod()
            + 2 * lcm3(t1.period(), t2.period(), s.period())
    }

    /// Whether every element of `s` has exactly one representation `a + b`
    /// with `a` in `t1`, `b` in `t2`, and no other number has one.
    pub fn direct_sum_check(t1: &NSet, t2: &NSet, s: &NSet, horizon: u64) -> Tri {
        if t1.approximate || t2.approximate || s.approximate {
            return Tri::Unknown;
        }
        let h = horizon as usize;
        let (a, b, c) = (t1.gf_coeffs(h), t2.gf_coeffs(h), s.gf_coeffs(h));
        let mut prod = vec![0i64; h + 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate().take(h + 1 - i) {
                prod[i + j] += bj;
            }
        }
        if prod != c {
            return Tri::False;
        }
        if horizon < NSet::direct_sum_bound(t1, t2, s) {
            Tri::Unknown
        } else {
            Tri::True
        }
    }

    /// Render in the literal syntax accepted by `FromStr`.
    pub fn to_literal(&self) -> String {
        let mut parts: Vec<String> = self.head.iter().map(|h| h.to_string()).collect();
        if let Some(t) = &self.tail {
            if t.offset == 1 && t.period == 1 {
                parts.push("N".into());
            } else {
                for &r in &t.residues {
                    parts.push(format!("{}+{}k", t.offset + r, t.period));
                }
            }
        }
        let body = parts.join(",");
        if self.approximate {
            format!("~{body}")
        } else {
            body
        }
    }
}

impl fmt::Display for NSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl FromStr for NSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<NSet> {
        let g = GapSet::from_str(s)?;
        if g.contains_zero {
            return Err(Error::SetLiteral {
                literal: s.into(),
                reason: "0 is not a natural number here".into(),
            });
        }
        g.positive.ok_or_else(|| Error::SetLiteral {
            literal: s.into(),
            reason: "empty set".into(),
        })
    }
}

pub struct Iter<'a> {
    set: &'a NSet,
    head_pos: usize,
    block: u64,
    res_pos: usize,
}

impl Iterator for Iter<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.head_pos < self.set.head.len() {
            self.head_pos += 1;
            return Some(self.set.head[self.head_pos - 1]);
        }
        let t = self.set.tail.as_ref()?;
        let v = t.offset + self.block * t.period + t.residues[self.res_pos];
        self.res_pos += 1;
        if self.res_pos == t.residues.len() {
            self.res_pos = 0;
            self.block += 1;
        }
        Some(v)
    }
}

/// A subset of ℕ₀ = {0, 1, 2, ...}, as used by gap shifts: a flag for 0
/// plus the positive part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapSet {
    pub contains_zero: bool,
    pub positive: Option<NSet>,
}

impl GapSet {
    pub fn new(contains_zero: bool, positive: Option<NSet>) -> Result<GapSet> {
        if !contains_zero && positive.is_none() {
            return Err(Error::InvalidSet("the set is empty".into()));
        }
        Ok(GapSet {
            contains_zero,
            positive,
        })
    }

    pub fn from_positive(s: NSet) -> GapSet {
        GapSet {
            contains_zero: false,
            positive: Some(s),
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.positive.as_ref().is_some_and(|s| s.is_infinite())
    }

    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            self.contains_zero
        } else {
            self.positive.as_ref().is_some_and(|s| s.contains(n))
        }
    }

    pub fn to_literal(&self) -> String {
        match (&self.positive, self.contains_zero) {
            (None, _) => "0".into(),
            (Some(s), false) => s.to_literal(),
            (Some(s), true) => match s.to_literal().strip_prefix('~') {
                Some(rest) => format!("~0,{rest}"),
                None => format!("0,{}", s.to_literal()),
            },
        }
    }
}

impl fmt::Display for GapSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

/// Literal syntax: comma-separated terms, each one of `n`, `a..b`
/// (inclusive), `a+bk` (`a, a+b, a+2b, ...`), `N` (all of ℕ) or `N0`.
/// A leading `~` marks the set as an approximation; only finite terms are
/// allowed then.
impl FromStr for GapSet {
    type Err = Error;

    fn from_str(literal: &str) -> Result<GapSet> {
        let bad = |reason: String| Error::SetLiteral {
            literal: literal.into(),
            reason,
        };
        let text = literal.trim();
        let (approx, text) = match text.strip_prefix('~') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let mut finite: Vec<u64> = Vec::new();
        let mut zero = false;
        let mut progressions: Vec<(u64, u64)> = Vec::new();
        for term in text.split(',').map(str::trim) {
            if term.is_empty() {
                return Err(bad("empty term".into()));
            }
            if term == "N" || term == "N0" {
                zero |= term == "N0";
                progressions.push((1, 1));
            } else if let Some((a, b)) = term.split_once("..") {
                let (a, b) = (parse_num(a, &bad)?, parse_num(b, &bad)?);
                if a > b {
                    return Err(bad(format!("empty range {term}")));
                }
                if b - a > 1_000_000 {
                    return Err(bad(format!("range {term} is too long; use a progression")));
                }
                finite.extend(a..=b);
            } else if let Some(prog) = term.strip_suffix('k') {
                let (a, b) = prog
                    .split_once('+')
                    .ok_or_else(|| bad(format!("malformed progression {term}")))?;
                let (a, b) = (parse_num(a, &bad)?, parse_num(b, &bad)?);
                if b == 0 {
                    return Err(bad(format!("progression {term} has step 0")));
                }
                progressions.push((a, b));
            } else {
                finite.push(parse_num(term, &bad)?);
            }
        }
        if approx && !progressions.is_empty() {
            return Err(bad("an approximate set lists finitely many elements".into()));
        }
        zero |= finite.contains(&0);
        finite.retain(|&x| x != 0);
        // a + bk with a = 0 contributes 0 and then b + bk.
        let mut progs = Vec::new();
        for (a, b) in progressions {
            if a == 0 {
                zero = true;
                progs.push((b, b));
            } else {
                progs.push((a, b));
            }
        }
        let positive = if progs.is_empty() {
            if finite.is_empty() {
                None
            } else if approx {
                Some(NSet::approximate(finite)?)
            } else {
                Some(NSet::finite(finite)?)
            }
        } else {
            Some(union_of_progressions(finite, &progs))
        };
        GapSet::new(zero, positive).map_err(|_| bad("empty set".into()))
    }
}

fn parse_num<F: Fn(String) -> Error>(s: &str, bad: &F) -> Result<u64> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| bad(format!("not a number: {:?}", s.trim())))
}

fn union_of_progressions(head: Vec<u64>, progs: &[(u64, u64)]) -> NSet {
    let period = progs.iter().fold(1u64, |acc, &(_, b)| acc.lcm(&b));
    let offset = progs.iter().map(|&(a, _)| a).max().unwrap_or(1);
    let mut pattern = vec![false; period as usize];
    for (r, slot) in pattern.iter_mut().enumerate() {
        let n = offset + r as u64;
        *slot = progs.iter().any(|&(a, b)| n >= a && (n - a) % b == 0);
    }
    let mut head = head;
    for &(a, b) in progs {
        let mut x = a;
        while x < offset {
            head.push(x);
            x += b;
        }
    }
    head.sort_unstable();
    head.dedup();
    normalize(head, offset, pattern)
}

fn sorted_positive<I: IntoIterator<Item = u64>>(elems: I) -> Result<Vec<u64>> {
    let mut v: Vec<u64> = elems.into_iter().collect();
    if v.contains(&0) {
        return Err(Error::InvalidSet("0 is not an element of ℕ".into()));
    }
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

fn max_gap(sorted: &[u64]) -> u64 {
    sorted.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0)
}

fn lcm3(a: u64, b: u64, c: u64) -> u64 {
    a.lcm(&b).lcm(&c)
}

/// Canonical form of `head ∪ {offset + i + k*p : pattern[i]}`; `pattern`
/// has at least one `true` and `head` is sorted and positive.
fn normalize(head: Vec<u64>, offset: u64, pattern: Vec<bool>) -> NSet {
    let p = pattern.len() as u64;
    let mut offset = offset;
    let mut finite: Vec<u64> = head;
    // Push the offset past the head so head elements never overlap the
    // tail; tail elements skipped over join the head.
    if let Some(&last) = finite.last() {
        if last >= offset {
            let moved = offset + p * ((last + 1 - offset).div_ceil(p));
            finite.extend((offset..moved).filter(|&n| pattern[((n - offset) % p) as usize]));
            offset = moved;
            finite.sort_unstable();
            finite.dedup();
        }
    }
    let mut pattern = pattern;

    // Minimal period.
    let n = pattern.len();
    for d in 1..=n {
        if n % d == 0 && (0..n).all(|i| pattern[i] == pattern[i % d]) {
            pattern.truncate(d);
            break;
        }
    }

    // Minimal preperiod: step the offset back while the element just below
    // agrees with the periodic extension.
    loop {
        if offset <= 1 {
            break;
        }
        let below = offset - 1;
        let member = finite.last() == Some(&below);
        let predicted = *pattern.last().expect("nonempty pattern");
        if member != predicted {
            break;
        }
        if member {
            finite.pop();
        }
        pattern.rotate_right(1);
        offset = below;
    }

    // Offset at the first tail element.
    while !pattern[0] {
        pattern.rotate_left(1);
        offset += 1;
    }

    let residues = pattern
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect();
    NSet {
        head: finite,
        tail: Some(Tail {
            offset,
            period: pattern.len() as u64,
            residues,
        }),
        approximate: false,
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Bound) -> Option<Ordering> {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => Some(a.cmp(b)),
            (Bound::Infinite, Bound::Infinite) => Some(Ordering::Equal),
            (Bound::Finite(_), Bound::Infinite) => Some(Ordering::Less),
            (Bound::Infinite, Bound::Finite(_)) => Some(Ordering::Greater),
            _ => None,
        }
    }
}
