//! Fixtures and brute-force reference computations shared by the
//! integration tests. The reference computations work from definitions
//! and never call the analytic code paths of the crate.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_integer::Integer;
use sgs_core::nset::GapSet;
use sgs_core::transforms::{edge_extend, in_split, out_split, vertex_clone};
use sgs_core::{
    build_ordered_limited, build_s_gap, build_unordered_limited, NSet, SGraph, TransformRecord,
};

pub fn set(lit: &str) -> NSet {
    lit.parse()
        .unwrap_or_else(|e| panic!("bad literal {lit:?}: {e}"))
}

pub fn gap(lit: &str) -> GapSet {
    lit.parse()
        .unwrap_or_else(|e| panic!("bad literal {lit:?}: {e}"))
}

pub fn golden() -> SGraph {
    build_s_gap(&gap("N")).unwrap()
}

pub fn even() -> SGraph {
    build_s_gap(&gap("0+2k")).unwrap()
}

pub fn two_cycle(a: &str, b: &str) -> SGraph {
    build_ordered_limited(vec![set(a), set(b)]).unwrap()
}

/// A small zoo of exact shifts with at most five vertices.
pub fn zoo() -> Vec<(String, SGraph)> {
    let mut out = vec![
        ("golden mean".to_string(), golden()),
        ("even shift".to_string(), even()),
        ("2-cycle {2},{2}".to_string(), two_cycle("2", "2")),
        ("2-cycle {2,4},{2}".to_string(), two_cycle("2,4", "2")),
        (
            "3-cycle of singletons".to_string(),
            build_ordered_limited(vec![set("1"), set("2"), set("1")]).unwrap(),
        ),
        (
            "ordered (N,{1,3},2+2k)".to_string(),
            build_ordered_limited(vec![set("N"), set("1,3"), set("2+2k")]).unwrap(),
        ),
        (
            "unordered ({1},{2},{1,2})".to_string(),
            build_unordered_limited(vec![set("1"), set("2"), set("1,2")]).unwrap(),
        ),
        ("S-gap {1,4}".to_string(), build_s_gap(&gap("1,4")).unwrap()),
        (
            "S-gap 0,3+3k".to_string(),
            build_s_gap(&gap("0,3+3k")).unwrap(),
        ),
    ];
    for seed in 0..6 {
        out.push((
            format!("random seed {seed}"),
            sgs_core::sample::random_graph(seed, 4),
        ));
    }
    out
}

/// `F_0 = 0, F_1 = 1, ...`.
pub fn fib(n: usize) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

/// Whether `w^∞` is a point of the shift, straight from the definition:
/// cut the cyclic word into maximal runs; each run `u^k` needs `k ∈ S_u`
/// and consecutive runs need an edge. A constant word needs `S_u` infinite.
pub fn periodic_point(g: &SGraph, w: &[usize]) -> bool {
    let n = w.len();
    if w.iter().all(|&x| x == w[0]) {
        return g.set(w[0]).is_infinite();
    }
    let start = (0..n)
        .find(|&i| w[i] != w[(i + n - 1) % n])
        .expect("not constant");
    let rot: Vec<usize> = (0..n).map(|i| w[(start + i) % n]).collect();
    let mut runs: Vec<(usize, u64)> = Vec::new();
    for &x in &rot {
        match runs.last_mut() {
            Some((v, k)) if *v == x => *k += 1,
            _ => runs.push((x, 1)),
        }
    }
    let r = runs.len();
    (0..r)
        .all(|i| g.set(runs[i].0).contains(runs[i].1) && g.has_edge(runs[i].0, runs[(i + 1) % r].0))
}

/// `p_n` by filtering all `|V|^n` words.
pub fn brute_periodic(g: &SGraph, n: usize) -> u64 {
    let v = g.len();
    let mut w = vec![0usize; n];
    let mut count = 0;
    loop {
        if periodic_point(g, &w) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            w[i] += 1;
            if w[i] < v {
                break;
            }
            w[i] = 0;
            i += 1;
        }
    }
}

/// Zeta coefficients from `p_1 … p_order` through `n z_n = Σ_{k=1}^n p_k z_{n-k}`.
pub fn zeta_from_p(p: &[u64], order: usize) -> Vec<i128> {
    let mut z = vec![0i128; order + 1];
    z[0] = 1;
    for n in 1..=order {
        let s: i128 = (1..=n).map(|k| p[k - 1] as i128 * z[n - k]).sum();
        assert_eq!(s % n as i128, 0, "zeta coefficient {n} is not an integer");
        z[n] = s / n as i128;
    }
    z
}

/// Least-period counts `q_n` from `p_n` by subtracting proper divisors.
pub fn q_from_p(p: &[u64]) -> Vec<i64> {
    let mut q = vec![0i64; p.len()];
    for n in 1..=p.len() {
        let below: i64 = (1..n).filter(|d| n % d == 0).map(|d| q[d - 1]).sum();
        q[n - 1] = p[n - 1] as i64 - below;
    }
    q
}

fn next_permutation(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = (i + 1..n)
        .rev()
        .find(|&j| a[j] > a[i])
        .expect("successor exists");
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// Simple cycles as rotation-canonical vertex lists, via every vertex
/// subset and every ordering of it.
pub fn brute_cycles(g: &SGraph) -> BTreeSet<Vec<usize>> {
    let n = g.len();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        let verts: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if verts.len() < 2 {
            continue;
        }
        let (first, rest) = (verts[0], &verts[1..]);
        let mut perm = rest.to_vec();
        loop {
            let mut cyc = vec![first];
            cyc.extend_from_slice(&perm);
            let k = cyc.len();
            if (0..k).all(|i| g.has_edge(cyc[i], cyc[(i + 1) % k])) {
                out.insert(cyc);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    out
}

/// gcd of all cycle sums, each vertex contributing any element up to
/// `offset + 3·period` (every element if finite).
pub fn brute_cycle_gcd(g: &SGraph) -> u64 {
    let mut total = 0u64;
    for cyc in brute_cycles(g) {
        let mut sums: BTreeSet<u64> = [0].into();
        for &v in &cyc {
            let s = g.set(v);
            let bound = s.max().unwrap_or_else(|| s.preperiod() + 3 * s.period());
            let elems = s.elements_up_to(bound);
            sums = sums
                .iter()
                .flat_map(|a| elems.iter().map(move |b| a + b))
                .collect();
        }
        for x in sums {
            total = total.gcd(&x);
        }
    }
    total
}

/// Length-`n` windows of every fully-blocked string (a walk of full blocks
/// `u^k`, `k ∈ S_u`) of total length at most `max_total`.
pub fn blocked_windows(g: &SGraph, n: usize, max_total: usize) -> BTreeSet<Vec<usize>> {
    fn grow(
        g: &SGraph,
        n: usize,
        max_total: usize,
        buf: &mut Vec<usize>,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        for w in buf.windows(n) {
            out.insert(w.to_vec());
        }
        let last = *buf.last().expect("nonempty");
        for &y in g.successors(last) {
            for k in g.set(y).elements_up_to((max_total - buf.len()) as u64) {
                let len = buf.len();
                buf.extend(std::iter::repeat_n(y, k as usize));
                grow(g, n, max_total, buf, out);
                buf.truncate(len);
            }
        }
    }
    let mut out = BTreeSet::new();
    let mut buf = Vec::new();
    for u in 0..g.len() {
        for k in g.set(u).elements_up_to(max_total as u64) {
            buf.clear();
            buf.extend(std::iter::repeat_n(u, k as usize));
            grow(g, n, max_total, &mut buf, &mut out);
        }
    }
    out
}

/// `S ∖ {min S}`, if nonempty.
pub fn without_min(s: &NSet) -> Option<NSet> {
    if s.is_singleton() {
        return None;
    }
    let m = s.min();
    match s.max() {
        Some(_) => NSet::finite(s.iter().skip(1)).ok(),
        None => {
            let (p, per) = (s.preperiod(), s.period());
            // The minimum may sit in the first period, so keep that period in the prefix.
            let prefix: Vec<bool> = (1..p + per).map(|k| k != m && s.contains(k)).collect();
            let pattern: Vec<bool> = (p + per..p + 2 * per).map(|k| s.contains(k)).collect();
            NSet::from_indicator(1, &prefix, &pattern).ok()
        }
    }
}

/// Every transform this suite knows how to apply to `g`, with the p₁ change
/// it should cause.
pub fn applicable(g: &SGraph, seed: u64) -> Vec<(SGraph, TransformRecord, i64)> {
    let mut out = Vec::new();
    let inf = |s: &NSet| i64::from(s.is_infinite());
    for v in 0..g.len() {
        let name = g.name(v).to_string();
        let s = g.set(v).clone();
        let names = |xs: &[usize]| {
            xs.iter()
                .map(|&x| g.name(x).to_string())
                .collect::<Vec<_>>()
        };
        let succ = names(g.successors(v));
        if succ.len() >= 2 {
            let (e1, e2): (Vec<&str>, Vec<&str>) = (
                vec![&succ[0]],
                succ[1..].iter().map(String::as_str).collect(),
            );
            let (h, r) = out_split(g, &name, &e1, &e2).expect("valid out-split");
            out.push((h, r, inf(&s)));
        }
        let pred = names(g.predecessors(v));
        if pred.len() >= 2 {
            let (e1, e2): (Vec<&str>, Vec<&str>) = (
                vec![&pred[0]],
                pred[1..].iter().map(String::as_str).collect(),
            );
            let (h, r) = in_split(g, &name, &e1, &e2).expect("valid in-split");
            out.push((h, r, inf(&s)));
        }
        if let Some(rest) = without_min(&s) {
            let first = NSet::singleton(s.min()).unwrap();
            let (h, r) = vertex_clone(g, &name, first, rest.clone()).expect("valid clone");
            out.push((h, r, inf(&rest) - inf(&s)));
        }
        if s.is_infinite() {
            let (a, b) =
                sgs_core::construct::seeded_partition(&s, seed).expect("infinite set splits");
            let delta = inf(&a) + inf(&b) - inf(&s);
            let (h, r) = vertex_clone(g, &name, a, b).expect("valid clone");
            out.push((h, r, delta));
        }
        if s.min() >= 2 {
            let (t1, t2) = (NSet::singleton(1).unwrap(), s.shifted_down(1).unwrap());
            let delta = inf(&t1) + inf(&t2) - inf(&s);
            let (h, r) = edge_extend(g, &name, t1, t2).expect("valid edge extension");
            out.push((h, r, delta));
        }
    }
    out
}
