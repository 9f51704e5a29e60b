//! Entropy-preserving graph transformations: edge extension, state
//! splitting, vertex cloning, and lifting a shift to a larger alphabet.
//!
//! Every operation appends one new vertex (named after the site with a
//! trailing `'`) and reports whether the result is known to be conjugate
//! to the input.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SGraph, Vertex};
use crate::nset::NSet;
use crate::tri::Tri;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformKind {
    EdgeExtend,
    OutSplit,
    InSplit,
    Clone,
}

/// Conjugacy verdict. `No` is never produced here: telling shifts apart
/// needs an invariant such as the zeta fingerprint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conjugacy {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TransformParams {
    Decomposition { t1: NSet, t2: NSet },
    Partition { e1: Vec<String>, e2: Vec<String> },
    Split { s1: NSet, s2: NSet },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformRecord {
    pub kind: TransformKind,
    pub site: String,
    pub params: TransformParams,
    pub conjugacy: Conjugacy,
    pub new_vertex: String,
}

/// `v'`, then `v'2`, `v'3`, ... until unused.
fn fresh_name(g: &SGraph, v: &str) -> String {
    let base = format!("{v}'");
    if g.index_of(&base).is_none() {
        return base;
    }
    (2..)
        .map(|k| format!("{base}{k}"))
        .find(|n| g.index_of(n).is_none())
        .expect("some suffix is free")
}

/// Copy of `g` with one extra vertex and the given edge list.
fn rebuild(
    g: &SGraph,
    site: usize,
    site_set: NSet,
    new_name: &str,
    new_set: NSet,
    edges: &[(usize, usize)],
) -> SGraph {
    let mut vertices: Vec<Vertex> = g.vertices().to_vec();
    vertices[site].set = site_set;
    vertices.push(Vertex {
        name: new_name.to_string(),
        set: new_set,
    });
    SGraph::new(vertices, edges).expect("transform preserves simplicity")
}

fn no_approx(g: &SGraph) -> Result<()> {
    if g.any_approximate() {
        Err(Error::ApproximateSet)
    } else {
        Ok(())
    }
}

/// Edge extension at `v` along `S_v = T1 ⊕ T2`: `v` keeps its in-edges and
/// gets the single out-edge `v -> v'`; `v'` takes over the out-edges of `v`.
pub fn edge_extend(g: &SGraph, v: &str, t1: NSet, t2: NSet) -> Result<(SGraph, TransformRecord)> {
    no_approx(g)?;
    let site = g.require(v)?;
    let sv = g.set(site);
    let horizon = NSet::direct_sum_bound(&t1, &t2, sv);
    if NSet::direct_sum_check(&t1, &t2, sv, horizon) != Tri::True {
        return Err(Error::Precondition(format!(
            "{t1} ⊕ {t2} is not a direct-sum decomposition of {sv}"
        )));
    }
    let conjugacy = if t1.is_singleton() || t2.is_singleton() || !sv.is_infinite() {
        Conjugacy::Yes
    } else {
        Conjugacy::Unknown
    };
    let new = g.len();
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(a, b)| if a == site { (new, b) } else { (a, b) })
        .collect();
    edges.push((site, new));
    let name = fresh_name(g, v);
    let out = rebuild(g, site, t1.clone(), &name, t2.clone(), &edges);
    let record = TransformRecord {
        kind: TransformKind::EdgeExtend,
        site: v.to_string(),
        params: TransformParams::Decomposition { t1, t2 },
        conjugacy,
        new_vertex: name,
    };
    Ok((out, record))
}

fn bipartition(
    g: &SGraph,
    v: &str,
    side: &[usize],
    e1: &[&str],
    e2: &[&str],
) -> Result<(Vec<usize>, Vec<usize>)> {
    if e1.is_empty() || e2.is_empty() {
        return Err(Error::Precondition(
            "both sides of the partition must be nonempty".into(),
        ));
    }
    let idx = |names: &[&str]| {
        names
            .iter()
            .map(|n| g.require(n))
            .collect::<Result<Vec<usize>>>()
    };
    let (a, b) = (idx(e1)?, idx(e2)?);
    let mut all: Vec<usize> = a.iter().chain(&b).copied().collect();
    all.sort_unstable();
    let len = all.len();
    all.dedup();
    if all.len() != len || all != side {
        return Err(Error::Precondition(format!(
            "[{e1:?}, {e2:?}] is not a bipartition of the neighbours of {v:?}"
        )));
    }
    Ok((a, b))
}

/// Out-splitting at `v`: `v` keeps the out-edges to `e1`, the copy `v'`
/// gets those to `e2`, and every in-neighbour of `v` points to both.
pub fn out_split(
    g: &SGraph,
    v: &str,
    e1: &[&str],
    e2: &[&str],
) -> Result<(SGraph, TransformRecord)> {
    no_approx(g)?;
    let site = g.require(v)?;
    let (_, b) = bipartition(g, v, g.successors(site), e1, e2)?;
    let new = g.len();
    let mut edges = Vec::new();
    for (x, y) in g.edges() {
        if x == site {
            edges.push(if b.contains(&y) { (new, y) } else { (site, y) });
        } else {
            edges.push((x, y));
            if y == site {
                edges.push((x, new));
            }
        }
    }
    Ok(split_result(
        g,
        site,
        v,
        &edges,
        TransformKind::OutSplit,
        e1,
        e2,
    ))
}

/// In-splitting at `v`: in-neighbours in `e1` keep pointing at `v`, those
/// in `e2` point at `v'`, and both copies keep every out-edge.
pub fn in_split(
    g: &SGraph,
    v: &str,
    e1: &[&str],
    e2: &[&str],
) -> Result<(SGraph, TransformRecord)> {
    no_approx(g)?;
    let site = g.require(v)?;
    let (_, b) = bipartition(g, v, g.predecessors(site), e1, e2)?;
    let new = g.len();
    let mut edges = Vec::new();
    for (x, y) in g.edges() {
        if y == site {
            edges.push(if b.contains(&x) { (x, new) } else { (x, site) });
        } else {
            edges.push((x, y));
            if x == site {
                edges.push((new, y));
            }
        }
    }
    Ok(split_result(
        g,
        site,
        v,
        &edges,
        TransformKind::InSplit,
        e1,
        e2,
    ))
}

fn split_result(
    g: &SGraph,
    site: usize,
    v: &str,
    edges: &[(usize, usize)],
    kind: TransformKind,
    e1: &[&str],
    e2: &[&str],
) -> (SGraph, TransformRecord) {
    let sv = g.set(site).clone();
    let conjugacy = if sv.is_infinite() {
        Conjugacy::Unknown
    } else {
        Conjugacy::Yes
    };
    let name = fresh_name(g, v);
    let out = rebuild(g, site, sv.clone(), &name, sv, edges);
    let owned = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
    let record = TransformRecord {
        kind,
        site: v.to_string(),
        params: TransformParams::Partition {
            e1: owned(e1),
            e2: owned(e2),
        },
        conjugacy,
        new_vertex: name,
    };
    (out, record)
}

/// Vertex cloning along `S_v = S1 ⊔ S2`: `v'` copies every edge of `v`.
pub fn vertex_clone(g: &SGraph, v: &str, s1: NSet, s2: NSet) -> Result<(SGraph, TransformRecord)> {
    no_approx(g)?;
    let site = g.require(v)?;
    if s1.is_partition_of(&s2, g.set(site)) != Tri::True {
        return Err(Error::Precondition(format!(
            "{s1} ⊔ {s2} is not a partition of {}",
            g.set(site)
        )));
    }
    let conjugacy = if s1.is_infinite() && s2.is_infinite() {
        Conjugacy::Unknown
    } else {
        Conjugacy::Yes
    };
    let new = g.len();
    let mut edges = Vec::new();
    for (x, y) in g.edges() {
        edges.push((x, y));
        if x == site {
            edges.push((new, y));
        }
        if y == site {
            edges.push((x, new));
        }
    }
    let name = fresh_name(g, v);
    let out = rebuild(g, site, s1.clone(), &name, s2.clone(), &edges);
    let record = TransformRecord {
        kind: TransformKind::Clone,
        site: v.to_string(),
        params: TransformParams::Split { s1, s2 },
        conjugacy,
        new_vertex: name,
    };
    Ok((out, record))
}

/// `{min S} ⊔ (S ∖ {min S})`; `None` for a singleton.
fn split_off_min(s: &NSet) -> Option<(NSet, NSet)> {
    let m = s.min();
    let rest = match s.tail() {
        None if s.head().len() < 2 => return None,
        None => NSet::finite(s.head()[1..].iter().copied()).ok()?,
        Some(t) if !s.head().is_empty() => NSet::with_tail(
            s.head()[1..].to_vec(),
            t.offset,
            t.period,
            t.residues.clone(),
        )
        .ok()?,
        Some(t) => {
            // The minimum is the first tail element: spell out one period
            // without it, then let the pattern repeat.
            let prefix: Vec<bool> = (m..m + t.period).map(|n| n != m && s.contains(n)).collect();
            let pattern: Vec<bool> = (m..m + t.period).map(|n| s.contains(n)).collect();
            NSet::from_indicator(m, &prefix, &pattern).ok()?
        }
    };
    Some((NSet::singleton(m).ok()?, rest))
}

/// A graph on `q` vertices whose shift is conjugate to that of `g`, built
/// one conjugacy at a time: clone an infinite set off its minimum; else
/// out-split a vertex with two out-neighbours; else clone a non-singleton
/// set; else edge-extend a singleton `{s}` as `{1} ⊕ {s-1}`. A directed
/// cycle of singletons whose elements sum to less than `q` is an
/// obstruction: no conjugate shift on `q` letters exists.
pub fn lift(g: &SGraph, q: usize) -> Result<(SGraph, Vec<TransformRecord>)> {
    no_approx(g)?;
    if !g.is_irreducible() {
        return Err(Error::Precondition(
            "lift needs an irreducible graph".into(),
        ));
    }
    if g.len() > q {
        return Err(Error::Precondition(format!(
            "graph already has {} > {q} vertices",
            g.len()
        )));
    }
    let mut cur = g.clone();
    let mut steps = Vec::new();
    while cur.len() < q {
        let (next, rec) = lift_step(&cur, q)?;
        cur = next;
        steps.push(rec);
    }
    Ok((cur, steps))
}

fn lift_step(g: &SGraph, q: usize) -> Result<(SGraph, TransformRecord)> {
    if let Some(i) = (0..g.len()).find(|&i| g.set(i).is_infinite()) {
        let (m, rest) = split_off_min(g.set(i)).expect("infinite sets split");
        return vertex_clone(g, g.name(i), rest, m);
    }
    if !g.is_directed_cycle() {
        let i = (0..g.len())
            .find(|&i| g.successors(i).len() >= 2)
            .ok_or_else(|| {
                Error::Internal("irreducible non-cycle without a branching vertex".into())
            })?;
        let outs: Vec<&str> = g.successors(i).iter().map(|&j| g.name(j)).collect();
        return out_split(g, g.name(i), &outs[..1], &outs[1..]);
    }
    if let Some(i) = (0..g.len()).find(|&i| !g.set(i).is_singleton()) {
        let (m, rest) = split_off_min(g.set(i)).expect("non-singleton finite sets split");
        return vertex_clone(g, g.name(i), m, rest);
    }
    let total: u64 = g.sets().map(NSet::min).sum();
    if total < q as u64 {
        return Err(Error::Obstruction(format!(
            "directed cycle of singletons with element sum {total} < {q}: no conjugate shift on {q} letters"
        )));
    }
    let i = (0..g.len())
        .find(|&i| g.set(i).min() > 1)
        .ok_or_else(|| Error::Internal("singleton cycle with sum >= q but all sets {1}".into()))?;
    let s = g.set(i).min();
    edge_extend(g, g.name(i), NSet::singleton(1)?, NSet::singleton(s - 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_ordered_limited, build_s_gap};

    fn set(s: &str) -> NSet {
        s.parse().unwrap()
    }

    fn names(g: &SGraph) -> Vec<(String, String)> {
        let mut e: Vec<(String, String)> = g
            .edges()
            .map(|(a, b)| (g.name(a).to_string(), g.name(b).to_string()))
            .collect();
        e.sort();
        e
    }

    fn pairs(list: &[(&str, &str)]) -> Vec<(String, String)> {
        let mut e: Vec<(String, String)> = list
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        e.sort();
        e
    }

    fn six() -> SGraph {
        let vs = ["a", "b", "c", "d", "e", "f"]
            .iter()
            .map(|n| (n.to_string(), set("1")))
            .collect();
        SGraph::from_named(
            vs,
            &[("a", "c"), ("b", "c"), ("c", "d"), ("c", "e"), ("c", "f")],
        )
        .unwrap()
    }

    #[test]
    fn edge_extension_figure() {
        let vs = (1..=6)
            .map(|i| (i.to_string(), if i == 3 { set("3+1k") } else { set("1") }))
            .collect();
        let g = SGraph::from_named(
            vs,
            &[("1", "3"), ("2", "3"), ("3", "4"), ("3", "5"), ("3", "6")],
        )
        .unwrap();
        let (h, rec) = edge_extend(&g, "3", set("1,2"), set("2+2k")).unwrap();
        assert_eq!(h.len(), 7);
        assert_eq!(rec.new_vertex, "3'");
        assert_eq!(
            names(&h),
            pairs(&[
                ("1", "3"),
                ("2", "3"),
                ("3", "3'"),
                ("3'", "4"),
                ("3'", "5"),
                ("3'", "6")
            ])
        );
        assert_eq!(h.set(2), &set("1,2"));
        assert_eq!(rec.conjugacy, Conjugacy::Unknown);
    }

    #[test]
    fn edge_extension_singleton_is_conjugacy() {
        let g = build_ordered_limited(vec![set("2"), set("1")]).unwrap();
        let (_, rec) = edge_extend(&g, "1", set("1"), set("1")).unwrap();
        assert_eq!(rec.conjugacy, Conjugacy::Yes);
        assert!(edge_extend(&g, "1", set("1"), set("2")).is_err());
    }

    #[test]
    fn out_split_figure() {
        let (h, rec) = out_split(&six(), "c", &["d", "e"], &["f"]).unwrap();
        assert_eq!(
            names(&h),
            pairs(&[
                ("a", "c"),
                ("a", "c'"),
                ("b", "c"),
                ("b", "c'"),
                ("c", "d"),
                ("c", "e"),
                ("c'", "f")
            ])
        );
        assert_eq!(rec.conjugacy, Conjugacy::Yes);
        assert!(out_split(&six(), "c", &["d", "e", "f"], &[]).is_err());
        assert!(out_split(&six(), "c", &["d"], &["f"]).is_err());
    }

    #[test]
    fn in_split_figure() {
        let (h, _) = in_split(&six(), "c", &["a"], &["b"]).unwrap();
        assert_eq!(
            names(&h),
            pairs(&[
                ("a", "c"),
                ("b", "c'"),
                ("c", "d"),
                ("c", "e"),
                ("c", "f"),
                ("c'", "d"),
                ("c'", "e"),
                ("c'", "f")
            ])
        );
    }

    #[test]
    fn clone_figure() {
        let vs = ["a", "b", "c", "d"]
            .iter()
            .map(|n| (n.to_string(), if *n == "c" { set("1,2") } else { set("1") }))
            .collect();
        let g = SGraph::from_named(
            vs,
            &[("a", "b"), ("a", "c"), ("b", "c"), ("c", "d"), ("d", "a")],
        )
        .unwrap();
        let (h, rec) = vertex_clone(&g, "c", set("1"), set("2")).unwrap();
        assert_eq!(
            names(&h),
            pairs(&[
                ("a", "b"),
                ("a", "c"),
                ("a", "c'"),
                ("b", "c"),
                ("b", "c'"),
                ("c", "d"),
                ("c'", "d"),
                ("d", "a")
            ])
        );
        assert_eq!(rec.conjugacy, Conjugacy::Yes);
        assert!(vertex_clone(&g, "c", set("1"), set("1,2")).is_err());
        let gm = build_s_gap(&"N".parse().unwrap()).unwrap();
        let (_, rec) = vertex_clone(&gm, "0", set("1+2k"), set("2+2k")).unwrap();
        assert_eq!(rec.conjugacy, Conjugacy::Unknown);
    }

    #[test]
    fn naming_counter() {
        let g = build_ordered_limited(vec![set("1,2,3"), set("1")]).unwrap();
        let (h, _) = vertex_clone(&g, "1", set("1"), set("2,3")).unwrap();
        let (_, rec) = vertex_clone(&h, "1'", set("2"), set("3")).unwrap();
        assert_eq!(rec.new_vertex, "1''");
        let g2 = SGraph::from_named(
            vec![
                ("v".into(), set("1,2")),
                ("v'".into(), set("1")),
                ("w".into(), set("1")),
            ],
            &[("v", "w"), ("w", "v"), ("v'", "w"), ("w", "v'")],
        )
        .unwrap();
        let (_, rec) = vertex_clone(&g2, "v", set("1"), set("2")).unwrap();
        assert_eq!(rec.new_vertex, "v'2");
    }

    #[test]
    fn lift_examples() {
        let gm = build_s_gap(&"N".parse().unwrap()).unwrap();
        let (h, steps) = lift(&gm, 3).unwrap();
        assert_eq!(h.len(), 3);
        assert_eq!(steps[0].kind, TransformKind::Clone);
        assert!(steps.iter().all(|s| s.conjugacy == Conjugacy::Yes));

        let triv = build_ordered_limited(vec![set("1"), set("1")]).unwrap();
        assert!(matches!(lift(&triv, 3), Err(Error::Obstruction(_))));

        let c = build_ordered_limited(vec![set("2"), set("3")]).unwrap();
        let (h, _) = lift(&c, 5).unwrap();
        assert!(h.is_directed_cycle());
        assert!(h.sets().all(|s| *s == set("1")));
    }

    #[test]
    fn min_splitting() {
        for lit in ["N", "2+2k", "1,3,5+3k", "3,4,6+1k", "1,2"] {
            let s = set(lit);
            let (m, rest) = split_off_min(&s).unwrap();
            assert_eq!(m.is_partition_of(&rest, &s), Tri::True, "{lit}");
        }
        assert!(split_off_min(&set("4")).is_none());
    }
}
