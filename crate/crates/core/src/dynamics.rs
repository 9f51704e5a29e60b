//! Decidable dynamical properties and the specification constants.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SGraph, DEFAULT_CYCLE_CAP};
use crate::nset::{Bound, NSet};
use crate::tri::Tri;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub is_sft: Tri,
    pub is_sofic: Tri,
    pub is_mixing: Tri,
    pub weak_spec: Tri,
    pub spec: Tri,
    pub is_trivial: Tri,
    /// gcd of all cycle sums; `None` when some set is approximate.
    pub cycle_gcd: Option<u64>,
    pub gap_bound_d: Bound,
    pub witnesses: BTreeMap<String, String>,
}

fn essential(g: &SGraph) -> Result<SGraph> {
    let e = g.essentialize();
    if e.is_empty() {
        Err(Error::EmptyShift)
    } else {
        Ok(e)
    }
}

/// Every set finite or cofinite.
pub fn is_sft(g: &SGraph) -> Result<Tri> {
    Ok(sft_witness(&essential(g)?).0)
}

fn sft_witness(g: &SGraph) -> (Tri, String) {
    let mut verdict = Tri::True;
    for (i, s) in g.sets().enumerate() {
        let st = s.stats();
        let v = st.is_finite.or(st.is_cofinite);
        if v.is_false() {
            return (
                Tri::False,
                format!("set of {:?} is neither finite nor cofinite", g.name(i)),
            );
        }
        verdict = verdict.and(v);
    }
    let why = if verdict.is_true() {
        "every set is finite or cofinite".to_string()
    } else {
        "approximate sets: finiteness of the tails unknown".to_string()
    };
    (verdict, why)
}

/// Every set has eventually periodic gaps, which holds for every exact set.
pub fn is_sofic(g: &SGraph) -> Result<Tri> {
    let g = essential(g)?;
    Ok(Tri::all(
        g.sets().map(|s| s.stats().eventually_periodic_gaps),
    ))
}

/// gcd of `{Σ_{i in C} s_i : C a cycle, s_i in S_i}`. Per cycle this is
/// `gcd(Σ min S_i, diff_gcd(S_i) for i in C)`.
pub fn cycle_sum_gcd(g: &SGraph) -> Result<u64> {
    let g = essential(g)?;
    if g.any_approximate() {
        return Err(Error::ApproximateSet);
    }
    Ok(known_cycle_gcd(&g)?.0)
}

/// gcd over the known elements, plus a cycle attaining it for witnesses.
fn known_cycle_gcd(g: &SGraph) -> Result<(u64, Vec<usize>)> {
    let mut total = 0u64;
    let mut first = Vec::new();
    for c in g.simple_cycles(DEFAULT_CYCLE_CAP)? {
        let mut gc = c.iter().map(|&v| g.set(v).min()).sum::<u64>();
        for &v in &c {
            gc = gc.gcd(&g.set(v).diff_gcd());
        }
        let next = total.gcd(&gc);
        if next != total || first.is_empty() {
            first = c;
        }
        total = next;
    }
    Ok((total, first))
}

/// Irreducible and the cycle-sum gcd is 1.
pub fn is_mixing(g: &SGraph) -> Result<Tri> {
    Ok(mixing_witness(&essential(g)?)?.0)
}

fn mixing_witness(g: &SGraph) -> Result<(Tri, String)> {
    if !g.is_irreducible() {
        return Ok((
            Tri::False,
            format!(
                "not irreducible: {} strongly connected components",
                g.sccs().len()
            ),
        ));
    }
    let (gcd, cyc) = known_cycle_gcd(g)?;
    let names: Vec<&str> = cyc.iter().map(|&v| g.name(v)).collect();
    if gcd == 1 {
        // Adding elements can only shrink a gcd, so 1 on the known part is final.
        Ok((Tri::True, "irreducible and cycle-sum gcd is 1".into()))
    } else if g.any_approximate() {
        Ok((
            Tri::Unknown,
            format!("cycle-sum gcd of the known elements is {gcd}"),
        ))
    } else {
        Ok((
            Tri::False,
            format!("cycle-sum gcd is {gcd} (cycle {names:?})"),
        ))
    }
}

/// Irreducible and every set has bounded gaps.
pub fn has_weak_spec(g: &SGraph) -> Result<Tri> {
    Ok(weak_spec_witness(&essential(g)?).0)
}

fn weak_spec_witness(g: &SGraph) -> (Tri, String) {
    if !g.is_irreducible() {
        return (Tri::False, "not irreducible".into());
    }
    let mut verdict = Tri::True;
    for (i, s) in g.sets().enumerate() {
        match s.gap_sup() {
            Bound::Finite(_) => {}
            Bound::Infinite => {
                return (
                    Tri::False,
                    format!("set of {:?} has unbounded gaps", g.name(i)),
                )
            }
            Bound::Unknown => verdict = Tri::Unknown,
        }
    }
    let why = if verdict.is_true() {
        "irreducible with bounded gaps everywhere".into()
    } else {
        "approximate sets: gap bound undecidable".into()
    };
    (verdict, why)
}

/// Mixing and weak specification.
pub fn has_spec(g: &SGraph) -> Result<Tri> {
    let e = essential(g)?;
    Ok(mixing_witness(&e)?.0.and(weak_spec_witness(&e).0))
}

/// Zero entropy: every irreducible component is a directed cycle with
/// singleton sets.
pub fn is_trivial(g: &SGraph) -> Result<Tri> {
    Ok(trivial_witness(&essential(g)?).0)
}

fn trivial_witness(g: &SGraph) -> (Tri, String) {
    let mut verdict = Tri::True;
    for comp in g.nontrivial_sccs() {
        for &v in &comp {
            let inside = g.successors(v).iter().filter(|w| comp.contains(w)).count();
            if inside != 1 {
                return (
                    Tri::False,
                    format!("component of {:?} is not a directed cycle", g.name(v)),
                );
            }
        }
        for &v in &comp {
            let s = g.set(v);
            if s.is_approximate() {
                if s.head().len() > 1 {
                    return (
                        Tri::False,
                        format!("set of {:?} has at least two elements", g.name(v)),
                    );
                }
                verdict = Tri::Unknown;
            } else if !s.is_singleton() {
                return (
                    Tri::False,
                    format!("set of {:?} is not a singleton", g.name(v)),
                );
            }
        }
    }
    let why = match verdict {
        Tri::True => "every component is a directed cycle of singletons".into(),
        _ => "approximate singleton sets".into(),
    };
    (verdict, why)
}

pub fn properties(g: &SGraph) -> Result<PropertyReport> {
    let e = essential(g)?;
    let mut witnesses = BTreeMap::new();
    let (is_sft, w) = sft_witness(&e);
    witnesses.insert("is_sft".into(), w);
    let is_sofic = Tri::all(e.sets().map(|s| s.stats().eventually_periodic_gaps));
    witnesses.insert(
        "is_sofic".into(),
        if is_sofic.is_true() {
            "every set is eventually periodic".into()
        } else {
            "approximate sets".into()
        },
    );
    let (is_mixing, w) = mixing_witness(&e)?;
    witnesses.insert("is_mixing".into(), w);
    let (weak_spec, w) = weak_spec_witness(&e);
    witnesses.insert("weak_spec".into(), w);
    let spec = is_mixing.and(weak_spec);
    witnesses.insert(
        "spec".into(),
        format!("mixing {is_mixing} and weak specification {weak_spec}"),
    );
    let (is_trivial, w) = trivial_witness(&e);
    witnesses.insert("is_trivial".into(), w);
    let cycle_gcd = if e.any_approximate() {
        None
    } else {
        Some(known_cycle_gcd(&e)?.0)
    };
    let gap_bound_d = e
        .sets()
        .map(NSet::gap_sup)
        .fold(Bound::Finite(0), |acc, b| match (acc, b) {
            (Bound::Unknown, _) | (_, Bound::Unknown) => Bound::Unknown,
            (Bound::Infinite, _) | (_, Bound::Infinite) => Bound::Infinite,
            (Bound::Finite(a), Bound::Finite(b)) => Bound::Finite(a.max(b)),
        });
    Ok(PropertyReport {
        is_sft,
        is_sofic,
        is_mixing,
        weak_spec,
        spec,
        is_trivial,
        cycle_gcd,
        gap_bound_d,
        witnesses,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecConstants {
    /// Largest gap over all sets.
    pub d: u64,
    /// Largest shortest connection cost `δ(u, v)`.
    pub t: u64,
    /// `max_u min(S_u ∖ {1, ..., m-1})` over the vertices where that set is nonempty.
    pub r: u64,
    pub notes: Vec<String>,
}

/// `δ(u, v)`: least total `min S_w` over interior vertices of a walk from
/// `u` to `v`; 0 when `(u, v)` is an edge.
pub fn connection_costs(g: &SGraph) -> Vec<Vec<u64>> {
    let n = g.len();
    let weight: Vec<u64> = g.sets().map(NSet::min).collect();
    (0..n)
        .map(|u| {
            // reach[y]: cheapest walk u -> ... -> y counting min S of every vertex after u.
            let mut reach = vec![u64::MAX; n];
            let mut heap = BinaryHeap::new();
            reach[u] = 0;
            heap.push(Reverse((0u64, u)));
            while let Some(Reverse((d, x))) = heap.pop() {
                if d > reach[x] {
                    continue;
                }
                for &y in g.successors(x) {
                    let nd = d + weight[y];
                    if nd < reach[y] {
                        reach[y] = nd;
                        heap.push(Reverse((nd, y)));
                    }
                }
            }
            (0..n)
                .map(|v| {
                    g.predecessors(v)
                        .iter()
                        .map(|&p| reach[p])
                        .min()
                        .unwrap_or(u64::MAX)
                })
                .collect()
        })
        .collect()
}

pub fn spec_constants(g: &SGraph, m: u64) -> Result<SpecConstants> {
    let g = essential(g)?;
    if !g.is_irreducible() {
        return Err(Error::Precondition(
            "specification constants need an irreducible graph".into(),
        ));
    }
    if g.any_approximate() {
        return Err(Error::ApproximateSet);
    }
    let mut d = 0;
    for (i, s) in g.sets().enumerate() {
        match s.gap_sup() {
            Bound::Finite(x) => d = d.max(x),
            _ => {
                return Err(Error::NotWeaklySpecified(format!(
                    "set of {:?} has unbounded gaps",
                    g.name(i)
                )))
            }
        }
    }
    let t = connection_costs(&g)
        .into_iter()
        .flatten()
        .max()
        .unwrap_or(0);
    let mut notes = Vec::new();
    let mut r = 0;
    for (i, s) in g.sets().enumerate() {
        match s.iter().find(|&x| x >= m) {
            Some(x) => r = r.max(x),
            None => notes.push(format!(
                "vertex {:?} skipped for r: its set lies inside [1, {}]",
                g.name(i),
                m.saturating_sub(1)
            )),
        }
    }
    Ok(SpecConstants { d, t, r, notes })
}
