//! The set-equipped graph, its file format and the graph algorithms the
//! analytic modules share.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nset::{GapSet, NSet};

/// Default bound on the number of simple cycles (and of disjoint cycle
/// families) before enumeration gives up.
pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub name: String,
    pub set: NSet,
}

/// A finite simple digraph with a nonempty subset of ℕ on every vertex.
///
/// Vertex order is the document order and fixes every matrix index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SGraph {
    vertices: Vec<Vertex>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(String, String)>,
}

/// A simple cycle as vertex indices, smallest index first.
pub type Cycle = Vec<usize>;

impl SGraph {
    /// Build from vertices and index pairs. Rejects loops, duplicate
    /// names, duplicate edges and out-of-range indices.
    pub fn new(vertices: Vec<Vertex>, edges: &[(usize, usize)]) -> Result<SGraph> {
        let n = vertices.len();
        let mut seen = HashMap::new();
        for v in &vertices {
            if seen.insert(v.name.as_str(), ()).is_some() {
                return Err(Error::DuplicateVertex(v.name.clone()));
            }
        }
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Schema(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::Loop(vertices[u].name.clone()));
            }
            if !set.insert((u, v)) {
                return Err(Error::DuplicateEdge(
                    vertices[u].name.clone(),
                    vertices[v].name.clone(),
                ));
            }
        }
        for &(u, v) in &set {
            succ[u].push(v);
            pred[v].push(u);
        }
        for p in &mut pred {
            p.sort_unstable();
        }
        Ok(SGraph {
            vertices,
            succ,
            pred,
        })
    }

    /// Build from names; edges refer to names.
    pub fn from_named(vertices: Vec<(String, NSet)>, edges: &[(&str, &str)]) -> Result<SGraph> {
        let vertices: Vec<Vertex> = vertices
            .into_iter()
            .map(|(name, set)| Vertex { name, set })
            .collect();
        let index: HashMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.name.as_str(), i))
            .collect();
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownVertex(s.to_string()))
        };
        let idx: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<_>>()?;
        SGraph::new(vertices, &idx)
    }

    pub fn from_json(text: &str) -> Result<SGraph> {
        let raw: RawGraph = serde_json::from_str(text).map_err(|e| classify_json_error(&e))?;
        let names: Vec<(String, NSet)> =
            raw.vertices.into_iter().map(|v| (v.name, v.set)).collect();
        let edges: Vec<(&str, &str)> = raw
            .edges
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        SGraph::from_named(names, &edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("graph serialization cannot fail")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_raw()).expect("graph serialization cannot fail")
    }

    fn to_raw(&self) -> RawGraph {
        RawGraph {
            vertices: self.vertices.clone(),
            edges: self
                .edges()
                .map(|(u, v)| (self.vertices[u].name.clone(), self.vertices[v].name.clone()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vertices[i].name
    }

    pub fn set(&self, i: usize) -> &NSet {
        &self.vertices[i].set
    }

    pub fn sets(&self) -> impl Iterator<Item = &NSet> {
        self.vertices.iter().map(|v| &v.set)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    /// Index of `name`, or an `UnknownVertex` error.
    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    pub fn predecessors(&self, i: usize) -> &[usize] {
        &self.pred[i]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.succ[u].binary_search(&v).is_ok()
    }

    /// Edges sorted by (source, target) index.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn any_approximate(&self) -> bool {
        self.sets().any(NSet::is_approximate)
    }

    /// Same graph with every set replaced.
    pub fn with_sets(&self, sets: Vec<NSet>) -> SGraph {
        assert_eq!(sets.len(), self.len());
        let vertices = self
            .vertices
            .iter()
            .zip(sets)
            .map(|(v, set)| Vertex {
                name: v.name.clone(),
                set,
            })
            .collect();
        SGraph {
            vertices,
            succ: self.succ.clone(),
            pred: self.pred.clone(),
        }
    }

    /// Same sets and edges by index; names may differ.
    pub fn same_structure(&self, other: &SGraph) -> bool {
        self.len() == other.len() && self.succ == other.succ && self.sets().eq(other.sets())
    }

    /// Subgraph induced by the vertices with `keep[i]`, in the original order.
    pub fn induced(&self, keep: &[bool]) -> SGraph {
        let mut map = vec![usize::MAX; self.len()];
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if keep[i] {
                map[i] = vertices.len();
                vertices.push(v.clone());
            }
        }
        let edges: Vec<(usize, usize)> = self
            .edges()
            .filter(|&(u, v)| keep[u] && keep[v])
            .map(|(u, v)| (map[u], map[v]))
            .collect();
        SGraph::new(vertices, &edges).expect("induced subgraph of a valid graph is valid")
    }

    /// Repeatedly drop vertices with no incoming or no outgoing edge.
    pub fn essentialize(&self) -> SGraph {
        let n = self.len();
        let mut alive = vec![true; n];
        let mut indeg: Vec<usize> = self.pred.iter().map(Vec::len).collect();
        let mut outdeg: Vec<usize> = self.succ.iter().map(Vec::len).collect();
        let mut stack: Vec<usize> = (0..n)
            .filter(|&i| indeg[i] == 0 || outdeg[i] == 0)
            .collect();
        while let Some(i) = stack.pop() {
            if !alive[i] {
                continue;
            }
            alive[i] = false;
            for &v in &self.succ[i] {
                if alive[v] {
                    indeg[v] -= 1;
                    if indeg[v] == 0 {
                        stack.push(v);
                    }
                }
            }
            for &u in &self.pred[i] {
                if alive[u] {
                    outdeg[u] -= 1;
                    if outdeg[u] == 0 {
                        stack.push(u);
                    }
                }
            }
        }
        self.induced(&alive)
    }

    pub fn is_essential(&self) -> bool {
        (0..self.len()).all(|i| !self.succ[i].is_empty() && !self.pred[i].is_empty())
    }

    /// Strongly connected components in Tarjan's (reverse topological) order,
    /// each sorted ascending.
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        tarjan(self.len(), |u| &self.succ[u])
    }

    pub fn is_irreducible(&self) -> bool {
        !self.is_empty() && self.sccs().len() == 1
    }

    /// Components that carry a cycle (size ≥ 2, since there are no loops).
    pub fn nontrivial_sccs(&self) -> Vec<Vec<usize>> {
        self.sccs().into_iter().filter(|c| c.len() >= 2).collect()
    }

    /// Whether the graph is one directed cycle through all its vertices.
    pub fn is_directed_cycle(&self) -> bool {
        self.len() >= 2
            && self.succ.iter().all(|s| s.len() == 1)
            && self.pred.iter().all(|p| p.len() == 1)
            && self.is_irreducible()
    }

    /// All simple cycles, rotation-canonical and sorted lexicographically.
    pub fn simple_cycles(&self, cap: usize) -> Result<Vec<Cycle>> {
        let mut out = Vec::new();
        johnson(self, cap, &mut out)?;
        out.sort();
        Ok(out)
    }

    /// Every nonempty family of pairwise vertex-disjoint simple cycles, as
    /// sorted index lists into `cycles`.
    pub fn disjoint_cycle_families(&self, cycles: &[Cycle], cap: usize) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        for_each_disjoint_family(self.len(), cycles, cap, |fam| out.push(fam.to_vec()))?;
        Ok(out)
    }
}

fn classify_json_error(e: &serde_json::Error) -> Error {
    let msg = e.to_string();
    Error::Schema(msg)
}

/// Tarjan's algorithm without recursion.
pub(crate) fn tarjan<'a, F>(n: usize, succ: F) -> Vec<Vec<usize>>
where
    F: Fn(usize) -> &'a [usize],
{
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&(v, pos)) = call.last() {
            let out = succ(v);
            if pos < out.len() {
                let w = out[pos];
                call.last_mut().expect("nonempty call stack").1 += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

/// Johnson's circuit enumeration. Each cycle is reported starting from its
/// least vertex, which makes the output rotation-canonical.
fn johnson(g: &SGraph, cap: usize, out: &mut Vec<Cycle>) -> Result<()> {
    let n = g.len();
    for s in 0..n {
        // Component of s in the subgraph induced by {s, s+1, ...}.
        let sub_succ: Vec<Vec<usize>> = (0..n)
            .map(|u| {
                if u < s {
                    Vec::new()
                } else {
                    g.succ[u].iter().copied().filter(|&v| v >= s).collect()
                }
            })
            .collect();
        let comps = tarjan(n, |u| &sub_succ[u]);
        let comp = comps
            .into_iter()
            .find(|c| c.contains(&s))
            .expect("s lies in some component");
        if comp.len() < 2 {
            continue;
        }
        let mut in_comp = vec![false; n];
        for &c in &comp {
            in_comp[c] = true;
        }
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|u| {
                if in_comp[u] {
                    sub_succ[u]
                        .iter()
                        .copied()
                        .filter(|&v| in_comp[v])
                        .collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        let mut state = Circuit {
            adj: &adj,
            blocked: vec![false; n],
            bmap: vec![Vec::new(); n],
            path: Vec::new(),
            start: s,
            cap,
        };
        state.run(s, out)?;
    }
    Ok(())
}

struct Circuit<'a> {
    adj: &'a [Vec<usize>],
    blocked: Vec<bool>,
    bmap: Vec<Vec<usize>>,
    path: Vec<usize>,
    start: usize,
    cap: usize,
}

impl Circuit<'_> {
    fn run(&mut self, v: usize, out: &mut Vec<Cycle>) -> Result<bool> {
        let mut found = false;
        self.path.push(v);
        self.blocked[v] = true;
        for &w in &self.adj[v] {
            if w == self.start {
                if out.len() >= self.cap {
                    return Err(Error::CapExceeded {
                        what: "simple cycles",
                        cap: self.cap,
                    });
                }
                out.push(self.path.clone());
                found = true;
            } else if !self.blocked[w] && self.run(w, out)? {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for &w in &self.adj[v] {
                if !self.bmap[w].contains(&v) {
                    self.bmap[w].push(v);
                }
            }
        }
        self.path.pop();
        Ok(found)
    }

    fn unblock(&mut self, u: usize) {
        let mut work = vec![u];
        while let Some(x) = work.pop() {
            if self.blocked[x] {
                self.blocked[x] = false;
                work.append(&mut self.bmap[x]);
            }
        }
    }
}

/// Call `f` once per nonempty family of vertex-disjoint cycles (indices
/// into `cycles`, increasing).
pub(crate) fn for_each_disjoint_family<F: FnMut(&[usize])>(
    n: usize,
    cycles: &[Cycle],
    cap: usize,
    mut f: F,
) -> Result<usize> {
    fn go<F: FnMut(&[usize])>(
        from: usize,
        cycles: &[Cycle],
        used: &mut [bool],
        chosen: &mut Vec<usize>,
        count: &mut usize,
        cap: usize,
        f: &mut F,
    ) -> Result<()> {
        for i in from..cycles.len() {
            if cycles[i].iter().any(|&v| used[v]) {
                continue;
            }
            *count += 1;
            if *count > cap {
                return Err(Error::CapExceeded {
                    what: "disjoint cycle families",
                    cap,
                });
            }
            for &v in &cycles[i] {
                used[v] = true;
            }
            chosen.push(i);
            f(chosen);
            go(i + 1, cycles, used, chosen, count, cap, f)?;
            chosen.pop();
            for &v in &cycles[i] {
                used[v] = false;
            }
        }
        Ok(())
    }
    let mut used = vec![false; n];
    let mut count = 0;
    go(
        0,
        cycles,
        &mut used,
        &mut Vec::new(),
        &mut count,
        cap,
        &mut f,
    )?;
    Ok(count)
}

fn numbered(sets: Vec<NSet>) -> Vec<Vertex> {
    sets.into_iter()
        .enumerate()
        .map(|(i, set)| Vertex {
            name: (i + 1).to_string(),
            set,
        })
        .collect()
}

/// The S-gap shift on {0, 1}: runs of 0 between consecutive 1s have lengths in S.
///
/// Vertices are named "0" and "1". For 0 ∉ S the 0-runs come from S and
/// the 1-runs are single; for 0 ∈ S consecutive 1s are allowed, so the
/// 1-runs range over ℕ and the 0-runs over S ∖ {0}.
pub fn build_s_gap(s: &GapSet) -> Result<SGraph> {
    let zero_runs = s
        .positive
        .clone()
        .ok_or_else(|| Error::InvalidSet("S = {0} leaves no 0-runs".into()))?;
    let one_runs = if s.contains_zero {
        NSet::naturals()
    } else {
        NSet::singleton(1)?
    };
    SGraph::from_named(
        vec![("0".into(), zero_runs), ("1".into(), one_runs)],
        &[("0", "1"), ("1", "0")],
    )
}

/// The (S, S')-gap shift: 0-runs from `s`, 1-runs from `s_prime`.
pub fn build_gap_pair(s: NSet, s_prime: NSet) -> Result<SGraph> {
    SGraph::from_named(
        vec![("0".into(), s), ("1".into(), s_prime)],
        &[("0", "1"), ("1", "0")],
    )
}

/// Ordered limited shift: the directed cycle 1 → 2 → ... → n → 1.
pub fn build_ordered_limited(sets: Vec<NSet>) -> Result<SGraph> {
    let n = sets.len();
    if n < 2 {
        return Err(Error::TooFewSets(n));
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    SGraph::new(numbered(sets), &edges)
}

/// Unordered limited shift: the complete digraph without loops.
pub fn build_unordered_limited(sets: Vec<NSet>) -> Result<SGraph> {
    let n = sets.len();
    if n < 2 {
        return Err(Error::TooFewSets(n));
    }
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    SGraph::new(numbered(sets), &edges)
}

impl Serialize for SGraph {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.to_raw().serialize(serializer)
    }
}
