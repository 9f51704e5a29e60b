//! Seeded random set-equipped graphs for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{SGraph, Vertex};
use crate::nset::NSet;

/// A random set: finite, singleton, arithmetic progression, or a finite
/// head followed by a periodic tail.
pub fn random_set(rng: &mut impl Rng) -> NSet {
    match rng.gen_range(0..4) {
        0 => {
            let k = rng.gen_range(1..=3);
            let elems: Vec<u64> = (0..k).map(|_| rng.gen_range(1..=6)).collect();
            NSet::finite(elems).expect("nonempty positive elements")
        }
        1 => NSet::singleton(rng.gen_range(1..=4)).expect("positive"),
        2 => NSet::arithmetic(rng.gen_range(1..=3), rng.gen_range(1..=3))
            .expect("positive start and step"),
        _ => {
            let head: Vec<u64> = (0..rng.gen_range(0..=2))
                .map(|_| rng.gen_range(1..=4))
                .collect();
            let period = rng.gen_range(1..=4);
            let residues: Vec<u64> = (0..period).filter(|_| rng.gen_bool(0.5)).collect();
            let residues = if residues.is_empty() {
                vec![0]
            } else {
                residues
            };
            NSet::with_tail(head, rng.gen_range(3..=6), period, residues).expect("valid tail")
        }
    }
}

/// A strongly connected graph on exactly `n ≥ 2` vertices named "a", "b", …:
/// a random Hamiltonian cycle plus extra edges with probability 0.3.
pub fn random_graph_with(seed: u64, n: usize) -> SGraph {
    assert!((2..=26).contains(&n), "vertex count must be in 2..=26");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    for u in 0..n {
        for v in 0..n {
            if u != v && !edges.contains(&(u, v)) && rng.gen_bool(0.3) {
                edges.push((u, v));
            }
        }
    }
    let vertices = (0..n)
        .map(|i| Vertex {
            name: ((b'a' + i as u8) as char).to_string(),
            set: random_set(&mut rng),
        })
        .collect();
    SGraph::new(vertices, &edges).expect("sampled graph is valid")
}

/// Like [`random_graph_with`] with the vertex count drawn from `2..=max_vertices`.
pub fn random_graph(seed: u64, max_vertices: usize) -> SGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9E37_79B9_7F4A_7C15);
    random_graph_with(seed, rng.gen_range(2..=max_vertices.max(2)))
}
