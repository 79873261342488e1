//! Graph families, exhaustive enumeration up to isomorphism, and seeded
//! random instances.
//!
//! Random streams are ChaCha8 keyed by `(seed, stream)`: instance `i` of a
//! sweep always draws from stream `i`, so results do not depend on the order
//! in which instances run.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{brute_force_isomorphic, Graph, Vertex, VertexSet};

/// Independent random stream `stream` under `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid")
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least three vertices");
    Graph::from_edges(n, (0..n).map(|v| (v.min((v + 1) % n), v.max((v + 1) % n)))).expect("valid")
}

pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid")
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5));
    Graph::from_edges(
        10,
        outer
            .chain(spokes)
            .chain(inner)
            .map(|(u, v)| (u.min(v), u.max(v))),
    )
    .expect("valid")
}

/// Uniform random permutation of `0..n`.
pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<Vertex> {
    let mut p: Vec<Vertex> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// `G(n, p)`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.set_edge(u, v, true);
            }
        }
    }
    g
}

/// Uniformly random graph on `n` vertices with exactly `m` edges.
pub fn random_graph_with_edges<R: Rng>(rng: &mut R, n: usize, m: usize) -> Graph {
    let mut pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    assert!(m <= pairs.len());
    pairs.shuffle(rng);
    Graph::from_edges(n, pairs.into_iter().take(m)).expect("valid")
}

/// Each vertex joins the subset independently with probability one half.
pub fn random_subset<R: Rng>(rng: &mut R, n: usize) -> VertexSet {
    VertexSet::new((0..n).filter(|_| rng.gen_bool(0.5)))
}

/// Random labelled tree (attach each new vertex to a uniformly chosen earlier one).
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (rng.gen_range(0..v), v))).expect("valid")
}

/// Cheap isomorphism invariant used to bucket candidates before the
/// brute-force check.
fn invariant(g: &Graph) -> (usize, Vec<usize>) {
    (g.edge_count(), g.degree_sequence())
}

fn push_if_new(reps: &mut Vec<Graph>, keys: &mut Vec<(usize, Vec<usize>)>, g: Graph) {
    let key = invariant(&g);
    let known = reps
        .iter()
        .zip(keys.iter())
        .any(|(r, k)| *k == key && brute_force_isomorphic(r, &g).is_some());
    if !known {
        reps.push(g);
        keys.push(key);
    }
}

/// One representative of every isomorphism class of uncoloured graphs on
/// `n` vertices. Built by adding a vertex with every possible neighbourhood
/// to the classes on `n - 1` vertices.
///
/// Practical up to `n = 7`.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 8, "exhaustive enumeration is capped at 8 vertices");
    let mut reps = vec![Graph::new(0)];
    for size in 1..=n {
        let mut next = Vec::new();
        let mut keys = Vec::new();
        for base in &reps {
            for mask in 0u64..(1 << (size - 1)) {
                let mut g = Graph::new(size);
                for (u, v) in base.edges() {
                    g.set_edge(u, v, true);
                }
                for u in 0..size - 1 {
                    if (mask >> u) & 1 == 1 {
                        g.set_edge(u, size - 1, true);
                    }
                }
                push_if_new(&mut next, &mut keys, g);
            }
        }
        reps = next;
    }
    reps
}

/// One representative of every isomorphism class of trees on `n >= 1` vertices.
pub fn all_trees(n: usize) -> Vec<Graph> {
    assert!(n >= 1);
    let mut reps = vec![Graph::new(1)];
    for size in 2..=n {
        let mut next = Vec::new();
        let mut keys = Vec::new();
        for base in &reps {
            for attach in 0..size - 1 {
                let mut g = Graph::new(size);
                for (u, v) in base.edges() {
                    g.set_edge(u, v, true);
                }
                g.set_edge(attach, size - 1, true);
                push_if_new(&mut next, &mut keys, g);
            }
        }
        reps = next;
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::connected_components;

    #[test]
    fn class_counts_match_known_sequence() {
        // OEIS A000088
        let counts: Vec<usize> = (0..=5).map(|n| all_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34]);
    }

    #[test]
    fn tree_counts_match_known_sequence() {
        // OEIS A000055
        let counts: Vec<usize> = (1..=8).map(|n| all_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23]);
        for t in all_trees(7) {
            assert_eq!(t.edge_count(), 6);
            assert_eq!(connected_components(&t).len(), 1);
        }
    }

    #[test]
    fn streams_are_independent_of_order() {
        let a: Vec<u32> = (0..4).map(|s| stream_rng(5, s).gen()).collect();
        let b: Vec<u32> = (0..4).rev().map(|s| stream_rng(5, s).gen()).collect();
        assert_eq!(a, b.into_iter().rev().collect::<Vec<_>>());
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn families_have_expected_sizes() {
        assert_eq!(complete(5).edge_count(), 10);
        assert_eq!(cycle(6).edge_count(), 6);
        assert_eq!(path(1).edge_count(), 0);
        assert_eq!(star(4).degree(0), 4);
        let p = petersen();
        assert_eq!(p.edge_count(), 15);
        assert!((0..10).all(|v| p.degree(v) == 3));
    }

    #[test]
    fn random_graph_with_edges_has_m_edges() {
        let mut rng = stream_rng(1, 0);
        for m in 0..=10 {
            assert_eq!(random_graph_with_edges(&mut rng, 5, m).edge_count(), m);
        }
    }
}
