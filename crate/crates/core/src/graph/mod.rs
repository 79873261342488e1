//! Vertex-coloured simple undirected graphs.
//!
//! Vertices are `0..n`. Adjacency is stored as one packed bit row per vertex,
//! which is also what the GF(2) cut matrices are sliced from.

mod format;
mod oracle;

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::f2::BitVector;

pub use format::{parse_edge_list, parse_graph, parse_graph6, to_edge_list, to_graph6};
pub use oracle::{automorphism_orbits, brute_force_isomorphic, find_isomorphism_extending};

pub type Vertex = usize;
pub type Colour = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("expected {expected} colours, got {found}")]
    ColourCount { expected: usize, found: usize },
    #[error("not a bijection on {n} vertices")]
    NotABijection { n: usize },
    #[error("graph6 cannot encode vertex colours")]
    ColouredGraph6,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Sorted, duplicate-free subset of `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    /// Builds a set from arbitrary members. Order and duplicates are normalised.
    pub fn new<I: IntoIterator<Item = Vertex>>(members: I) -> Self {
        let mut v: Vec<Vertex> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn from_mask(mask: u64) -> Self {
        VertexSet((0..64).filter(|&i| (mask >> i) & 1 == 1).collect())
    }

    /// Bitmask form; only valid when every member is below 64.
    pub fn to_mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &v| {
            debug_assert!(v < 64);
            m | (1 << v)
        })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn max(&self) -> Option<Vertex> {
        self.0.last().copied()
    }

    /// `[n] \ self`.
    pub fn complement(&self, n: usize) -> VertexSet {
        VertexSet((0..n).filter(|&v| !self.contains(v)).collect())
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.iter().chain(other.iter()))
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| other.contains(v)).collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    /// Membership vector of length `n`.
    pub fn to_bits(&self, n: usize) -> BitVector {
        BitVector::from_ones(n, &self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

/// A finite simple undirected graph with a colour on every vertex.
///
/// Uncoloured graphs carry the all-zero colouring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<BitVector>,
    colours: Vec<Colour>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![BitVector::zeros(n); n],
            colours: vec![0; n],
        }
    }

    /// Graph from an edge list. Rejects loops, duplicates and out-of-range ends.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if g.is_adjacent(u, v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Replaces the colouring.
    pub fn with_colours(mut self, colours: Vec<Colour>) -> Result<Self, GraphError> {
        if colours.len() != self.n {
            return Err(GraphError::ColourCount {
                expected: self.n,
                found: colours.len(),
            });
        }
        self.colours = colours;
        Ok(self)
    }

    /// Same colouring, all colours set to zero.
    pub fn uncoloured(&self) -> Graph {
        Graph {
            n: self.n,
            adj: self.adj.clone(),
            colours: vec![0; self.n],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_adjacent(&self, v: Vertex, w: Vertex) -> bool {
        self.adj[v].get(w)
    }

    #[inline]
    pub fn colour(&self, v: Vertex) -> Colour {
        self.colours[v]
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    pub fn is_coloured(&self) -> bool {
        self.colours.iter().any(|&c| c != 0)
    }

    /// Packed neighbourhood of `v`.
    #[inline]
    pub fn row(&self, v: Vertex) -> &BitVector {
        &self.adj[v]
    }

    /// Neighbourhood as a single word; requires `n <= 64`.
    #[inline]
    pub fn neighbour_mask(&self, v: Vertex) -> u64 {
        debug_assert!(self.n <= 64);
        self.adj[v].words().first().copied().unwrap_or(0)
    }

    pub fn neighbours(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter_ones()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count_ones()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitVector::count_ones).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].iter_ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    pub(crate) fn set_edge(&mut self, u: Vertex, v: Vertex, present: bool) {
        debug_assert_ne!(u, v);
        self.adj[u].assign(v, present);
        self.adj[v].assign(u, present);
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub(crate) fn check_set(&self, x: &VertexSet) -> Result<(), GraphError> {
        match x.max() {
            Some(v) => self.check_vertex(v),
            None => Ok(()),
        }
    }

    /// The complement graph, colours kept.
    pub fn complement(&self) -> Graph {
        let mut g = self.clone();
        for u in 0..self.n {
            for v in u + 1..self.n {
                g.set_edge(u, v, !self.is_adjacent(u, v));
            }
        }
        g
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut g = Graph::new(n);
        for (u, v) in self.edges() {
            g.set_edge(u, v, true);
        }
        for (u, v) in other.edges() {
            g.set_edge(u + self.n, v + self.n, true);
        }
        g.colours = self.colours.iter().chain(&other.colours).copied().collect();
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "]")?;
        if self.is_coloured() {
            write!(f, ", colours={:?}", self.colours)?;
        }
        write!(f, ")")
    }
}

/// `G[A]`, with the members of `a` renumbered `0..|a|` in ascending order.
pub fn induced_subgraph(g: &Graph, a: &VertexSet) -> Result<Graph, GraphError> {
    g.check_set(a)?;
    let members = a.as_slice();
    let mut h = Graph::new(members.len());
    for (i, &v) in members.iter().enumerate() {
        for (j, &w) in members.iter().enumerate().skip(i + 1) {
            if g.is_adjacent(v, w) {
                h.set_edge(i, j, true);
            }
        }
    }
    h.colours = members.iter().map(|&v| g.colour(v)).collect();
    Ok(h)
}

/// The graph `πG`: vertex `v` of `g` becomes `perm[v]`.
pub fn apply_permutation(g: &Graph, perm: &[Vertex]) -> Result<Graph, GraphError> {
    let n = g.n();
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(GraphError::NotABijection { n });
    }
    for &p in perm {
        if p >= n || seen[p] {
            return Err(GraphError::NotABijection { n });
        }
        seen[p] = true;
    }
    let mut h = Graph::new(n);
    for (u, v) in g.edges() {
        h.set_edge(perm[u], perm[v], true);
    }
    for v in 0..n {
        h.colours[perm[v]] = g.colour(v);
    }
    Ok(h)
}

/// Vertex sets of the connected components, ordered by least member.
pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut parts = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut members = vec![start];
        while let Some(v) = queue.pop_front() {
            for w in g.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    members.push(w);
                    queue.push_back(w);
                }
            }
        }
        parts.push(VertexSet::new(members));
    }
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle, path};

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(Graph::from_edges(3, [(0, 0)]), Err(GraphError::Loop(0)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn adjacency_is_symmetric_and_loop_free() {
        let g = cycle(5);
        for v in 0..5 {
            assert!(!g.is_adjacent(v, v));
            for w in 0..5 {
                assert_eq!(g.is_adjacent(v, w), g.is_adjacent(w, v));
            }
        }
        assert_eq!(g.edge_count(), 5);
    }

    #[test]
    fn induced_subgraph_examples() {
        let k2 = induced_subgraph(&complete(3), &VertexSet::new([0, 1])).unwrap();
        assert_eq!(k2, complete(2));
        let two = induced_subgraph(&path(3), &VertexSet::new([0, 2])).unwrap();
        assert_eq!(two, Graph::new(2));
        let p4 = induced_subgraph(&cycle(5), &VertexSet::new([1, 2, 3, 4])).unwrap();
        assert!(brute_force_isomorphic(&p4, &path(4)).is_some());
        let c5 = cycle(5);
        assert_eq!(induced_subgraph(&c5, &VertexSet::full(5)).unwrap(), c5);
        assert!(induced_subgraph(&c5, &VertexSet::new([5])).is_err());
    }

    #[test]
    fn induced_subgraph_carries_colours() {
        let g = path(3).with_colours(vec![4, 5, 6]).unwrap();
        let h = induced_subgraph(&g, &VertexSet::new([2, 0])).unwrap();
        assert_eq!(h.colours(), &[4, 6]);
    }

    #[test]
    fn permutation_examples() {
        let p3 = path(3);
        assert_eq!(apply_permutation(&p3, &[0, 1, 2]).unwrap(), p3);
        assert_eq!(apply_permutation(&p3, &[2, 1, 0]).unwrap(), p3);
        assert_eq!(
            apply_permutation(&p3, &[0, 0, 1]),
            Err(GraphError::NotABijection { n: 3 })
        );
        assert!(apply_permutation(&p3, &[0, 1]).is_err());
        let c5 = cycle(5);
        let pc5 = apply_permutation(&c5, &[3, 0, 4, 1, 2]).unwrap();
        let iso = brute_force_isomorphic(&c5, &pc5).unwrap();
        for (u, v) in c5.edges() {
            assert!(pc5.is_adjacent(iso[u], iso[v]));
        }
    }

    #[test]
    fn permutation_moves_colours() {
        let g = path(3).with_colours(vec![1, 2, 3]).unwrap();
        let h = apply_permutation(&g, &[2, 0, 1]).unwrap();
        assert_eq!(h.colours(), &[2, 3, 1]);
    }

    #[test]
    fn components_examples() {
        let two_triangles = cycle(3).disjoint_union(&cycle(3));
        let comps = connected_components(&two_triangles);
        assert_eq!(comps, vec![VertexSet::new([0, 1, 2]), VertexSet::new([3, 4, 5])]);
        let singletons = connected_components(&Graph::new(4));
        assert_eq!(singletons.len(), 4);
        assert_eq!(connected_components(&cycle(6)), vec![VertexSet::full(6)]);
    }

    #[test]
    fn vertex_set_ops() {
        let x = VertexSet::new([3, 1, 1, 2]);
        assert_eq!(x.as_slice(), &[1, 2, 3]);
        assert_eq!(x.complement(5), VertexSet::new([0, 4]));
        assert_eq!(x.to_mask(), 0b1110);
        assert_eq!(VertexSet::from_mask(0b1110), x);
        assert!(VertexSet::new([1, 2]).is_subset(&x));
        assert_eq!(x.to_string(), "{1,2,3}");
    }
}
