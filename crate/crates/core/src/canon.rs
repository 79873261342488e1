//! Orbits from diagonal WL colours, and canonisation by repeated
//! argmin-individualisation.
//!
//! `canonise(g, k)` runs `n` rounds of `(k + 1)`-WL. Round `i` colours every
//! vertex by the stable colour of its diagonal tuple in the previous round's
//! graph, picks the unchosen vertex of least colour (lowest index on ties),
//! and individualises it on top of that colouring. The chosen order
//! numbers the vertices of the canonical form.

use std::fmt::Write as _;

use crate::graph::{Colour, Graph, Vertex, VertexSet};
use crate::wl::{individualise, wl_distinguishes, wl_stable_k};
use crate::GuardError;

/// `([n], {ij | v_i v_j ∈ E}, i ↦ χ(v_i))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    n: usize,
    edges: Vec<(usize, usize)>,
    colours: Vec<Colour>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted, each as `(i, j)` with `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.n, self.edges.iter().copied())
            .and_then(|g| g.with_colours(self.colours.clone()))
            .expect("canonical forms are well formed")
    }
}

/// Vertices grouped by the stable `(k + 1)`-WL colour of `(v, ..., v)`,
/// ordered by least member.
pub fn orbit_partition(g: &Graph, k: usize) -> Result<Vec<VertexSet>, GuardError> {
    let col = wl_stable_k(g, k + 1)?;
    let diag: Vec<u32> = (0..g.n()).map(|v| col.diagonal(v)).collect();
    Ok(crate::wl::partition_of(&diag)
        .into_iter()
        .map(VertexSet::new)
        .collect())
}

/// The vertex order chosen by the canonisation rounds.
pub fn canonical_order(g: &Graph, k: usize) -> Result<Vec<Vertex>, GuardError> {
    Ok(canonical_rounds(g, k)?.into_iter().map(|(v, _)| v).collect())
}

/// For each round, the chosen vertex and the individualised graph the next
/// round refines.
pub fn canonical_rounds(g: &Graph, k: usize) -> Result<Vec<(Vertex, Graph)>, GuardError> {
    let n = g.n();
    let mut current = g.clone();
    let mut chosen = vec![false; n];
    let mut rounds = Vec::with_capacity(n);
    for _ in 0..n {
        let col = wl_stable_k(&current, k + 1)?;
        let diag: Vec<Colour> = (0..n).map(|v| col.diagonal(v)).collect();
        let next = (0..n)
            .filter(|&v| !chosen[v])
            .min_by_key(|&v| (diag[v], v))
            .expect("an unchosen vertex remains");
        chosen[next] = true;
        let recoloured = g.uncoloured().with_colours(diag).expect("one colour per vertex");
        current = individualise(&recoloured, &[next]);
        rounds.push((next, current.clone()));
    }
    Ok(rounds)
}

pub fn canonise(g: &Graph, k: usize) -> Result<CanonicalForm, GuardError> {
    let order = canonical_order(g, k)?;
    let mut position = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(u, v)| {
            let (i, j) = (position[u], position[v]);
            (i.min(j), i.max(j))
        })
        .collect();
    edges.sort_unstable();
    Ok(CanonicalForm {
        n: g.n(),
        edges,
        colours: order.iter().map(|&v| g.colour(v)).collect(),
    })
}

/// `n=<n>;colours=<c_0,...>;edges=<(i,j),...>`.
pub fn canonical_string(c: &CanonicalForm) -> String {
    let mut out = format!("n={};colours=", c.n);
    for (i, col) in c.colours.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write!(out, "{col}").expect("writing to a String");
    }
    out.push_str(";edges=");
    for (idx, (i, j)) in c.edges.iter().enumerate() {
        if idx > 0 {
            out.push(',');
        }
        write!(out, "({i},{j})").expect("writing to a String");
    }
    out
}

/// Isomorphism by comparing canonical strings.
pub fn iso_test(g: &Graph, h: &Graph, k: usize) -> Result<bool, GuardError> {
    if g.n() != h.n() {
        return Ok(false);
    }
    let same = canonical_string(&canonise(g, k)?) == canonical_string(&canonise(h, k)?);
    if cfg!(debug_assertions) && same {
        debug_assert!(
            !wl_distinguishes(g, h, k + 1)?,
            "equal canonical forms for graphs that WL tells apart"
        );
    }
    Ok(same)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle, path, random_permutation, stream_rng};
    use crate::graph::{apply_permutation, automorphism_orbits, brute_force_isomorphic};

    #[test]
    fn canonical_string_examples() {
        assert_eq!(canonical_string(&canonise(&complete(2), 1).unwrap()), "n=2;colours=0,0;edges=(0,1)");
        assert_eq!(canonical_string(&canonise(&Graph::new(1), 1).unwrap()), "n=1;colours=0;edges=");
        assert_eq!(canonical_string(&canonise(&Graph::new(0), 1).unwrap()), "n=0;colours=;edges=");
    }

    #[test]
    fn path_labellings_agree() {
        let a = path(3);
        let b = apply_permutation(&a, &[1, 0, 2]).unwrap();
        assert_ne!(a, b);
        let (ca, cb) = (canonise(&a, 1).unwrap(), canonise(&b, 1).unwrap());
        assert_eq!(canonical_string(&ca), canonical_string(&cb));
        assert!(brute_force_isomorphic(&ca.to_graph(), &a).is_some());
    }

    #[test]
    fn orbits_of_small_graphs() {
        assert_eq!(orbit_partition(&cycle(5), 1).unwrap(), vec![VertexSet::full(5)]);
        assert_eq!(orbit_partition(&path(3), 1).unwrap(), automorphism_orbits(&path(3)));
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        assert_eq!(orbit_partition(&g, 2).unwrap(), automorphism_orbits(&g));
    }

    #[test]
    fn colours_travel_with_the_form() {
        let g = path(3).with_colours(vec![5, 0, 0]).unwrap();
        let h = apply_permutation(&g, &[2, 1, 0]).unwrap();
        let (cg, ch) = (canonise(&g, 1).unwrap(), canonise(&h, 1).unwrap());
        assert_eq!(cg, ch);
        let mut cols = cg.colours().to_vec();
        cols.sort_unstable();
        assert_eq!(cols, vec![0, 0, 5]);
        assert!(brute_force_isomorphic(&cg.to_graph(), &g).is_some());
    }

    #[test]
    fn iso_test_examples() {
        let c6 = cycle(6);
        let t = cycle(3).disjoint_union(&cycle(3));
        assert!(!iso_test(&c6, &t, 1).unwrap());
        assert!(!iso_test(&path(3), &path(4), 1).unwrap());
        for stream in 0..10 {
            let mut rng = stream_rng(9, stream);
            let perm = random_permutation(&mut rng, 6);
            assert!(iso_test(&c6, &apply_permutation(&c6, &perm).unwrap(), 1).unwrap());
        }
    }

    #[test]
    fn order_is_a_permutation() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let mut order = canonical_order(&g, 1).unwrap();
        order.sort_unstable();
        assert_eq!(order, (0..6).collect::<Vec<_>>());
    }
}
