//! Brute-force isomorphism search. Exponential, and meant to be: this is the
//! reference every other module is checked against at small `n`.

use super::{Graph, Vertex, VertexSet};

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    /// (colour, degree) per vertex; candidates must match exactly.
    g_class: Vec<(u32, usize)>,
    h_class: Vec<(u32, usize)>,
    map: Vec<Option<Vertex>>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn consistent(&self, v: Vertex, w: Vertex) -> bool {
        if self.used[w] || self.g_class[v] != self.h_class[w] {
            return false;
        }
        self.map.iter().enumerate().all(|(u, image)| match image {
            Some(x) => self.g.is_adjacent(u, v) == self.h.is_adjacent(*x, w),
            None => true,
        })
    }

    fn assign(&mut self, v: Vertex, w: Vertex) {
        self.map[v] = Some(w);
        self.used[w] = true;
    }

    fn unassign(&mut self, v: Vertex, w: Vertex) {
        self.map[v] = None;
        self.used[w] = false;
    }

    /// Extends the current partial map over `order[depth..]`.
    fn extend(&mut self, order: &[Vertex], depth: usize) -> bool {
        let Some(&v) = order.get(depth) else {
            return true;
        };
        for w in 0..self.h.n() {
            if self.consistent(v, w) {
                self.assign(v, w);
                if self.extend(order, depth + 1) {
                    return true;
                }
                self.unassign(v, w);
            }
        }
        false
    }
}

/// An isomorphism `g -> h` mapping each `fixed.0` to `fixed.1`, if one exists.
/// The remaining vertices of `g` are assigned in ascending order, each to the
/// smallest workable image, so the answer is the first in lexicographic
/// backtracking order.
pub fn find_isomorphism_extending(
    g: &Graph,
    h: &Graph,
    fixed: &[(Vertex, Vertex)],
) -> Option<Vec<Vertex>> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let class = |x: &Graph| (0..x.n()).map(|v| (x.colour(v), x.degree(v))).collect::<Vec<_>>();
    let mut s = Search {
        g,
        h,
        g_class: class(g),
        h_class: class(h),
        map: vec![None; g.n()],
        used: vec![false; h.n()],
    };
    {
        let mut gc = s.g_class.clone();
        let mut hc = s.h_class.clone();
        gc.sort_unstable();
        hc.sort_unstable();
        if gc != hc {
            return None;
        }
    }
    for &(v, w) in fixed {
        if v >= g.n() || w >= h.n() {
            return None;
        }
        if s.map[v] == Some(w) {
            continue;
        }
        if s.map[v].is_some() || !s.consistent(v, w) {
            return None;
        }
        s.assign(v, w);
    }
    let order: Vec<Vertex> = (0..g.n()).filter(|&v| s.map[v].is_none()).collect();
    if s.extend(&order, 0) {
        Some(s.map.into_iter().map(|w| w.expect("complete map")).collect())
    } else {
        None
    }
}

/// A colour- and edge-preserving bijection `g -> h`, if one exists.
pub fn brute_force_isomorphic(g: &Graph, h: &Graph) -> Option<Vec<Vertex>> {
    find_isomorphism_extending(g, h, &[])
}

/// Orbits of the automorphism group, each sorted, ordered by least member.
pub fn automorphism_orbits(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let mut orbit_of: Vec<Option<usize>> = vec![None; n];
    let mut orbits: Vec<Vec<Vertex>> = Vec::new();
    for v in 0..n {
        if orbit_of[v].is_some() {
            continue;
        }
        let id = orbits.len();
        orbit_of[v] = Some(id);
        let mut members = vec![v];
        for w in v + 1..n {
            if orbit_of[w].is_none() && find_isomorphism_extending(g, g, &[(v, w)]).is_some() {
                orbit_of[w] = Some(id);
                members.push(w);
            }
        }
        orbits.push(members);
    }
    orbits.into_iter().map(VertexSet::new).collect()
}
