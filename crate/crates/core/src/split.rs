//! Split pairs, flip functions and flip extensions.
//!
//! For `X ⊆ V`, `vec_X(v)` is the row of `v` in the cut matrix `M(X, X̄)`.
//! A split pair `(a, b)` of `X` picks vertices `a ⊆ X` and `b ⊆ X̄` whose
//! vectors are bases of the row and column spaces of that matrix.
//!
//! Flip-extension patterns are bitmasks over the distinct vertices of
//! `(a, b)` in first-occurrence order: bit `i` of `pattern(v)` is set iff `v`
//! is adjacent to the `i`-th of them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::f2::{cut_rank, extend_basis, greedy_basis, is_independent, BitVector, F2Error};
use crate::graph::{connected_components, Graph, GraphError, Vertex, VertexSet};
use crate::wl::{colour_refinement, individualise, VertexColouring};
use crate::GuardError;

/// Patterns are `u32` bitmasks, one bit per distinct vertex of `(a, b)`.
pub const MAX_PATTERN_VERTICES: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplitError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    F2(#[from] F2Error),
    #[error("vertex {0} is not in the set")]
    NotInSet(Vertex),
    #[error("not a split pair: {0}")]
    InvalidSplitPair(String),
    #[error("the two parts do not partition the set")]
    NotAPartition,
    #[error("flip function has no entry for colours ({0}, {1})")]
    MissingColourPair(u32, u32),
    #[error("malformed flip extension: {0}")]
    MalformedExtension(String),
    #[error("pair ({0}, {1}) gets different edge decisions from its two endpoints")]
    AmbiguousPair(Vertex, Vertex),
    #[error("case analysis failed for patterns ({m:#b}, {n:#b}): {reason}")]
    CaseAnalysis { m: u32, n: u32, reason: String },
    #[error(transparent)]
    Guard(#[from] GuardError),
}

impl SplitError {
    pub fn is_guard(&self) -> bool {
        matches!(self, SplitError::Guard(_))
    }
}

/// `vec_X(v)`: adjacency of `v` to `X̄`, columns in ascending order.
pub fn x_vector(g: &Graph, x: &VertexSet, v: Vertex) -> Result<BitVector, SplitError> {
    g.check_set(x)?;
    if !x.contains(v) {
        return Err(SplitError::NotInSet(v));
    }
    Ok(cut_vector(g, &x.complement(g.n()), v))
}

/// Adjacency of `v` restricted to `columns`, in the columns' order.
fn cut_vector(g: &Graph, columns: &VertexSet, v: Vertex) -> BitVector {
    BitVector::from_bits(columns.iter().map(|w| g.is_adjacent(v, w)))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedSplitPair {
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
    pub set: VertexSet,
}

impl OrderedSplitPair {
    /// `a` followed by `b`.
    pub fn tuple(&self) -> Vec<Vertex> {
        self.a.iter().chain(&self.b).copied().collect()
    }

    /// Checks that `(a, b)` is a split pair of `set` in `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), SplitError> {
        g.check_set(&self.set)?;
        let complement = self.set.complement(g.n());
        let rank = cut_rank(g, &self.set)?;
        let side = |tuple: &[Vertex], inside: &VertexSet, outside: &VertexSet, name: &str| {
            let distinct: BTreeSet<Vertex> = tuple.iter().copied().collect();
            if distinct.len() != tuple.len() {
                return Err(SplitError::InvalidSplitPair(format!("{name} repeats a vertex")));
            }
            if let Some(&v) = tuple.iter().find(|&&v| !inside.contains(v)) {
                return Err(SplitError::InvalidSplitPair(format!("{name} contains {v} from the wrong side")));
            }
            if tuple.len() != rank {
                return Err(SplitError::InvalidSplitPair(format!(
                    "{name} has {} vertices but the cut rank is {rank}",
                    tuple.len()
                )));
            }
            let vectors: Vec<BitVector> = tuple.iter().map(|&v| cut_vector(g, outside, v)).collect();
            if !is_independent(&vectors.iter().collect::<Vec<_>>()) {
                return Err(SplitError::InvalidSplitPair(format!("{name} is not independent")));
            }
            Ok(())
        };
        side(&self.a, &self.set, &complement, "a")?;
        side(&self.b, &complement, &self.set, "b")
    }
}

impl fmt::Display for OrderedSplitPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |t: &[Vertex]| t.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "a=({}) b=({})", list(&self.a), list(&self.b))
    }
}

/// First-fit bases of both sides in ascending vertex order. Independent
/// vectors up to the cut rank are automatically bases, so `X = V` and
/// `X = ∅` give `((), ())`.
pub fn find_split_pair(g: &Graph, x: &VertexSet) -> Result<OrderedSplitPair, SplitError> {
    g.check_set(x)?;
    let complement = x.complement(g.n());
    let pick = |inside: &VertexSet, outside: &VertexSet| -> Result<Vec<Vertex>, SplitError> {
        let members: Vec<Vertex> = inside.iter().collect();
        let vectors: Vec<BitVector> = members.iter().map(|&v| cut_vector(g, outside, v)).collect();
        Ok(greedy_basis(&vectors)?
            .into_iter()
            .map(|i| members[i])
            .collect())
    };
    Ok(OrderedSplitPair {
        a: pick(x, &complement)?,
        b: pick(&complement, x)?,
        set: x.clone(),
    })
}

/// Split pairs for the two parts of `X = X1 ⊎ X2` that are nice with respect
/// to `sp` and satisfy `B_i ∩ X̄ ⊆ B`.
///
/// `A_i` extends `A ∩ X_i` (in `a`'s order) to a basis over `X_i`.
/// `B_i` is the first-fit maximal independent subset of `B` followed by
/// `A_{3-i}` under `vec_{X̄_i}`.
pub fn nice_split_pairs(
    g: &Graph,
    x1: &VertexSet,
    x2: &VertexSet,
    sp: &OrderedSplitPair,
) -> Result<(OrderedSplitPair, OrderedSplitPair), SplitError> {
    g.check_set(x1)?;
    g.check_set(x2)?;
    if !x1.is_disjoint(x2) || x1.union(x2) != sp.set {
        return Err(SplitError::NotAPartition);
    }
    sp.validate(g)?;
    let parts = [x1, x2];
    let mut a_parts: Vec<Vec<Vertex>> = Vec::with_capacity(2);
    for xi in parts {
        let complement = xi.complement(g.n());
        let members: Vec<Vertex> = xi.iter().collect();
        let vectors: Vec<BitVector> = members.iter().map(|&v| cut_vector(g, &complement, v)).collect();
        let seed: Vec<usize> = sp
            .a
            .iter()
            .filter_map(|&v| members.iter().position(|&m| m == v))
            .collect();
        let chosen = extend_basis(&seed, &vectors)?;
        a_parts.push(
            chosen
                .into_iter()
                .map(|i| members[i])
                .collect(),
        );
    }
    let mut out = Vec::with_capacity(2);
    for (i, xi) in parts.into_iter().enumerate() {
        let candidates: Vec<Vertex> = sp.b.iter().chain(&a_parts[1 - i]).copied().collect();
        let vectors: Vec<BitVector> = candidates.iter().map(|&v| cut_vector(g, xi, v)).collect();
        let b_i: Vec<Vertex> = greedy_basis(&vectors)?
            .into_iter()
            .map(|j| candidates[j])
            .collect();
        let pair = OrderedSplitPair {
            a: a_parts[i].clone(),
            b: b_i,
            set: xi.clone(),
        };
        pair.validate(g)?;
        out.push(pair);
    }
    let p2 = out.pop().expect("two parts");
    let p1 = out.pop().expect("two parts");
    Ok((p1, p2))
}

/// Both containments that make `(p1, p2)` nice with respect to `sp`, plus
/// `B_i ∩ X̄ ⊆ B`.
pub fn is_nice(g: &Graph, sp: &OrderedSplitPair, p1: &OrderedSplitPair, p2: &OrderedSplitPair) -> bool {
    let set = |t: &[Vertex]| VertexSet::new(t.iter().copied());
    let outside = sp.set.complement(g.n());
    let (a, b) = (set(&sp.a), set(&sp.b));
    let pairs = [p1, p2];
    (0..2).all(|i| {
        let (pi, other) = (pairs[i], pairs[1 - i]);
        let ai = set(&pi.a);
        a.intersection(&pi.set).is_subset(&ai)
            && set(&other.b).intersection(&pi.set).is_subset(&ai)
            && set(&pi.b).intersection(&outside).is_subset(&b)
    })
}

/// Symmetric 0/1 table over colour ids `0..size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlipFunction {
    size: usize,
    table: Vec<bool>,
}

impl FlipFunction {
    pub fn constant(size: usize, value: bool) -> Self {
        FlipFunction {
            size,
            table: vec![value; size * size],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Sets `f(c, c') = f(c', c) = value`.
    pub fn set(&mut self, c: u32, c2: u32, value: bool) {
        let (c, c2) = (c as usize, c2 as usize);
        assert!(c < self.size && c2 < self.size, "colour outside the table");
        self.table[c * self.size + c2] = value;
        self.table[c2 * self.size + c] = value;
    }

    pub fn get(&self, c: u32, c2: u32) -> Option<bool> {
        let (i, j) = (c as usize, c2 as usize);
        (i < self.size && j < self.size).then(|| self.table[i * self.size + j])
    }

    /// Pairs `c <= c'` with `f(c, c') = 1`.
    pub fn ones(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for i in 0..self.size {
            for j in i..self.size {
                if self.table[i * self.size + j] {
                    out.push((i as u32, j as u32));
                }
            }
        }
        out
    }
}

/// `G^f`: adjacency is complemented between classes with `f = 1`. The
/// result is coloured by `chi`.
pub fn flip_graph(g: &Graph, chi: &VertexColouring, f: &FlipFunction) -> Result<Graph, SplitError> {
    let n = g.n();
    if chi.as_slice().len() != n {
        return Err(GraphError::ColourCount {
            expected: n,
            found: chi.as_slice().len(),
        }
        .into());
    }
    let mut h = Graph::new(n).with_colours(chi.as_slice().to_vec())?;
    for v in 0..n {
        for w in v + 1..n {
            let (c, c2) = (chi.colour(v), chi.colour(w));
            let flip = f.get(c, c2).ok_or(SplitError::MissingColourPair(c, c2))?;
            if g.is_adjacent(v, w) != flip {
                h.set_edge(v, w, true);
            }
        }
    }
    Ok(h)
}

/// The stable colouring after individualising `(a, b)`, and the flip
/// function that is 1 exactly on colour pairs met by some edge across the
/// cut. Every component of the flipped graph then lies on one side.
pub fn find_flip_function(
    g: &Graph,
    sp: &OrderedSplitPair,
) -> Result<(FlipFunction, VertexColouring), SplitError> {
    sp.validate(g)?;
    let chi = colour_refinement(&individualise(g, &sp.tuple()));
    let mut f = FlipFunction::constant(chi.id_bound(), false);
    for v in sp.set.iter() {
        for w in g.neighbours(v) {
            if !sp.set.contains(w) {
                f.set(chi.colour(v), chi.colour(w), true);
            }
        }
    }
    Ok((f, chi))
}

pub fn components_flip(g: &Graph, chi: &VertexColouring, f: &FlipFunction) -> Result<Vec<VertexSet>, SplitError> {
    Ok(connected_components(&flip_graph(g, chi, f)?))
}

/// Distinct vertices of `(a, b)` in first-occurrence order.
pub fn pattern_vertices(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = Vec::new();
    for &v in a.iter().chain(b) {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

fn pattern(g: &Graph, anchors: &[Vertex], v: Vertex) -> u32 {
    anchors
        .iter()
        .enumerate()
        .filter(|&(_, &u)| g.is_adjacent(v, u))
        .fold(0, |m, (i, _)| m | (1 << i))
}

/// Neighbourhood pattern of every vertex with respect to `(a, b)`.
pub fn patterns(g: &Graph, a: &[Vertex], b: &[Vertex]) -> Vec<u32> {
    let anchors = pattern_vertices(a, b);
    assert!(anchors.len() <= MAX_PATTERN_VERTICES, "at most 32 distinct pattern vertices");
    (0..g.n()).map(|v| pattern(g, &anchors, v)).collect()
}

/// All `w` whose neighbourhood inside `(a, b)` equals that of `v`.
pub fn equiv_class(g: &Graph, a: &[Vertex], b: &[Vertex], v: Vertex) -> Result<VertexSet, SplitError> {
    g.check_vertex(v)?;
    for &u in a.iter().chain(b) {
        g.check_vertex(u)?;
    }
    let pats = patterns(g, a, b);
    Ok(VertexSet::new((0..g.n()).filter(|&w| pats[w] == pats[v])))
}

/// `(a, b, f)` with `f` partial on pattern pairs. Absent entries are ⊥.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlipExtension {
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
    pub f: BTreeMap<(u32, u32), usize>,
}

impl FlipExtension {
    pub fn get(&self, m: u32, n: u32) -> Option<usize> {
        self.f.get(&(m, n)).copied()
    }

    /// Checks ranges and that no pair `M != N` is defined both ways.
    pub fn validate(&self, g: &Graph) -> Result<(), SplitError> {
        for &v in self.a.iter().chain(&self.b) {
            g.check_vertex(v)?;
        }
        let width = pattern_vertices(&self.a, &self.b).len();
        if width > 32 {
            return Err(SplitError::MalformedExtension("more than 32 pattern vertices".into()));
        }
        let limit: u64 = 1 << width;
        for (&(m, n), &d) in &self.f {
            if u64::from(m) >= limit || u64::from(n) >= limit {
                return Err(SplitError::MalformedExtension(format!(
                    "pattern pair ({m:#b}, {n:#b}) uses more than {width} bits"
                )));
            }
            if d == 0 || d > g.n() {
                return Err(SplitError::MalformedExtension(format!(
                    "value {d} at ({m:#b}, {n:#b}) is outside 1..={}",
                    g.n()
                )));
            }
            if m != n && self.f.contains_key(&(n, m)) {
                return Err(SplitError::MalformedExtension(format!(
                    "both ({m:#b}, {n:#b}) and its reverse are set"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for FlipExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |t: &[Vertex]| t.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        writeln!(f, "a=({}) b=({})", list(&self.a), list(&self.b))?;
        let width = pattern_vertices(&self.a, &self.b).len();
        for (&(m, n), &d) in &self.f {
            writeln!(f, "f({m:0width$b}, {n:0width$b}) = {d}", width = width.max(1))?;
        }
        Ok(())
    }
}

/// Neighbour counts into each pattern class: `counts[v][class]` where
/// classes are numbered by ascending pattern.
struct ClassCounts {
    pats: Vec<u32>,
    class_of: BTreeMap<u32, usize>,
    counts: Vec<Vec<usize>>,
}

impl ClassCounts {
    fn new(g: &Graph, a: &[Vertex], b: &[Vertex]) -> Self {
        let pats = patterns(g, a, b);
        let class_of: BTreeMap<u32, usize> = pats
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mut counts = vec![vec![0; class_of.len()]; g.n()];
        for (v, row) in counts.iter_mut().enumerate() {
            for w in g.neighbours(v) {
                row[class_of[&pats[w]]] += 1;
            }
        }
        ClassCounts { pats, class_of, counts }
    }

    /// `|N(v) ∩ c(m)|`.
    fn count(&self, v: Vertex, m: u32) -> usize {
        self.class_of.get(&m).map_or(0, |&c| self.counts[v][c])
    }
}

/// Adjacency of `{v, w}` after the threshold rule with `v` counting:
/// an edge survives iff fewer than `d` of `v`'s neighbours share `w`'s
/// pattern; a non-edge appears iff at least `d` do.
fn threshold(g: &Graph, cc: &ClassCounts, d: usize, v: Vertex, w: Vertex) -> bool {
    let reaching = cc.count(v, cc.pats[w]) >= d;
    g.is_adjacent(v, w) != reaching
}

/// `G^s`. For an unordered pair the entry `(pattern(v), pattern(w))` is tried
/// first with `v` counting, then the reverse with `w` counting; a pair with
/// neither entry is a non-edge. Within one pattern class both endpoints are
/// evaluated and must agree. Colours are kept.
pub fn flip_extension_graph(g: &Graph, s: &FlipExtension) -> Result<Graph, SplitError> {
    s.validate(g)?;
    let cc = ClassCounts::new(g, &s.a, &s.b);
    let n = g.n();
    let mut h = Graph::new(n).with_colours(g.colours().to_vec())?;
    for v in 0..n {
        for w in v + 1..n {
            let (pv, pw) = (cc.pats[v], cc.pats[w]);
            let edge = if pv == pw {
                match s.get(pv, pv) {
                    Some(d) => {
                        let from_v = threshold(g, &cc, d, v, w);
                        if from_v != threshold(g, &cc, d, w, v) {
                            return Err(SplitError::AmbiguousPair(v, w));
                        }
                        from_v
                    }
                    None => false,
                }
            } else if let Some(d) = s.get(pv, pw) {
                threshold(g, &cc, d, v, w)
            } else if let Some(d) = s.get(pw, pv) {
                threshold(g, &cc, d, w, v)
            } else {
                false
            };
            if edge {
                h.set_edge(v, w, true);
            }
        }
    }
    Ok(h)
}

/// Builds a flip extension whose graph has no edge across the cut of
/// `sp.set`, handling each unordered pair of realised patterns in turn.
///
/// With `P, P̄` the members of `c(M)` inside and outside the set, and `Q, Q̄`
/// those of `c(N)`: no crossing edges gives `f(M,N) = n`, complete crossing
/// gives `f(M,N) = 1`, and otherwise, oriented so that `Q × P̄` holds the
/// edges, a threshold separating `P` from `P̄` (or `Q̄` from `Q`) is used.
pub fn find_flip_extension(g: &Graph, sp: &OrderedSplitPair) -> Result<FlipExtension, SplitError> {
    sp.validate(g)?;
    let anchors = pattern_vertices(&sp.a, &sp.b).len();
    if anchors > MAX_PATTERN_VERTICES {
        return Err(GuardError::new("pattern vertex count", MAX_PATTERN_VERTICES, anchors).into());
    }
    let n = g.n();
    let x = &sp.set;
    let cc = ClassCounts::new(g, &sp.a, &sp.b);
    let realised: Vec<u32> = cc.class_of.keys().copied().collect();
    let members = |m: u32, inside: bool| -> Vec<Vertex> {
        (0..n).filter(|&v| cc.pats[v] == m && x.contains(v) == inside).collect()
    };
    let any_edge = |s: &[Vertex], t: &[Vertex]| s.iter().any(|&u| t.iter().any(|&v| g.is_adjacent(u, v)));
    let all_edges = |s: &[Vertex], t: &[Vertex]| s.iter().all(|&u| t.iter().all(|&v| g.is_adjacent(u, v)));
    let mut f = BTreeMap::new();
    for (i, &m0) in realised.iter().enumerate() {
        for &n0 in &realised[i..] {
            let (p, pbar, q, qbar) = (members(m0, true), members(m0, false), members(n0, true), members(n0, false));
            let e_pq = any_edge(&p, &qbar);
            let e_qp = any_edge(&q, &pbar);
            if !e_pq && !e_qp {
                f.insert((m0, n0), n);
                continue;
            }
            if all_edges(&p, &qbar) && all_edges(&q, &pbar) {
                f.insert((m0, n0), 1);
                continue;
            }
            let fail = |reason: &str| SplitError::CaseAnalysis {
                m: m0,
                n: n0,
                reason: reason.into(),
            };
            if m0 == n0 {
                return Err(fail("crossing edges inside one class are neither absent nor complete"));
            }
            // orient so that the edges run between Q and P̄
            let (m, nn, p, pbar, q, qbar) = if e_qp {
                (m0, n0, p, pbar, q, qbar)
            } else {
                (n0, m0, q, qbar, p, pbar)
            };
            if !all_edges(&q, &pbar) || any_edge(&p, &qbar) {
                return Err(fail("crossing edges are neither complete one way nor absent the other"));
            }
            let max_p = p.iter().map(|&v| cc.count(v, nn)).max();
            let min_pbar = pbar.iter().map(|&v| cc.count(v, nn)).min();
            if let (Some(hi), Some(lo)) = (max_p, min_pbar) {
                if hi < lo {
                    f.insert((m, nn), lo);
                    continue;
                }
            }
            let max_qbar = qbar.iter().map(|&v| cc.count(v, m)).max();
            let min_q = q.iter().map(|&v| cc.count(v, m)).min();
            if let (Some(hi), Some(lo)) = (max_qbar, min_q) {
                if hi < lo {
                    f.insert((nn, m), lo);
                    continue;
                }
            }
            return Err(fail("no strict threshold separates the sides"));
        }
    }
    let s = FlipExtension {
        a: sp.a.clone(),
        b: sp.b.clone(),
        f,
    };
    s.validate(g)?;
    Ok(s)
}

/// The component of `v` in `G^s`.
pub fn comp_flip_extension(g: &Graph, s: &FlipExtension, v: Vertex) -> Result<VertexSet, SplitError> {
    g.check_vertex(v)?;
    let h = flip_extension_graph(g, s)?;
    Ok(connected_components(&h)
        .into_iter()
        .find(|c| c.contains(v))
        .expect("components cover every vertex"))
}

/// Whether every block lies inside `x` or inside its complement.
pub fn respects_cut(blocks: &[VertexSet], x: &VertexSet) -> bool {
    blocks
        .iter()
        .all(|c| c.is_subset(x) || c.is_disjoint(x))
}
