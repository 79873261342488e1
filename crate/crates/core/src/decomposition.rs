//! Rank decompositions, exact rank width by subset dynamic programming, and
//! clique-width expressions.
//!
//! Decompositions serialise as nested parentheses of leaf ids, e.g.
//! `((0 1) (2 3))`; a one-leaf tree is just `0`. Expressions are
//! s-expressions over `v`, `eta`, `rho` and `u`:
//!
//! ```text
//! (v i)          a single vertex labelled i
//! (eta i j E)    join every i-labelled vertex of E to every j-labelled one
//! (rho i j E)    relabel i to j
//! (u E F)        disjoint union, E's vertices numbered first
//! ```

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::f2::{cut_rank, cut_rank_mask};
use crate::graph::{Graph, GraphError, Vertex, VertexSet};
use crate::GuardError;

/// Largest graph `rank_width_exact` accepts. The DP visits `3^n` subset pairs.
pub const MAX_EXACT_VERTICES: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error(transparent)]
    Guard(#[from] GuardError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("the empty graph has no rank decomposition")]
    EmptyGraph,
    #[error("not a rank decomposition of this graph")]
    Invalid,
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("unknown operator `{0}`")]
    UnknownOperator(String),
    #[error("eta needs two different labels, got {0} twice")]
    EqualLabels(u32),
    #[error("labels start at 1")]
    ZeroLabel,
}

impl DecompositionError {
    pub fn is_guard(&self) -> bool {
        matches!(self, DecompositionError::Guard(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    Leaf(Vertex),
    Internal(usize, usize),
}

/// Rooted binary tree whose leaves carry vertices. Nodes live in an arena;
/// construction checks that the arena really is a tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankDecomposition {
    nodes: Vec<Node>,
    root: usize,
}

impl RankDecomposition {
    /// Builds from an arena, rejecting anything that is not a binary tree
    /// rooted at `root` covering every node exactly once.
    pub fn new(nodes: Vec<Node>, root: usize) -> Result<Self, DecompositionError> {
        if root >= nodes.len() {
            return Err(DecompositionError::MalformedTree("root out of range".into()));
        }
        let mut seen = vec![false; nodes.len()];
        let mut stack = vec![root];
        while let Some(t) = stack.pop() {
            if seen[t] {
                return Err(DecompositionError::MalformedTree(format!("node {t} reached twice")));
            }
            seen[t] = true;
            if let Node::Internal(l, r) = nodes[t] {
                for c in [l, r] {
                    if c >= nodes.len() {
                        return Err(DecompositionError::MalformedTree(format!("child {c} out of range")));
                    }
                    stack.push(c);
                }
            }
        }
        if let Some(t) = seen.iter().position(|s| !s) {
            return Err(DecompositionError::MalformedTree(format!("node {t} unreachable")));
        }
        Ok(RankDecomposition { nodes, root })
    }

    pub fn leaf(v: Vertex) -> Self {
        RankDecomposition {
            nodes: vec![Node::Leaf(v)],
            root: 0,
        }
    }

    pub fn join(left: RankDecomposition, right: RankDecomposition) -> Self {
        let shift = left.nodes.len();
        let mut nodes = left.nodes;
        nodes.extend(right.nodes.into_iter().map(|node| match node {
            Node::Leaf(v) => Node::Leaf(v),
            Node::Internal(l, r) => Node::Internal(l + shift, r + shift),
        }));
        nodes.push(Node::Internal(left.root, right.root + shift));
        let root = nodes.len() - 1;
        RankDecomposition { nodes, root }
    }

    /// `(((o0 o1) o2) o3) ...`: each prefix of `order` is a node.
    pub fn caterpillar(order: &[Vertex]) -> Option<Self> {
        let (&first, rest) = order.split_first()?;
        Some(
            rest.iter()
                .fold(Self::leaf(first), |acc, &v| Self::join(acc, Self::leaf(v))),
        )
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Leaf vertices in left-to-right order.
    pub fn leaves(&self) -> Vec<Vertex> {
        let mut out = Vec::new();
        self.collect_leaves(self.root, &mut out);
        out
    }

    fn collect_leaves(&self, t: usize, out: &mut Vec<Vertex>) {
        match self.nodes[t] {
            Node::Leaf(v) => out.push(v),
            Node::Internal(l, r) => {
                self.collect_leaves(l, out);
                self.collect_leaves(r, out);
            }
        }
    }

    /// The vertex set below every node, indexed like `nodes()`.
    pub fn gamma(&self) -> Vec<VertexSet> {
        let mut out = vec![VertexSet::empty(); self.nodes.len()];
        self.fill_gamma(self.root, &mut out);
        out
    }

    fn fill_gamma(&self, t: usize, out: &mut [VertexSet]) {
        out[t] = match self.nodes[t] {
            Node::Leaf(v) => VertexSet::new([v]),
            Node::Internal(l, r) => {
                self.fill_gamma(l, out);
                self.fill_gamma(r, out);
                out[l].union(&out[r])
            }
        };
    }

    /// Parses the nested-parentheses form written by `Display`.
    pub fn parse(text: &str) -> Result<Self, DecompositionError> {
        let tokens = tokenize(text);
        let mut pos = 0;
        let d = parse_tree(&tokens, &mut pos)?;
        if let Some(t) = tokens.get(pos) {
            return Err(DecompositionError::Parse {
                pos: t.offset,
                message: "trailing input".into(),
            });
        }
        Ok(d)
    }

    fn write_node(&self, t: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.nodes[t] {
            Node::Leaf(v) => write!(f, "{v}"),
            Node::Internal(l, r) => {
                f.write_str("(")?;
                self.write_node(l, f)?;
                f.write_str(" ")?;
                self.write_node(r, f)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for RankDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_node(self.root, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok<'a> {
    Open,
    Close,
    Atom(&'a str),
}

#[derive(Debug)]
struct Token<'a> {
    tok: Tok<'a>,
    offset: usize,
}

fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in text.char_indices() {
        let boundary = ch == '(' || ch == ')' || ch.is_whitespace();
        if boundary {
            if let Some(s) = start.take() {
                out.push(Token {
                    tok: Tok::Atom(&text[s..i]),
                    offset: s,
                });
            }
            match ch {
                '(' => out.push(Token {
                    tok: Tok::Open,
                    offset: i,
                }),
                ')' => out.push(Token {
                    tok: Tok::Close,
                    offset: i,
                }),
                _ => {}
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            tok: Tok::Atom(&text[s..]),
            offset: s,
        });
    }
    out
}

fn eof_error(tokens: &[Token<'_>]) -> DecompositionError {
    DecompositionError::Parse {
        pos: tokens.last().map_or(0, |t| t.offset + 1),
        message: "unexpected end of input".into(),
    }
}

fn expect_close(tokens: &[Token<'_>], pos: &mut usize) -> Result<(), DecompositionError> {
    match tokens.get(*pos) {
        Some(Token { tok: Tok::Close, .. }) => {
            *pos += 1;
            Ok(())
        }
        Some(t) => Err(DecompositionError::Parse {
            pos: t.offset,
            message: "expected `)`".into(),
        }),
        None => Err(eof_error(tokens)),
    }
}

fn parse_number<T: std::str::FromStr>(
    tokens: &[Token<'_>],
    pos: &mut usize,
) -> Result<T, DecompositionError> {
    match tokens.get(*pos) {
        Some(Token {
            tok: Tok::Atom(a),
            offset,
        }) => {
            *pos += 1;
            a.parse().map_err(|_| DecompositionError::Parse {
                pos: *offset,
                message: format!("expected a number, found `{a}`"),
            })
        }
        Some(t) => Err(DecompositionError::Parse {
            pos: t.offset,
            message: "expected a number".into(),
        }),
        None => Err(eof_error(tokens)),
    }
}

fn parse_tree(tokens: &[Token<'_>], pos: &mut usize) -> Result<RankDecomposition, DecompositionError> {
    match tokens.get(*pos) {
        Some(Token { tok: Tok::Open, .. }) => {
            *pos += 1;
            let l = parse_tree(tokens, pos)?;
            let r = parse_tree(tokens, pos)?;
            expect_close(tokens, pos)?;
            Ok(RankDecomposition::join(l, r))
        }
        Some(Token { tok: Tok::Atom(_), .. }) => Ok(RankDecomposition::leaf(parse_number(tokens, pos)?)),
        Some(t) => Err(DecompositionError::Parse {
            pos: t.offset,
            message: "unexpected `)`".into(),
        }),
        None => Err(eof_error(tokens)),
    }
}

/// Whether the leaves of `d` are exactly the vertices of `g`, each once.
/// The tree shape itself is guaranteed by construction, so this is the
/// whole of the root, partition and singleton-leaf conditions.
pub fn validate_decomposition(g: &Graph, d: &RankDecomposition) -> bool {
    let leaves = d.leaves();
    if leaves.len() != g.n() {
        return false;
    }
    let mut seen = vec![false; g.n()];
    for v in leaves {
        if v >= g.n() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Largest cut rank over the node sets of `d`.
pub fn decomposition_width(g: &Graph, d: &RankDecomposition) -> Result<usize, DecompositionError> {
    if !validate_decomposition(g, d) {
        return Err(DecompositionError::Invalid);
    }
    let mut width = 0;
    for set in d.gamma() {
        width = width.max(cut_rank(g, &set)?);
    }
    Ok(width)
}

/// Compares the ascending vertex lists of two masks lexicographically.
fn cmp_mask_lists(mut a: u32, mut b: u32) -> Ordering {
    loop {
        match (a == 0, b == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            (false, false) => {
                let (x, y) = (a.trailing_zeros(), b.trailing_zeros());
                if x != y {
                    return x.cmp(&y);
                }
                a &= a - 1;
                b &= b - 1;
            }
        }
    }
}

/// The side of a bipartition used for tie-breaking: the one with fewer
/// vertices, or the lexicographically smaller list when sizes agree.
fn tie_key(s1: u32, s2: u32) -> u32 {
    match s1.count_ones().cmp(&s2.count_ones()) {
        Ordering::Less => s1,
        Ordering::Greater => s2,
        Ordering::Equal => {
            if cmp_mask_lists(s1, s2) == Ordering::Greater {
                s2
            } else {
                s1
            }
        }
    }
}

/// Exact rank width with a witness decomposition of that width.
///
/// `W({v}) = ρ({v})` and `W(S) = max(ρ(S), min max(W(S1), W(S2)))` over
/// bipartitions of `S`. Among minimising bipartitions the one whose
/// tie-break side (see `tie_key`) has the least sorted vertex list wins.
pub fn rank_width_exact(g: &Graph) -> Result<(usize, RankDecomposition), DecompositionError> {
    let n = g.n();
    if n > MAX_EXACT_VERTICES {
        return Err(GuardError::new("vertex count for exact rank width", MAX_EXACT_VERTICES, n).into());
    }
    if n == 0 {
        return Err(DecompositionError::EmptyGraph);
    }
    let full: u32 = ((1u64 << n) - 1) as u32;
    let size = 1usize << n;
    let rho: Vec<u8> = (0..size).map(|m| cut_rank_mask(g, m as u64) as u8).collect();
    let mut w = vec![0u8; size];
    let mut choice = vec![0u32; size];
    for s in 1..size as u32 {
        if s.count_ones() == 1 {
            w[s as usize] = rho[s as usize];
            continue;
        }
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        let mut best = u8::MAX;
        let mut best_s1 = 0u32;
        let mut best_key = 0u32;
        // S1 = low | sub for every proper submask `sub` of `rest`
        let mut sub = rest;
        loop {
            sub = sub.wrapping_sub(1) & rest;
            let s1 = low | sub;
            let s2 = s ^ s1;
            let value = w[s1 as usize].max(w[s2 as usize]);
            if value < best {
                best = value;
                best_s1 = s1;
                best_key = tie_key(s1, s2);
            } else if value == best {
                let key = tie_key(s1, s2);
                if cmp_mask_lists(key, best_key) == Ordering::Less {
                    best_s1 = s1;
                    best_key = key;
                }
            }
            if sub == 0 {
                break;
            }
        }
        w[s as usize] = rho[s as usize].max(best);
        choice[s as usize] = best_s1;
    }
    let witness = build_witness(full, &choice);
    Ok((w[full as usize] as usize, witness))
}

fn build_witness(s: u32, choice: &[u32]) -> RankDecomposition {
    if s.count_ones() == 1 {
        return RankDecomposition::leaf(s.trailing_zeros() as usize);
    }
    let s1 = choice[s as usize];
    RankDecomposition::join(build_witness(s1, choice), build_witness(s ^ s1, choice))
}

/// A clique-width expression. Labels are positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CliqueExpression {
    Vertex(u32),
    AddEdges(u32, u32, Box<CliqueExpression>),
    Relabel(u32, u32, Box<CliqueExpression>),
    Union(Box<CliqueExpression>, Box<CliqueExpression>),
}

impl CliqueExpression {
    /// Largest label mentioned anywhere in the expression.
    pub fn label_count(&self) -> u32 {
        match self {
            CliqueExpression::Vertex(i) => *i,
            CliqueExpression::AddEdges(i, j, e) | CliqueExpression::Relabel(i, j, e) => {
                (*i).max(*j).max(e.label_count())
            }
            CliqueExpression::Union(a, b) => a.label_count().max(b.label_count()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            CliqueExpression::Vertex(_) => 1,
            CliqueExpression::AddEdges(_, _, e) | CliqueExpression::Relabel(_, _, e) => e.vertex_count(),
            CliqueExpression::Union(a, b) => a.vertex_count() + b.vertex_count(),
        }
    }
}

impl fmt::Display for CliqueExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliqueExpression::Vertex(i) => write!(f, "(v {i})"),
            CliqueExpression::AddEdges(i, j, e) => write!(f, "(eta {i} {j} {e})"),
            CliqueExpression::Relabel(i, j, e) => write!(f, "(rho {i} {j} {e})"),
            CliqueExpression::Union(a, b) => write!(f, "(u {a} {b})"),
        }
    }
}

pub fn parse_expression(text: &str) -> Result<CliqueExpression, DecompositionError> {
    let tokens = tokenize(text);
    let mut pos = 0;
    let e = parse_expr(&tokens, &mut pos)?;
    if let Some(t) = tokens.get(pos) {
        return Err(DecompositionError::Parse {
            pos: t.offset,
            message: "trailing input".into(),
        });
    }
    Ok(e)
}

fn parse_label(tokens: &[Token<'_>], pos: &mut usize) -> Result<u32, DecompositionError> {
    let l: u32 = parse_number(tokens, pos)?;
    if l == 0 {
        return Err(DecompositionError::ZeroLabel);
    }
    Ok(l)
}

fn parse_expr(tokens: &[Token<'_>], pos: &mut usize) -> Result<CliqueExpression, DecompositionError> {
    match tokens.get(*pos) {
        Some(Token { tok: Tok::Open, .. }) => *pos += 1,
        Some(t) => {
            return Err(DecompositionError::Parse {
                pos: t.offset,
                message: "expected `(`".into(),
            })
        }
        None => return Err(eof_error(tokens)),
    }
    let op = match tokens.get(*pos) {
        Some(Token { tok: Tok::Atom(a), .. }) => *a,
        Some(t) => {
            return Err(DecompositionError::Parse {
                pos: t.offset,
                message: "expected an operator".into(),
            })
        }
        None => return Err(eof_error(tokens)),
    };
    *pos += 1;
    let e = match op {
        "v" => CliqueExpression::Vertex(parse_label(tokens, pos)?),
        "eta" => {
            let i = parse_label(tokens, pos)?;
            let j = parse_label(tokens, pos)?;
            if i == j {
                return Err(DecompositionError::EqualLabels(i));
            }
            CliqueExpression::AddEdges(i, j, Box::new(parse_expr(tokens, pos)?))
        }
        "rho" => {
            let i = parse_label(tokens, pos)?;
            let j = parse_label(tokens, pos)?;
            CliqueExpression::Relabel(i, j, Box::new(parse_expr(tokens, pos)?))
        }
        "u" => {
            let a = parse_expr(tokens, pos)?;
            let b = parse_expr(tokens, pos)?;
            CliqueExpression::Union(Box::new(a), Box::new(b))
        }
        other => return Err(DecompositionError::UnknownOperator(other.to_string())),
    };
    expect_close(tokens, pos)?;
    Ok(e)
}

/// Builds the graph and the final label of every vertex.
pub fn evaluate_expression(e: &CliqueExpression) -> (Graph, Vec<u32>) {
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let labels = eval_into(e, &mut edges, 0);
    let mut g = Graph::new(labels.len());
    for (u, v) in edges {
        g.set_edge(u, v, true);
    }
    (g, labels)
}

/// Evaluates `e` with its vertices numbered from `base`, appending edges and
/// returning the labels of its vertices in order.
fn eval_into(e: &CliqueExpression, edges: &mut Vec<(Vertex, Vertex)>, base: usize) -> Vec<u32> {
    match e {
        CliqueExpression::Vertex(i) => vec![*i],
        CliqueExpression::AddEdges(i, j, inner) => {
            let labels = eval_into(inner, edges, base);
            for (a, &la) in labels.iter().enumerate() {
                for (b, &lb) in labels.iter().enumerate() {
                    if la == *i && lb == *j {
                        edges.push((base + a, base + b));
                    }
                }
            }
            labels
        }
        CliqueExpression::Relabel(i, j, inner) => {
            let mut labels = eval_into(inner, edges, base);
            for l in &mut labels {
                if *l == *i {
                    *l = *j;
                }
            }
            labels
        }
        CliqueExpression::Union(a, b) => {
            let mut left = eval_into(a, edges, base);
            let right = eval_into(b, edges, base + left.len());
            left.extend(right);
            left
        }
    }
}

/// K_n with two labels: add a vertex labelled 2, join it to every 1, then
/// relabel it to 1.
pub fn complete_expression(n: usize) -> Option<CliqueExpression> {
    use CliqueExpression::*;
    let mut e = Vertex(1);
    if n == 0 {
        return None;
    }
    for _ in 1..n {
        e = Relabel(2, 1, Box::new(AddEdges(1, 2, Box::new(Union(Box::new(e), Box::new(Vertex(2)))))));
    }
    Some(e)
}

/// Extends a path whose current end carries label 2 (and every earlier
/// vertex label 1) by one vertex, keeping that invariant.
fn extend_path(e: CliqueExpression) -> CliqueExpression {
    use CliqueExpression::*;
    let joined = AddEdges(2, 3, Box::new(Union(Box::new(e), Box::new(Vertex(3)))));
    Relabel(3, 2, Box::new(Relabel(2, 1, Box::new(joined))))
}

/// P_n with three labels.
pub fn path_expression(n: usize) -> Option<CliqueExpression> {
    if n == 0 {
        return None;
    }
    let mut e = CliqueExpression::Vertex(2);
    for _ in 1..n {
        e = extend_path(e);
    }
    Some(e)
}

/// C_n (n >= 3) with four labels: the first vertex keeps label 4 until the
/// final edge closes the cycle.
pub fn cycle_expression(n: usize) -> Option<CliqueExpression> {
    use CliqueExpression::*;
    if n < 3 {
        return None;
    }
    let mut e = AddEdges(4, 2, Box::new(Union(Box::new(Vertex(4)), Box::new(Vertex(2)))));
    for _ in 2..n {
        e = extend_path(e);
    }
    Some(AddEdges(2, 4, Box::new(e)))
}

/// Disjoint union of two all-1 expressions.
pub fn cograph_union(a: CliqueExpression, b: CliqueExpression) -> CliqueExpression {
    CliqueExpression::Union(Box::new(a), Box::new(b))
}

/// Complete join of two all-1 expressions, still all-1 afterwards.
pub fn cograph_join(a: CliqueExpression, b: CliqueExpression) -> CliqueExpression {
    use CliqueExpression::*;
    let b2 = Relabel(1, 2, Box::new(b));
    Relabel(2, 1, Box::new(AddEdges(1, 2, Box::new(Union(Box::new(a), Box::new(b2))))))
}

/// Named expressions used by the width checks and the tests.
pub fn expression_fixtures() -> Vec<(String, CliqueExpression)> {
    use CliqueExpression::Vertex;
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push((format!("complete-{n}"), complete_expression(n).expect("n >= 1")));
    }
    for n in 1..=7 {
        out.push((format!("path-{n}"), path_expression(n).expect("n >= 1")));
    }
    for n in 3..=8 {
        out.push((format!("cycle-{n}"), cycle_expression(n).expect("n >= 3")));
    }
    let v = || Vertex(1);
    let star = (0..4).fold(v(), |acc, _| cograph_join(acc, v()));
    out.push(("star-like-join".into(), star));
    let k22 = cograph_join(cograph_union(v(), v()), cograph_union(v(), v()));
    out.push(("complete-bipartite-2-2".into(), k22.clone()));
    let k23 = cograph_join(cograph_union(v(), v()), cograph_union(cograph_union(v(), v()), v()));
    out.push(("complete-bipartite-2-3".into(), k23));
    let nested = cograph_union(cograph_join(k22, v()), cograph_join(cograph_union(v(), v()), v()));
    out.push(("cograph-nested".into(), nested));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{all_trees, complete, cycle, path, star};
    use crate::graph::brute_force_isomorphic;

    #[test]
    fn single_vertex_decomposition() {
        let g = Graph::new(1);
        let d = RankDecomposition::leaf(0);
        assert!(validate_decomposition(&g, &d));
        assert_eq!(decomposition_width(&g, &d), Ok(0));
    }

    #[test]
    fn missing_or_repeated_leaves_are_invalid() {
        let g = path(3);
        let d = RankDecomposition::caterpillar(&[0, 1]).unwrap();
        assert!(!validate_decomposition(&g, &d));
        let d = RankDecomposition::caterpillar(&[0, 1, 1]).unwrap();
        assert!(!validate_decomposition(&g, &d));
        assert_eq!(decomposition_width(&g, &d), Err(DecompositionError::Invalid));
        let d = RankDecomposition::caterpillar(&[0, 1, 3]).unwrap();
        assert!(!validate_decomposition(&g, &d));
    }

    #[test]
    fn malformed_arenas_are_rejected() {
        let shared = vec![Node::Leaf(0), Node::Internal(0, 0)];
        assert!(RankDecomposition::new(shared, 1).is_err());
        let orphan = vec![Node::Leaf(0), Node::Leaf(1)];
        assert!(RankDecomposition::new(orphan, 0).is_err());
        let ok = vec![Node::Leaf(0), Node::Leaf(1), Node::Internal(0, 1)];
        assert!(RankDecomposition::new(ok, 2).is_ok());
    }

    #[test]
    fn caterpillar_widths() {
        let p4 = path(4);
        let d = RankDecomposition::caterpillar(&[0, 1, 2, 3]).unwrap();
        assert!(validate_decomposition(&p4, &d));
        assert_eq!(decomposition_width(&p4, &d), Ok(1));
        // prefixes {0,1} and {0,1,2} of C5 each cut two independent rows
        let d = RankDecomposition::caterpillar(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(decomposition_width(&cycle(5), &d), Ok(2));
        assert_eq!(decomposition_width(&complete(4), &RankDecomposition::caterpillar(&[2, 0, 3, 1]).unwrap()), Ok(1));
        assert_eq!(decomposition_width(&Graph::new(5), &RankDecomposition::caterpillar(&[4, 3, 2, 1, 0]).unwrap()), Ok(0));
    }

    #[test]
    fn serialisation_round_trip() {
        let d = RankDecomposition::join(
            RankDecomposition::join(RankDecomposition::leaf(0), RankDecomposition::leaf(1)),
            RankDecomposition::join(RankDecomposition::leaf(2), RankDecomposition::leaf(3)),
        );
        assert_eq!(d.to_string(), "((0 1) (2 3))");
        assert_eq!(RankDecomposition::parse("((0 1) (2 3))").unwrap().to_string(), "((0 1) (2 3))");
        assert_eq!(RankDecomposition::parse(" 7 ").unwrap().to_string(), "7");
        assert!(RankDecomposition::parse("(0 1").is_err());
        assert!(RankDecomposition::parse("(0 1 2)").is_err());
        assert!(RankDecomposition::parse("(0 x)").is_err());
    }

    #[test]
    fn exact_width_of_known_families() {
        for n in 2..=8 {
            let (w, d) = rank_width_exact(&complete(n)).unwrap();
            assert_eq!(w, 1, "K_{n}");
            assert_eq!(decomposition_width(&complete(n), &d), Ok(1));
        }
        assert_eq!(rank_width_exact(&Graph::new(6)).unwrap().0, 0);
        assert_eq!(rank_width_exact(&complete(1)).unwrap().0, 0);
        assert_eq!(rank_width_exact(&cycle(5)).unwrap().0, 2);
        assert_eq!(rank_width_exact(&cycle(4)).unwrap().0, 1);
        assert_eq!(rank_width_exact(&star(5)).unwrap().0, 1);
        for n in 1..=8 {
            for t in all_trees(n) {
                let (w, d) = rank_width_exact(&t).unwrap();
                assert!(w <= 1, "trees are distance-hereditary");
                assert!(validate_decomposition(&t, &d));
                assert_eq!(decomposition_width(&t, &d), Ok(w));
            }
        }
    }

    #[test]
    fn witness_matches_width_on_petersen_sized_input() {
        let g = crate::generate::petersen();
        let (w, d) = rank_width_exact(&g).unwrap();
        assert!(validate_decomposition(&g, &d));
        assert_eq!(decomposition_width(&g, &d), Ok(w));
        assert!(w >= 2);
    }

    #[test]
    fn exact_width_guards_and_empty() {
        assert!(rank_width_exact(&Graph::new(17)).unwrap_err().is_guard());
        assert_eq!(rank_width_exact(&Graph::new(0)).unwrap_err(), DecompositionError::EmptyGraph);
    }

    #[test]
    fn tie_break_prefers_small_lexicographic_side() {
        // every split of an edgeless graph has value 0, so the first split
        // peels off vertex 0
        let (_, d) = rank_width_exact(&Graph::new(3)).unwrap();
        assert_eq!(d.to_string(), "(0 (1 2))");
        assert_eq!(cmp_mask_lists(0b0011, 0b0101), Ordering::Less);
        assert_eq!(cmp_mask_lists(0b0001, 0b0011), Ordering::Less);
        assert_eq!(tie_key(0b0110, 0b1001), 0b1001);
    }

    #[test]
    fn expression_parsing() {
        assert_eq!(parse_expression("(v 1)").unwrap(), CliqueExpression::Vertex(1));
        let k2 = parse_expression("(eta 1 2 (u (v 1) (v 2)))").unwrap();
        let (g, labels) = evaluate_expression(&k2);
        assert_eq!(g, complete(2));
        assert_eq!(labels, vec![1, 2]);
        assert_eq!(k2.label_count(), 2);
        assert_eq!(parse_expression(&k2.to_string()).unwrap(), k2);
    }

    #[test]
    fn expression_errors() {
        assert_eq!(parse_expression("(w 1)"), Err(DecompositionError::UnknownOperator("w".into())));
        assert_eq!(parse_expression("(eta 1 1 (v 1))"), Err(DecompositionError::EqualLabels(1)));
        assert_eq!(parse_expression("(v 0)"), Err(DecompositionError::ZeroLabel));
        assert!(matches!(parse_expression("(v 1"), Err(DecompositionError::Parse { .. })));
        assert!(matches!(parse_expression("(v 1) (v 2)"), Err(DecompositionError::Parse { .. })));
        assert!(matches!(parse_expression("(u (v 1))"), Err(DecompositionError::Parse { .. })));
    }

    #[test]
    fn nested_triangle_expression() {
        let text = "(rho 2 1 (eta 1 2 (u (rho 2 1 (eta 1 2 (u (v 1) (v 2)))) (v 2))))";
        let (g, labels) = evaluate_expression(&parse_expression(text).unwrap());
        assert!(brute_force_isomorphic(&g, &complete(3)).is_some());
        assert_eq!(labels, vec![1, 1, 1]);
    }

    #[test]
    fn relabel_and_idempotent_eta() {
        let e = parse_expression("(eta 1 2 (eta 2 1 (u (v 1) (rho 3 2 (v 3)))))").unwrap();
        let (g, labels) = evaluate_expression(&e);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(labels, vec![1, 2]);
    }

    #[test]
    fn fixtures_build_the_named_graphs() {
        for n in 1..=6 {
            let (g, _) = evaluate_expression(&complete_expression(n).unwrap());
            assert!(brute_force_isomorphic(&g, &complete(n)).is_some());
        }
        for n in 1..=7 {
            let (g, _) = evaluate_expression(&path_expression(n).unwrap());
            assert!(brute_force_isomorphic(&g, &path(n)).is_some());
        }
        for n in 3..=8 {
            let (g, _) = evaluate_expression(&cycle_expression(n).unwrap());
            assert!(brute_force_isomorphic(&g, &cycle(n)).is_some(), "cycle {n}");
        }
        for (name, e) in expression_fixtures() {
            let (g, _) = evaluate_expression(&e);
            assert_eq!(g.n(), e.vertex_count(), "{name}");
            let (w, _) = rank_width_exact(&g).unwrap();
            assert!(w as u32 <= e.label_count(), "{name}");
        }
    }
}
