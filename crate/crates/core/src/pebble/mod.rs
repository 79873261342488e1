//! Exact solver for the bijective pebble game.
//!
//! A position is the set of pebbled pairs `(v, w)`, `v ∈ V(G)`, `w ∈ V(H)`.
//! Order and duplicate pebbles do not affect who wins, so positions are
//! sorted and deduplicated. The solver computes the greatest set of
//! positions from which Duplicator survives:
//!
//! * the position is a partial isomorphism,
//! * every position reached by lifting one pebble pair survives, and
//! * with a pebble pair still in hand, Duplicator has a bijection all of
//!   whose answers survive, i.e. a perfect matching in the bipartite graph
//!   of surviving one-pair extensions.
//!
//! Duplicator wins iff the empty position survives.

use std::collections::HashMap;
use std::fmt;

use crate::graph::{Graph, Vertex};
use crate::wl::wl_distinguishes;
use crate::GuardError;

pub mod matching;

/// Largest vertex count the solver accepts.
pub const MAX_GAME_VERTICES: usize = 8;
/// Largest pebble count the solver accepts.
pub const MAX_PEBBLES: usize = 4;
/// Largest WL dimension `verify_theorem_wl_game` accepts (it plays with one
/// more pebble).
pub const MAX_GAME_DIMENSION: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    Spoiler,
    Duplicator,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Spoiler => "Spoiler",
            Player::Duplicator => "Duplicator",
        })
    }
}

/// Sorted, duplicate-free set of pebbled pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GamePosition {
    pairs: Vec<(Vertex, Vertex)>,
}

impl GamePosition {
    pub fn new<I: IntoIterator<Item = (Vertex, Vertex)>>(pairs: I) -> Self {
        let mut pairs: Vec<_> = pairs.into_iter().collect();
        pairs.sort_unstable();
        pairs.dedup();
        GamePosition { pairs }
    }

    pub fn empty() -> Self {
        GamePosition::default()
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn with(&self, pair: (Vertex, Vertex)) -> GamePosition {
        GamePosition::new(self.pairs.iter().copied().chain([pair]))
    }

    pub fn without(&self, pair: (Vertex, Vertex)) -> GamePosition {
        GamePosition {
            pairs: self.pairs.iter().copied().filter(|&p| p != pair).collect(),
        }
    }
}

impl fmt::Display for GamePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, w)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}->{w}")?;
        }
        f.write_str("}")
    }
}

/// Spoiler's winning choice at a position Duplicator cannot hold.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SpoilerMove {
    /// The position itself is not a partial isomorphism.
    Immediate,
    /// Lift this pair; the smaller position is already lost.
    Remove((Vertex, Vertex)),
    /// Vertices of `G` that no bijection can send to surviving answers all
    /// at once (fewer surviving answers than vertices). Spoiler places his
    /// next pebble on whichever of them the bijection maps badly.
    Place(Vec<Vertex>),
}

impl fmt::Display for SpoilerMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpoilerMove::Immediate => f.write_str("already lost"),
            SpoilerMove::Remove((v, w)) => write!(f, "remove {v}->{w}"),
            SpoilerMove::Place(s) => {
                let list: Vec<String> = s.iter().map(|v| v.to_string()).collect();
                write!(f, "place on one of {{{}}}", list.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameVerdict {
    pub winner: Player,
    /// For a Spoiler win, the winning move at every lost reachable-size
    /// position, sorted by position. Empty for Duplicator wins.
    pub digest: Vec<(GamePosition, SpoilerMove)>,
}

impl GameVerdict {
    /// Spoiler's move from the empty position, if he wins.
    pub fn opening(&self) -> Option<&SpoilerMove> {
        self.digest.iter().find(|(p, _)| p.is_empty()).map(|(_, m)| m)
    }
}

/// Whether `p` fails to be a colour-, equality- and edge-preserving partial
/// map from `g` to `h`.
pub fn position_is_immediate_loss(g: &Graph, h: &Graph, p: &GamePosition) -> bool {
    let pairs = p.pairs();
    pairs.iter().enumerate().any(|(i, &(v, w))| {
        g.colour(v) != h.colour(w)
            || pairs[i + 1..].iter().any(|&(v2, w2)| {
                (v == v2) != (w == w2) || g.is_adjacent(v, v2) != h.is_adjacent(w, w2)
            })
    })
}

fn check_game_guard(g: &Graph, h: &Graph, pebbles: usize) -> Result<(), GuardError> {
    let n = g.n().max(h.n());
    if n > MAX_GAME_VERTICES {
        return Err(GuardError::new("pebble game vertex count", MAX_GAME_VERTICES, n));
    }
    if pebbles > MAX_PEBBLES {
        return Err(GuardError::new("pebble count", MAX_PEBBLES, pebbles));
    }
    Ok(())
}

/// Pairs packed one byte each, `v * n + w + 1`, in sorted order; zero bytes
/// pad. Needs `n <= 8` and at most four pairs.
fn pack(pairs: &[(Vertex, Vertex)], n: usize) -> u32 {
    pairs
        .iter()
        .fold(0u32, |key, &(v, w)| (key << 8) | (v * n + w + 1) as u32)
}

struct Solver<'a> {
    g: &'a Graph,
    h: &'a Graph,
    n: usize,
    pebbles: usize,
    positions: Vec<GamePosition>,
    index: HashMap<u32, usize>,
}

impl<'a> Solver<'a> {
    fn new(g: &'a Graph, h: &'a Graph, pebbles: usize) -> Self {
        let mut s = Solver {
            g,
            h,
            n: g.n(),
            pebbles,
            positions: Vec::new(),
            index: HashMap::new(),
        };
        s.enumerate(GamePosition::empty(), 0);
        s
    }

    /// Every partial isomorphism with at most `pebbles` pairs, grown in
    /// increasing pair order. Supersets of lost positions are lost, so
    /// pruning at the first failure is exact.
    fn enumerate(&mut self, p: GamePosition, next: usize) {
        let key = pack(p.pairs(), self.n);
        self.index.insert(key, self.positions.len());
        self.positions.push(p.clone());
        if p.len() == self.pebbles {
            return;
        }
        for code in next..self.n * self.n {
            let pair = (code / self.n, code % self.n);
            let q = p.with(pair);
            if !position_is_immediate_loss(self.g, self.h, &q) {
                self.enumerate(q, code + 1);
            }
        }
    }

    fn lookup(&self, p: &GamePosition) -> Option<usize> {
        self.index.get(&pack(p.pairs(), self.n)).copied()
    }

    /// Why `p` cannot be held given the current survivors, if it cannot.
    fn refute(&self, p: &GamePosition, alive: &[bool]) -> Option<SpoilerMove> {
        for &pair in p.pairs() {
            let sub = p.without(pair);
            if !self.lookup(&sub).is_some_and(|i| alive[i]) {
                return Some(SpoilerMove::Remove(pair));
            }
        }
        if p.len() < self.pebbles {
            let adj: Vec<Vec<usize>> = (0..self.n)
                .map(|v| {
                    (0..self.n)
                        .filter(|&w| self.lookup(&p.with((v, w))).is_some_and(|i| alive[i]))
                        .collect()
                })
                .collect();
            if let Some(s) = matching::hall_violator(self.n, &adj) {
                return Some(SpoilerMove::Place(s));
            }
        }
        None
    }

    fn solve(&self) -> GameVerdict {
        let mut alive = vec![true; self.positions.len()];
        let mut moves: Vec<Option<SpoilerMove>> = vec![None; self.positions.len()];
        loop {
            let mut changed = false;
            for i in 0..self.positions.len() {
                if alive[i] {
                    if let Some(m) = self.refute(&self.positions[i], &alive) {
                        alive[i] = false;
                        moves[i] = Some(m);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if alive[0] {
            return GameVerdict {
                winner: Player::Duplicator,
                digest: Vec::new(),
            };
        }
        let mut digest: Vec<(GamePosition, SpoilerMove)> = self
            .positions
            .iter()
            .zip(moves)
            .filter_map(|(p, m)| m.map(|m| (p.clone(), m)))
            .collect();
        digest.sort_by(|a, b| a.0.cmp(&b.0));
        GameVerdict {
            winner: Player::Spoiler,
            digest,
        }
    }
}

/// Winner of the bijective game with `pebbles` pebble pairs on `g` and `h`
/// from the empty position. Different vertex counts leave Duplicator
/// without a bijection, so Spoiler wins at once.
pub fn spoiler_wins(g: &Graph, h: &Graph, pebbles: usize) -> Result<GameVerdict, GuardError> {
    check_game_guard(g, h, pebbles)?;
    if g.n() != h.n() {
        return Ok(GameVerdict {
            winner: Player::Spoiler,
            digest: vec![(GamePosition::empty(), SpoilerMove::Place((0..g.n()).collect()))],
        });
    }
    Ok(Solver::new(g, h, pebbles).solve())
}

/// Whether k-WL and the game with `k + 1` pebbles agree on `(g, h)`.
pub fn verify_theorem_wl_game(g: &Graph, h: &Graph, k: usize) -> Result<bool, GuardError> {
    if k > MAX_GAME_DIMENSION {
        return Err(GuardError::new("WL dimension for the game check", MAX_GAME_DIMENSION, k));
    }
    let verdict = spoiler_wins(g, h, k + 1)?;
    Ok(wl_distinguishes(g, h, k)? == (verdict.winner == Player::Spoiler))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle, path, random_graph, stream_rng};

    fn two_triangles() -> Graph {
        cycle(3).disjoint_union(&cycle(3))
    }

    #[test]
    fn immediate_loss_examples() {
        let g = path(3).with_colours(vec![0, 1, 0]).unwrap();
        let h = path(3);
        assert!(!position_is_immediate_loss(&g, &h, &GamePosition::empty()));
        assert!(position_is_immediate_loss(&g, &h, &GamePosition::new([(1, 1)])));
        assert!(!position_is_immediate_loss(&g, &h, &GamePosition::new([(0, 0)])));
        let e = Graph::new(3);
        assert!(position_is_immediate_loss(&h, &e, &GamePosition::new([(0, 0), (1, 1)])));
        assert!(position_is_immediate_loss(&e, &e, &GamePosition::new([(0, 0), (0, 1)])));
        assert!(!position_is_immediate_loss(&e, &e, &GamePosition::new([(0, 1), (2, 0)])));
    }

    #[test]
    fn positions_are_canonical() {
        let p = GamePosition::new([(2, 1), (0, 0), (2, 1)]);
        assert_eq!(p.pairs(), &[(0, 0), (2, 1)]);
        assert_eq!(p.to_string(), "{0->0,2->1}");
        assert_eq!(p.without((0, 0)).pairs(), &[(2, 1)]);
    }

    #[test]
    fn identical_graphs_go_to_duplicator() {
        for k in 1..=4 {
            assert_eq!(spoiler_wins(&complete(2), &complete(2), k).unwrap().winner, Player::Duplicator);
        }
        let g = cycle(5);
        assert_eq!(spoiler_wins(&g, &g, 3).unwrap().winner, Player::Duplicator);
    }

    #[test]
    fn hexagon_versus_two_triangles() {
        let (c6, t) = (cycle(6), two_triangles());
        assert_eq!(spoiler_wins(&c6, &t, 2).unwrap().winner, Player::Duplicator);
        let v = spoiler_wins(&c6, &t, 3).unwrap();
        assert_eq!(v.winner, Player::Spoiler);
        assert!(v.opening().is_some());
        assert!(verify_theorem_wl_game(&c6, &t, 1).unwrap());
        assert!(verify_theorem_wl_game(&c6, &t, 2).unwrap());
    }

    #[test]
    fn path_versus_triangle() {
        assert_eq!(spoiler_wins(&path(3), &complete(3), 2).unwrap().winner, Player::Spoiler);
        // one pebble only compares colour counts
        assert_eq!(spoiler_wins(&path(3), &complete(3), 1).unwrap().winner, Player::Duplicator);
    }

    #[test]
    fn different_orders_lose_at_once() {
        let v = spoiler_wins(&path(3), &path(4), 1).unwrap();
        assert_eq!(v.winner, Player::Spoiler);
    }

    #[test]
    fn guards() {
        assert!(spoiler_wins(&Graph::new(9), &Graph::new(9), 2).is_err());
        assert!(spoiler_wins(&path(3), &path(3), 5).is_err());
        assert!(verify_theorem_wl_game(&path(3), &path(3), 4).is_err());
    }

    #[test]
    fn symmetric_and_monotone_on_random_pairs() {
        for stream in 0..40 {
            let mut rng = stream_rng(21, stream);
            let n = 3 + stream as usize % 3;
            let g = random_graph(&mut rng, n, 0.5);
            let h = random_graph(&mut rng, n, 0.5);
            let mut spoiler_before = false;
            for k in 1..=3 {
                let a = spoiler_wins(&g, &h, k).unwrap().winner;
                let b = spoiler_wins(&h, &g, k).unwrap().winner;
                assert_eq!(a, b, "symmetry, stream {stream}, k {k}");
                let spoiler = a == Player::Spoiler;
                assert!(!spoiler_before || spoiler, "monotone, stream {stream}");
                spoiler_before = spoiler;
            }
            assert!(verify_theorem_wl_game(&g, &h, 1).unwrap());
            assert!(verify_theorem_wl_game(&g, &h, 2).unwrap());
        }
    }
}
