//! Weisfeiler-Leman isomorphism testing and canonisation for graphs of
//! bounded rank width.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: coloured simple graphs, text formats, and the brute-force
//!   isomorphism oracle everything else is checked against.
//! * [`f2`]: packed GF(2) linear algebra (cut matrices, rank, bases).
//! * [`wl`]: k-dimensional Weisfeiler-Leman with canonical colour ids.
//! * [`decomposition`]: rank decompositions, exact rank width, and
//!   clique-width expressions.
//! * [`split`]: split pairs, flip functions and flip extensions.
//! * [`pebble`]: an exact solver for the bijective pebble game.
//! * [`canon`]: orbit determination and individualisation-refinement
//!   canonisation.
//! * [`verify`]: the property sweeps behind the acceptance suite and the
//!   `verify` CLI command.
//!
//! ```
//! use rankwl_core::{canon, generate};
//!
//! let g = generate::path(4);
//! let h = rankwl_core::graph::apply_permutation(&g, &[3, 1, 0, 2]).unwrap();
//! assert!(canon::iso_test(&g, &h, 2).unwrap());
//! ```

use thiserror::Error;

pub mod canon;
pub mod decomposition;
pub mod f2;
pub mod generate;
pub mod graph;
pub mod pebble;
pub mod split;
pub mod verify;
pub mod wl;

pub use canon::{
    canonical_rounds, canonical_string, canonise, iso_test, orbit_partition, CanonicalForm,
};
pub use decomposition::{
    decomposition_width, evaluate_expression, parse_expression, rank_width_exact,
    validate_decomposition, CliqueExpression, RankDecomposition,
};
pub use f2::{cut_matrix, cut_rank, extend_basis, greedy_basis, rank_f2, BitMatrix, BitVector};
pub use graph::{
    apply_permutation, brute_force_isomorphic, connected_components, induced_subgraph,
    parse_graph, Graph, GraphError, Vertex, VertexSet,
};
pub use pebble::{spoiler_wins, GamePosition, GameVerdict, Player};
pub use split::{
    find_flip_extension, find_flip_function, find_split_pair, nice_split_pairs, FlipExtension,
    FlipFunction, OrderedSplitPair,
};
pub use wl::{
    colour_histogram, individualise, wl_distinguishes, wl_history, wl_stable_k, TupleColouring,
    VertexColouring,
};

/// A computation refused because its input exceeds a size cap.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{what} is {actual}, above the limit of {limit}")]
pub struct GuardError {
    pub what: &'static str,
    pub limit: usize,
    pub actual: usize,
}

impl GuardError {
    pub fn new(what: &'static str, limit: usize, actual: usize) -> Self {
        GuardError {
            what,
            limit,
            actual,
        }
    }
}

/// Any error the library reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Guard(#[from] GuardError),
    #[error(transparent)]
    F2(#[from] f2::F2Error),
    #[error(transparent)]
    Decomposition(#[from] decomposition::DecompositionError),
    #[error(transparent)]
    Split(#[from] split::SplitError),
}

impl Error {
    /// Whether this is a size-cap refusal rather than bad input.
    pub fn is_guard(&self) -> bool {
        match self {
            Error::Guard(_) => true,
            Error::Decomposition(e) => e.is_guard(),
            Error::Split(e) => e.is_guard(),
            _ => false,
        }
    }
}
