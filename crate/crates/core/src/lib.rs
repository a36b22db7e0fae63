//! Distance games ⟨D, S⟩ on graphs.
//!
//! A move colours an empty vertex. Left places blue stones and Right places
//! red ones. A vertex is forbidden when it lies at a distance in `D` from an
//! opposite-coloured stone or at a distance in `S` from a same-coloured one.
//! Under normal play the player without a legal move loses.
//!
//! The crate provides the game core ([`graph`], [`rules`]), an exact
//! solver ([`solver`]), the forbidden-vertex gadgets ([`gadgets`]), the
//! hardness reductions ([`reductions`]) and a play-for-play checker for
//! them ([`verifier`], [`corpus`]).

pub mod cli;
pub mod corpus;
pub mod dot;
pub mod error;
pub mod format;
pub mod gadgets;
pub mod generate;
pub mod graph;
pub mod reductions;
pub mod rules;
pub mod solver;
pub mod verifier;

pub use error::{Error, Result};
pub use graph::{Distance, Graph, VertexId};
pub use reductions::{ReducedInstance, Reduction, SVariant};
pub use rules::{Bipartition, Board, Colour, Player, Position, Ruleset, Stones};
pub use solver::{BestMove, Outcome, Solver};
pub use verifier::{verify, DepthCap, VerificationReport};
