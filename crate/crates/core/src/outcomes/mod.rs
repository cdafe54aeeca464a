//! Outcome spaces, semirings and simplicial distributions.

mod dist;
mod semiring;
mod simplicial;
mod space;

pub use dist::Distribution;
pub use semiring::{support_map, Boolean, Semiring};
pub use simplicial::{circle_embed, Mismatch, RationalDistribution, SimplicialDistribution, SimplicialReport};
pub use space::{Outcome, OutcomeMap, OutcomeSpace};

use crate::sset::{SimplexId, SsetError};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OutcomeError {
    #[error(transparent)]
    Sset(#[from] SsetError),
    #[error("{0}")]
    Malformed(String),
    #[error("not a map of outcome spaces: {0}")]
    NotAMap(String),
    #[error("map of values is not a semiring homomorphism")]
    NotAHomomorphism,
    #[error("no distribution given or derivable for simplex {0}")]
    MissingSimplex(SimplexId),
    #[error("table violates the simplicial conditions: {0:?}")]
    NotSimplicial(SimplicialReport),
}
