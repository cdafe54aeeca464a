//! Presented simplicial sets: nondegenerate simplices with face tables.

mod builtin;
mod glue;
mod map;
mod presented;
mod subspace;
pub mod word;

pub use builtin::{builtin, Builtin};
pub use glue::{glue, glue_with_map, quotient, quotient_with_map, GlueResult};
pub use map::{find_isomorphism, SpaceMap};
pub use presented::{PresentedSSet, SimplexId, SimplexRef, DEFAULT_MAX_DIM};
pub use subspace::Subspace;
pub use word::{Letter, OperatorWord, WordError};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SsetError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("a simplex needs at least two faces")]
    EmptyFaceList,
    #[error("dimension {dim} exceeds max_dim {max_dim}")]
    DimensionTooLarge { dim: usize, max_dim: usize },
    #[error("face {face:?} of a {dim}-simplex is missing or has the wrong dimension")]
    UnknownFace { dim: usize, face: SimplexRef },
    #[error("simplicial identity d_{i} d_{j} = d_{} d_{i} fails at {simplex}", j - 1)]
    IdentityViolated { simplex: SimplexId, i: usize, j: usize },
    #[error("cannot identify simplices of dimensions {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("identification {0:?} ~ {1:?} would force a further collapse that is not supported")]
    UnsupportedIdentification(SimplexRef, SimplexRef),
    #[error("subspace is not closed under faces: {0} is missing")]
    NotFaceClosed(SimplexId),
    #[error("subspace is empty")]
    EmptySubspace,
    #[error("map is not simplicial at {simplex}, face {face}")]
    NotSimplicial { simplex: SimplexId, face: usize },
    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),
    #[error("{0}")]
    Malformed(String),
}
