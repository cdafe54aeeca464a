//! Deterministic and classical distributions, supports, restriction and pushforward.

mod classical;
mod deterministic;
mod support;

pub use classical::ClassicalDistribution;
pub use deterministic::{
    count_deterministic_nerve, enumerate_deterministic, enumerate_deterministic_general,
    enumerate_deterministic_pinned, DeterministicAssignment,
};
pub use support::{pushforward_outcomes, restrict, support};

use crate::outcomes::OutcomeError;
use crate::sset::SsetError;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SimpError {
    #[error(transparent)]
    Outcome(#[from] OutcomeError),
    #[error(transparent)]
    Sset(#[from] SsetError),
    #[error("enumeration needs {needed} assignments, over the cap of {cap}")]
    ResourceLimit { needed: u128, cap: u128 },
    #[error("assignment is not a simplicial map")]
    InvalidAssignment,
    #[error("weights do not sum to one")]
    Unnormalized,
    #[error("{0}")]
    Unsupported(String),
    #[error("{0}")]
    Malformed(String),
}
