use std::sync::Arc;

use crate::limits::Limits;
use crate::outcomes::{OutcomeMap, Semiring, SimplicialDistribution};
use crate::par::Execution;
use crate::sset::{PresentedSSet, SpaceMap};

use super::deterministic::{enumerate_deterministic_general, DeterministicAssignment};
use super::SimpError;

/// Deterministic assignments `s` with `p_σ(s_σ) != 0` for every nondegenerate `σ`.
pub fn support<S: Semiring>(
    p: &SimplicialDistribution<S>,
    limits: &Limits,
    mode: Execution,
) -> Result<Vec<DeterministicAssignment>, SimpError> {
    enumerate_deterministic_general(p.space(), p.outcome(), |s, t| p.get(s).contains(t), limits, mode)
}

/// `p ∘ f` for `f: Z -> X`.
pub fn restrict<S: Semiring>(
    p: &SimplicialDistribution<S>,
    f: &SpaceMap,
    source: Arc<PresentedSSet>,
) -> Result<SimplicialDistribution<S>, SimpError> {
    let table = (0..=source.max_dim())
        .map(|n| source.simplices(n).map(|s| p.at(f.image(s))).collect())
        .collect();
    Ok(SimplicialDistribution::new(source, p.outcome(), table)?)
}

/// Valuewise pushforward along a map of outcome spaces.
pub fn pushforward_outcomes<S: Semiring>(
    p: &SimplicialDistribution<S>,
    g: &OutcomeMap,
) -> Result<SimplicialDistribution<S>, SimpError> {
    if g.from != p.outcome() {
        return Err(SimpError::Malformed(format!("outcome map starts at {}, distribution lives on {}", g.from, p.outcome())));
    }
    let table = p.table().iter().map(|row| row.iter().map(|d| d.pushforward(|t| g.apply(t))).collect()).collect();
    Ok(SimplicialDistribution::new(p.space().clone(), g.to, table)?)
}
