use crate::limits::Limits;
use crate::outcomes::{Outcome, RationalDistribution};
use crate::par::Execution;
use crate::simpdist::{support, DeterministicAssignment};
use crate::sset::SimplexId;

use super::CtxError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongReport {
    pub strongly_contextual: bool,
    pub support: Vec<DeterministicAssignment>,
}

pub fn is_strongly_contextual(p: &RationalDistribution, limits: &Limits) -> Result<StrongReport, CtxError> {
    let s = support(p, limits, Execution::default())?;
    Ok(StrongReport { strongly_contextual: s.is_empty(), support: s })
}

/// A locally possible outcome that no global support assignment attains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalWitness {
    pub simplex: SimplexId,
    pub outcome: Outcome,
}

/// `Some(witness)` when the Boolean pushforward of `p` is contextual.
pub fn logical_witness(p: &RationalDistribution, limits: &Limits) -> Result<Option<LogicalWitness>, CtxError> {
    let b = p.support_boolean();
    let global = support(&b, limits, Execution::default())?;
    for s in p.space().all_simplices() {
        for t in b.get(s).support() {
            if !global.iter().any(|r| r.get(s) == t) {
                return Ok(Some(LogicalWitness { simplex: s, outcome: t.clone() }));
            }
        }
    }
    Ok(None)
}

pub fn is_logically_contextual(p: &RationalDistribution, limits: &Limits) -> Result<bool, CtxError> {
    Ok(logical_witness(p, limits)?.is_some())
}
