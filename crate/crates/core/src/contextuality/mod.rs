//! Noncontextuality tests, extensions, gluing and facet computations.

mod chsh;
mod discrete;
mod extension;
mod facets;
mod gluing;
mod strong;
mod verdict;

pub use chsh::{chsh_check, chsh_from_marginals, ChshReport, XOR_LABELS};
pub use discrete::{discrete_embed, DiscreteScenario, ScenarioTable};
pub use extension::{
    extend_boundary_delta3, nonsignaling_system, project_onto, solve_extension, Extension, ExtensionCertificate,
    ExtensionProblem,
};
pub use facets::{classical_facets, facet_coordinates, FacetMethod, DD_VERTEX_LIMIT};
pub use gluing::{glue_classical, mixture_by_gluing, simplex_classical};
pub use strong::{is_logically_contextual, is_strongly_contextual, logical_witness, LogicalWitness, StrongReport};
pub use verdict::{is_noncontextual, SeparatingFunctional, Verdict};

use crate::limits::Limits;
use crate::outcomes::{OutcomeError, RationalDistribution};
use crate::par::{self, Execution};
use crate::simpdist::SimpError;
use crate::sset::SsetError;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CtxError {
    #[error(transparent)]
    Simp(#[from] SimpError),
    #[error(transparent)]
    Outcome(#[from] OutcomeError),
    #[error(transparent)]
    Sset(#[from] SsetError),
    #[error("{0}")]
    Malformed(String),
    #[error("no simplex labelled {0:?}")]
    MissingContext(String),
    #[error("distributions disagree on the intersection")]
    Incompatible,
    #[error("gluing needs a semifield")]
    NotSemifield,
}

impl CtxError {
    /// The enumeration cap was hit.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, CtxError::Simp(SimpError::ResourceLimit { .. }))
    }
}

/// Decides many distributions at once, in input order.
pub fn classify_all(ps: &[RationalDistribution], limits: &Limits, mode: Execution) -> Vec<Result<Verdict, CtxError>> {
    par::map(ps, mode, |p| is_noncontextual(p, limits))
}
