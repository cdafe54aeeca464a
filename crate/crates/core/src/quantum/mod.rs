//! Pauli observables on qubits, their simultaneous eigenprojectors, and
//! Born-rule simplicial distributions.

mod assignment;
mod checks;
mod matrix;
mod measurement;
mod pauli;
mod state;

pub use assignment::{AssignmentViolation, ObservableAssignment};
pub use checks::{
    is_measurement_contextual, is_state_contextual, value_assignment_exists, MeasurementReport, StateReport,
};
pub use matrix::{CMatrix, Cq};
pub use measurement::{spec_iso, ProjectiveMeasurement};
pub use pauli::{Pauli, PauliObservable};
pub use state::DensityMatrix;

use crate::cohomology::CohoError;
use crate::contextuality::CtxError;
use crate::outcomes::OutcomeError;
use crate::simpdist::SimpError;
use crate::sset::SsetError;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum QuantumError {
    #[error("{0}")]
    Parse(String),
    #[error("{0} and {1} do not commute")]
    NotCommuting(String, String),
    #[error("{0}")]
    Dimension(String),
    #[error("not a density matrix: {0}")]
    NotAState(String),
    #[error("invalid observable assignment: {0:?}")]
    InvalidAssignment(Vec<AssignmentViolation>),
    #[error(transparent)]
    Ctx(#[from] CtxError),
    #[error(transparent)]
    Coho(#[from] CohoError),
    #[error(transparent)]
    Simp(#[from] SimpError),
    #[error(transparent)]
    Outcome(#[from] OutcomeError),
    #[error(transparent)]
    Sset(#[from] SsetError),
}
