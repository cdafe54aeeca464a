use std::collections::BTreeMap;

use crate::cohomology::{cl_witness, WitnessVerdict};
use crate::contextuality::{is_logically_contextual, is_noncontextual, is_strongly_contextual, Verdict};
use crate::limits::Limits;
use crate::outcomes::OutcomeSpace;
use crate::simpdist::{enumerate_deterministic_pinned, DeterministicAssignment};
use crate::sset::Subspace;

use super::assignment::ObservableAssignment;
use super::state::DensityMatrix;
use super::QuantumError;

#[derive(Clone, Debug)]
pub struct StateReport {
    pub verdict: Verdict,
    pub strongly_contextual: bool,
    pub logically_contextual: bool,
}

pub fn is_state_contextual(a: &ObservableAssignment, rho: &DensityMatrix, limits: &Limits) -> Result<StateReport, QuantumError> {
    let p = a.born(rho)?;
    Ok(StateReport {
        verdict: is_noncontextual(&p, limits)?,
        strongly_contextual: is_strongly_contextual(&p, limits)?.strongly_contextual,
        logically_contextual: is_logically_contextual(&p, limits)?,
    })
}

#[derive(Clone, Debug)]
pub struct MeasurementReport {
    /// Strong contextuality of each supplied state, in order.
    pub sampled: Vec<bool>,
    pub witness: Option<WitnessVerdict>,
    /// Holds for every state: the witness succeeded on a subspace whose
    /// observables are all `±1`, so `p|_Z` does not depend on the state.
    pub all_states: bool,
}

/// Strong contextuality for the supplied states, plus the cohomological
/// witness on `z`. Sampling states is evidence only.
pub fn is_measurement_contextual(
    a: &ObservableAssignment,
    states: &[DensityMatrix],
    z: Option<&Subspace>,
    limits: &Limits,
) -> Result<MeasurementReport, QuantumError> {
    let mut sampled = vec![];
    for rho in states {
        let p = a.born(rho)?;
        sampled.push(is_strongly_contextual(&p, limits)?.strongly_contextual);
    }
    let (witness, all_states) = match z {
        None => (None, false),
        Some(z) => {
            let rho = states.first().cloned().unwrap_or_else(|| DensityMatrix::maximally_mixed(a.qubits()));
            let w = cl_witness(&a.born(&rho)?, z, limits)?;
            let scalar = z.iter().filter(|s| s.dim == 1).all(|e| a.edge(e).is_scalar());
            (Some(w.verdict), scalar && w.verdict == WitnessVerdict::StronglyContextual)
        }
    };
    Ok(MeasurementReport { sampled, witness, all_states })
}

/// An outcome assignment to the observables, additive on every context, with
/// the given edge labels pinned.
pub fn value_assignment_exists(
    a: &ObservableAssignment,
    pins: &[(&str, u32)],
    limits: &Limits,
) -> Result<Option<DeterministicAssignment>, QuantumError> {
    let x = a.space();
    let mut map = BTreeMap::new();
    for (label, v) in pins {
        let e = x
            .find_label(label)
            .filter(|e| e.dim == 1)
            .ok_or_else(|| QuantumError::Parse(format!("no edge labelled {label:?}")))?;
        map.insert(e, *v);
    }
    let all = enumerate_deterministic_pinned(x, OutcomeSpace::Nerve(2), &map, limits)?;
    Ok(all.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::builtin;
    use std::sync::Arc;

    fn mermin(name: &str) -> ObservableAssignment {
        ObservableAssignment::from_edge_labels(Arc::new(builtin(name).unwrap())).unwrap()
    }

    #[test]
    fn bell_state_on_the_square_is_strongly_contextual() {
        let a = mermin("mermin_square_state_dep");
        assert!(a.validate().is_empty());
        let r = is_state_contextual(&a, &DensityMatrix::bell_phi_plus(), &Limits::default()).unwrap();
        assert!(r.strongly_contextual && r.logically_contextual && r.verdict.is_contextual());
    }

    #[test]
    fn state_independent_square_has_no_value_assignment() {
        let a = mermin("mermin_square_state_indep");
        assert!(a.validate().is_empty());
        let l = Limits::default();
        assert!(value_assignment_exists(&a, &[("-II", 1)], &l).unwrap().is_none());
        assert!(value_assignment_exists(&a, &[("-II", 0)], &l).unwrap().is_some());
        let z = Subspace::designated(a.space(), "loop").unwrap();
        let m = is_measurement_contextual(&a, &[DensityMatrix::maximally_mixed(2)], Some(&z), &l).unwrap();
        assert_eq!(m.witness, Some(WitnessVerdict::StronglyContextual));
        assert!(m.all_states);
        assert_eq!(m.sampled, vec![true]);
    }
}
