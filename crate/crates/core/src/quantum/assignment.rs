use std::collections::BTreeMap;
use std::sync::Arc;

use num::{Signed, Zero};
use serde::Serialize;

use crate::outcomes::{Distribution, OutcomeSpace, RationalDistribution, SimplicialDistribution};
use crate::rational::NonNegRational;
use crate::sset::{PresentedSSet, SimplexId, SimplexRef};

use super::measurement::spec_iso;
use super::pauli::PauliObservable;
use super::state::DensityMatrix;
use super::QuantumError;

/// Commuting tuples of Pauli observables on the nondegenerate simplices: an
/// `n`-simplex carries `(A_1, ..., A_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObservableAssignment {
    space: Arc<PresentedSSet>,
    qubits: usize,
    tuples: Vec<Vec<Vec<PauliObservable>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssignmentViolation {
    pub simplex: String,
    pub reason: String,
}

/// `d_i (A_1, ..., A_n)`: drop the first or last entry, or multiply neighbours.
fn face_tuple(t: &[PauliObservable], i: usize) -> Result<Vec<PauliObservable>, QuantumError> {
    let n = t.len();
    let mut out = t.to_vec();
    if i == 0 {
        out.remove(0);
    } else if i == n {
        out.pop();
    } else {
        let prod = t[i - 1].mul(&t[i])?;
        out.splice(i - 1..=i, [prod]);
    }
    Ok(out)
}

impl ObservableAssignment {
    /// Tuples read off the spines, given one observable per nondegenerate edge.
    pub fn from_edges(space: Arc<PresentedSSet>, edges: &BTreeMap<SimplexId, PauliObservable>) -> Result<Self, QuantumError> {
        let qubits = edges.values().next().map(|a| a.qubits()).ok_or_else(|| QuantumError::Dimension("no observables".into()))?;
        let mut tuples: Vec<Vec<Vec<PauliObservable>>> = vec![vec![vec![]; space.count(0)]];
        for n in 1..=space.max_dim() {
            let mut row = vec![];
            for s in space.simplices(n) {
                let mut t = vec![];
                for e in space.spine(&SimplexRef::from(s))? {
                    if e.is_degenerate() {
                        t.push(PauliObservable::identity(qubits));
                    } else {
                        let a = edges.get(&e.base).ok_or_else(|| QuantumError::Parse(format!("no observable on edge {}", space.label(e.base))))?;
                        t.push(a.clone());
                    }
                }
                row.push(t);
            }
            tuples.push(row);
        }
        Ok(ObservableAssignment { space, qubits, tuples })
    }

    /// Each nondegenerate edge label is read as a Pauli word, e.g. `"XI"` or `"-YY"`.
    pub fn from_edge_labels(space: Arc<PresentedSSet>) -> Result<Self, QuantumError> {
        let edges = space
            .simplices(1)
            .map(|e| Ok((e, space.label(e).parse::<PauliObservable>()?)))
            .collect::<Result<BTreeMap<_, _>, QuantumError>>()?;
        Self::from_edges(space, &edges)
    }

    /// Explicit tuples per nondegenerate simplex, indexed `[dim][id]`.
    pub fn from_tuples(space: Arc<PresentedSSet>, qubits: usize, tuples: Vec<Vec<Vec<PauliObservable>>>) -> Result<Self, QuantumError> {
        if tuples.len() != space.max_dim() + 1 || (0..=space.max_dim()).any(|n| tuples[n].len() != space.count(n)) {
            return Err(QuantumError::Dimension("table does not match the space".into()));
        }
        Ok(ObservableAssignment { space, qubits, tuples })
    }

    pub fn space(&self) -> &Arc<PresentedSSet> {
        &self.space
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn tuple(&self, s: SimplexId) -> &[PauliObservable] {
        &self.tuples[s.dim][s.id]
    }

    pub fn edge(&self, e: SimplexId) -> &PauliObservable {
        &self.tuples[1][e.id][0]
    }

    /// The tuple of any simplex, through its spine.
    pub fn tuple_at(&self, r: &SimplexRef) -> Result<Vec<PauliObservable>, QuantumError> {
        if !r.is_degenerate() {
            return Ok(self.tuple(r.base).to_vec());
        }
        Ok(self
            .space
            .spine(r)?
            .iter()
            .map(|e| if e.is_degenerate() { PauliObservable::identity(self.qubits) } else { self.edge(e.base).clone() })
            .collect())
    }

    /// Empty exactly when every tuple is a commuting tuple of involutions on
    /// the right register and every face relation holds.
    pub fn validate(&self) -> Vec<AssignmentViolation> {
        let x = &self.space;
        let mut out = vec![];
        let mut bad = |s: SimplexId, reason: String| out.push(AssignmentViolation { simplex: x.label(s).to_string(), reason });
        for s in x.all_simplices() {
            let t = self.tuple(s);
            if t.len() != s.dim {
                bad(s, format!("{}-simplex carries {} observables", s.dim, t.len()));
                continue;
            }
            if let Some(a) = t.iter().find(|a| a.qubits() != self.qubits) {
                bad(s, format!("{a} does not act on {} qubits", self.qubits));
                continue;
            }
            let mut commuting = true;
            for (i, a) in t.iter().enumerate() {
                for b in &t[i + 1..] {
                    if !a.commutes_with(b) {
                        bad(s, format!("{a} and {b} do not commute"));
                        commuting = false;
                    }
                }
            }
            if !commuting || s.dim < 2 {
                continue;
            }
            for i in 0..=s.dim {
                let want = match face_tuple(t, i) {
                    Ok(w) => w,
                    Err(e) => {
                        bad(s, e.to_string());
                        continue;
                    }
                };
                match self.tuple_at(x.raw_face(s, i)) {
                    Ok(have) if have == want => {}
                    Ok(have) => bad(s, format!("face {i} carries {} but the tuple gives {}", show(&have), show(&want))),
                    Err(e) => bad(s, e.to_string()),
                }
            }
        }
        out
    }

    /// `p_σ(a) = Tr(ρ Π_σ(a))`.
    pub fn born(&self, rho: &DensityMatrix) -> Result<RationalDistribution, QuantumError> {
        let report = self.validate();
        if !report.is_empty() {
            return Err(QuantumError::InvalidAssignment(report));
        }
        if rho.qubits != self.qubits {
            return Err(QuantumError::Dimension(format!("state on {} qubits, observables on {}", rho.qubits, self.qubits)));
        }
        let x = &self.space;
        let mut table = vec![];
        for n in 0..=x.max_dim() {
            let mut row = vec![];
            for s in x.simplices(n) {
                let m = spec_iso(self.tuple(s), self.qubits)?;
                let mut pairs = vec![];
                for (a, p) in &m.projectors {
                    let v = rho.expectation(p);
                    if !v.is_real() || v.re.is_negative() {
                        return Err(QuantumError::NotAState(format!("Tr(ρΠ) = {v} at {}", x.label(s))));
                    }
                    if !v.re.is_zero() {
                        pairs.push((a.clone(), NonNegRational::new(v.re).expect("checked nonnegative")));
                    }
                }
                row.push(Distribution::from_pairs(pairs));
            }
            table.push(row);
        }
        Ok(SimplicialDistribution::new(x.clone(), OutcomeSpace::Nerve(2), table)?)
    }
}

fn show(t: &[PauliObservable]) -> String {
    let parts: Vec<String> = t.iter().map(|a| a.to_string()).collect();
    format!("({})", parts.join(", "))
}
