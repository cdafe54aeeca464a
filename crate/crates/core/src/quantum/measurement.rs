use std::collections::BTreeMap;

use crate::outcomes::{Outcome, OutcomeSpace};
use crate::rational::Q;

use super::matrix::{CMatrix, Cq};
use super::pauli::PauliObservable;
use super::QuantumError;

/// Outcome tuple `a ∈ Z_2^n` to projector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveMeasurement {
    pub dim: usize,
    pub projectors: BTreeMap<Outcome, CMatrix>,
}

impl ProjectiveMeasurement {
    /// Hermitian idempotents, pairwise orthogonal, summing to the identity.
    pub fn is_valid(&self) -> bool {
        let ps: Vec<&CMatrix> = self.projectors.values().collect();
        let sum = ps.iter().fold(CMatrix::zeros(self.dim), |acc, p| acc.add(p));
        sum == CMatrix::identity(self.dim)
            && ps.iter().all(|p| p.is_hermitian() && p.is_idempotent())
            && ps.iter().enumerate().all(|(i, p)| ps[i + 1..].iter().all(|q| p.mul(q).is_zero()))
    }

    /// `A_i = Σ_a (-1)^{a_i} Π(a)`.
    pub fn observable(&self, i: usize) -> CMatrix {
        self.projectors.iter().fold(CMatrix::zeros(self.dim), |acc, (a, p)| {
            if a[i] == 0 {
                acc.add(p)
            } else {
                acc.sub(p)
            }
        })
    }

    pub fn get(&self, a: &[u32]) -> Option<&CMatrix> {
        self.projectors.get(a)
    }
}

/// `Π(a) = Π_i (1 + (-1)^{a_i} A_i) / 2` for a commuting tuple of involutions.
pub fn spec_iso(tuple: &[PauliObservable], qubits: usize) -> Result<ProjectiveMeasurement, QuantumError> {
    for a in tuple {
        if a.qubits() != qubits {
            return Err(QuantumError::Dimension(format!("{a} does not act on {qubits} qubits")));
        }
    }
    for (i, a) in tuple.iter().enumerate() {
        for b in &tuple[i + 1..] {
            if !a.commutes_with(b) {
                return Err(QuantumError::NotCommuting(a.to_string(), b.to_string()));
            }
        }
    }
    let dim = 1usize << qubits;
    let id = CMatrix::identity(dim);
    let half = Cq::real(Q::new(1.into(), 2.into()));
    let factors: Vec<[CMatrix; 2]> = tuple
        .iter()
        .map(|a| {
            let m = a.matrix();
            [id.add(&m).scale(&half), id.sub(&m).scale(&half)]
        })
        .collect();
    let mut projectors = BTreeMap::new();
    for a in OutcomeSpace::Nerve(2).simplices(tuple.len()) {
        let p = a.iter().zip(&factors).fold(id.clone(), |acc, (&ai, f)| acc.mul(&f[ai as usize]));
        projectors.insert(a, p);
    }
    Ok(ProjectiveMeasurement { dim, projectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;
    use num::Zero;

    fn p(s: &str) -> PauliObservable {
        s.parse().unwrap()
    }

    #[test]
    fn single_z() {
        let m = spec_iso(&[p("Z")], 1).unwrap();
        let diag = |a: i64, b: i64| {
            CMatrix::from_rows(vec![vec![Cq::real(qi(a)), Cq::zero()], vec![Cq::zero(), Cq::real(qi(b))]]).unwrap()
        };
        assert_eq!(m.get(&[0]), Some(&diag(1, 0)));
        assert_eq!(m.get(&[1]), Some(&diag(0, 1)));
    }

    #[test]
    fn pair_of_x_is_complete_and_recovers_the_tuple() {
        let t = [p("IX"), p("XI")];
        let m = spec_iso(&t, 2).unwrap();
        assert_eq!(m.projectors.len(), 4);
        assert!(m.is_valid());
        for (i, a) in t.iter().enumerate() {
            assert_eq!(m.observable(i), a.matrix());
        }
        let plus = |s: &str| spec_iso(&[p(s)], 2).unwrap().get(&[0]).unwrap().clone();
        assert_eq!(m.get(&[0, 0]).unwrap(), &plus("IX").mul(&plus("XI")));
    }

    #[test]
    fn dependent_tuple_has_empty_outcomes() {
        let m = spec_iso(&[p("XX"), p("ZZ"), p("-YY")], 2).unwrap();
        assert!(m.is_valid());
        // Π(a) vanishes unless a_3 = a_1 + a_2
        for (a, pr) in &m.projectors {
            assert_eq!(pr.is_zero(), a[2] != (a[0] + a[1]) % 2);
        }
    }

    #[test]
    fn noncommuting_is_rejected() {
        assert!(matches!(spec_iso(&[p("XI"), p("ZI")], 2), Err(QuantumError::NotCommuting(..))));
    }
}
