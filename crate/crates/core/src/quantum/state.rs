use num::{One, Signed, Zero};

use crate::rational::Q;

use super::matrix::{CMatrix, Cq};
use super::QuantumError;

/// A density matrix on `qubits` qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityMatrix {
    pub qubits: usize,
    rho: CMatrix,
}

impl DensityMatrix {
    /// Checks Hermiticity, unit trace, and positivity through every principal
    /// minor (leading minors alone miss singular cases such as `diag(0, -1)`).
    pub fn new(rho: CMatrix) -> Result<Self, QuantumError> {
        let n = rho.dim();
        if !n.is_power_of_two() || n == 0 {
            return Err(QuantumError::Dimension(format!("{n}x{n} is not a qubit register")));
        }
        if n > 16 {
            return Err(QuantumError::Dimension("positivity is only checked up to 4 qubits".into()));
        }
        if !rho.is_hermitian() {
            return Err(QuantumError::NotAState("not Hermitian".into()));
        }
        if rho.trace() != Cq::one() {
            return Err(QuantumError::NotAState("trace is not 1".into()));
        }
        for mask in 1u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let m = rho.principal(&idx).det();
            if m.re.is_negative() {
                return Err(QuantumError::NotAState(format!("principal minor on {idx:?} is negative")));
            }
        }
        Ok(DensityMatrix { qubits: n.trailing_zeros() as usize, rho })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.rho
    }

    /// `|ψ><ψ| / <ψ|ψ>` for an unnormalized vector with Gaussian-rational entries.
    pub fn pure(psi: &[Cq]) -> Result<Self, QuantumError> {
        let norm = psi.iter().fold(Q::zero(), |acc, c| acc + c.norm_sq());
        if norm.is_zero() {
            return Err(QuantumError::NotAState("zero vector".into()));
        }
        let n = psi.len();
        let scale = Cq::real(Q::one() / norm);
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, &(&psi[i] * &psi[j].conj()) * &scale);
            }
        }
        DensityMatrix::new(m)
    }

    /// `(|00> + |11>) / sqrt 2`.
    pub fn bell_phi_plus() -> Self {
        let mut psi = vec![Cq::zero(); 4];
        psi[0] = Cq::one();
        psi[3] = Cq::one();
        DensityMatrix::pure(&psi).expect("fixture")
    }

    /// `(|000> + |111>) / sqrt 2`.
    pub fn ghz3() -> Self {
        let mut psi = vec![Cq::zero(); 8];
        psi[0] = Cq::one();
        psi[7] = Cq::one();
        DensityMatrix::pure(&psi).expect("fixture")
    }

    pub fn maximally_mixed(qubits: usize) -> Self {
        let n = 1usize << qubits;
        let m = CMatrix::identity(n).scale(&Cq::real(Q::new(1.into(), (n as i64).into())));
        DensityMatrix { qubits, rho: m }
    }

    /// Named fixtures: `bell_phi_plus`, `ghz3`, `maximally_mixed(n)`.
    pub fn named(name: &str) -> Result<Self, QuantumError> {
        let t = name.trim();
        match t {
            "bell_phi_plus" => return Ok(Self::bell_phi_plus()),
            "ghz3" => return Ok(Self::ghz3()),
            _ => {}
        }
        if let Some(n) = t.strip_prefix("maximally_mixed(").and_then(|r| r.strip_suffix(')')) {
            let q: usize = n.trim().parse().map_err(|_| QuantumError::Parse(format!("bad state {name:?}")))?;
            if (1..=4).contains(&q) {
                return Ok(Self::maximally_mixed(q));
            }
        }
        Err(QuantumError::Parse(format!("unknown state {name:?}")))
    }

    /// `Tr(ρ P)`, which must be real.
    pub fn expectation(&self, p: &CMatrix) -> Cq {
        self.rho.mul(p).trace()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    #[test]
    fn fixtures_are_states() {
        assert_eq!(DensityMatrix::bell_phi_plus().matrix().get(0, 3), &Cq::real(Q::new(1.into(), 2.into())));
        assert_eq!(DensityMatrix::ghz3().qubits, 3);
        assert!(DensityMatrix::new(DensityMatrix::maximally_mixed(2).matrix().clone()).is_ok());
    }

    #[test]
    fn rejects_a_negative_diagonal_with_zero_leading_minors() {
        let mut m = CMatrix::zeros(2);
        m.set(1, 1, Cq::real(qi(-1)));
        m.set(0, 0, Cq::real(qi(2)));
        assert!(DensityMatrix::new(m).is_err());
        let mut m = CMatrix::zeros(4);
        m.set(1, 1, Cq::real(qi(2)));
        m.set(2, 2, Cq::real(qi(-1)));
        // leading minors are 0, 0, 0, 0
        assert!(DensityMatrix::new(m).is_err());
    }
}
