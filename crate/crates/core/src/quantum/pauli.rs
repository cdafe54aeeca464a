use std::fmt;
use std::str::FromStr;

use num::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{qi, Q};

use super::matrix::{CMatrix, Cq};
use super::QuantumError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    /// `a b = i^k c`.
    fn mul(self, b: Pauli) -> (u8, Pauli) {
        use Pauli::*;
        match (self, b) {
            (I, p) | (p, I) => (0, p),
            (p, q) if p == q => (0, I),
            (X, Y) => (1, Z),
            (Y, Z) => (1, X),
            (Z, X) => (1, Y),
            (Y, X) => (3, Z),
            (Z, Y) => (3, X),
            (X, Z) => (3, Y),
            _ => unreachable!(),
        }
    }

    pub fn matrix(self) -> CMatrix {
        let r = |v: i64| Cq::real(qi(v));
        let rows = match self {
            Pauli::I => vec![vec![r(1), r(0)], vec![r(0), r(1)]],
            Pauli::X => vec![vec![r(0), r(1)], vec![r(1), r(0)]],
            Pauli::Y => vec![vec![r(0), Cq::new(qi(0), qi(-1))], vec![Cq::i(), r(0)]],
            Pauli::Z => vec![vec![r(1), r(0)], vec![r(0), r(-1)]],
        };
        CMatrix::from_rows(rows).expect("square")
    }
}

/// `±P_1 ⊗ ... ⊗ P_k`, written like `"-XY"` or `"+IZ"`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliObservable {
    pub negative: bool,
    pub word: Vec<Pauli>,
}

impl PauliObservable {
    pub fn identity(qubits: usize) -> Self {
        PauliObservable { negative: false, word: vec![Pauli::I; qubits] }
    }

    pub fn qubits(&self) -> usize {
        self.word.len()
    }

    pub fn is_scalar(&self) -> bool {
        self.word.iter().all(|&p| p == Pauli::I)
    }

    pub fn commutes_with(&self, o: &Self) -> bool {
        self.qubits() == o.qubits()
            && self.word.iter().zip(&o.word).filter(|(a, b)| **a != Pauli::I && **b != Pauli::I && a != b).count() % 2 == 0
    }

    /// The product, if it is again `±` a Pauli word (the factors commute).
    pub fn mul(&self, o: &Self) -> Result<Self, QuantumError> {
        if !self.commutes_with(o) {
            return Err(QuantumError::NotCommuting(self.to_string(), o.to_string()));
        }
        let mut k = 0u8;
        let word = self
            .word
            .iter()
            .zip(&o.word)
            .map(|(a, b)| {
                let (e, c) = a.mul(*b);
                k += e;
                c
            })
            .collect();
        debug_assert_eq!(k % 2, 0);
        let negative = self.negative ^ o.negative ^ (k % 4 == 2);
        Ok(PauliObservable { negative, word })
    }

    pub fn matrix(&self) -> CMatrix {
        let mut m = CMatrix::identity(1);
        for p in &self.word {
            m = m.kron(&p.matrix());
        }
        if self.negative {
            m = m.scale(&Cq::real(-Q::one()));
        }
        m
    }
}

impl FromStr for PauliObservable {
    type Err = QuantumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (negative, rest) = match t.chars().next() {
            Some('-') => (true, &t[1..]),
            Some('+') => (false, &t[1..]),
            _ => (false, t),
        };
        let word = rest
            .chars()
            .map(|c| Pauli::from_char(c).ok_or_else(|| QuantumError::Parse(format!("bad Pauli word {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if word.is_empty() {
            return Err(QuantumError::Parse(format!("empty Pauli word {s:?}")));
        }
        Ok(PauliObservable { negative, word })
    }
}

impl fmt::Display for PauliObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        for p in &self.word {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl Serialize for PauliObservable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliObservable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
