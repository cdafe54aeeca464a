//! Normalized `Z_d` cochains on presented spaces, `H^n`, the connecting map
//! into the quotient, and the cohomological witness for strong contextuality.

mod group;
mod witness;

pub use group::{cohomology, h1, is_zero_class, ClassReport, CohomologyClass, CohomologyGroup};
pub use witness::{alpha, cl_witness, connecting, extend_by_cohomology, Witness, WitnessReport, WitnessVerdict};

use std::collections::BTreeMap;
use std::sync::Arc;

use num::bigint::BigInt;
use serde::Serialize;

use crate::linalg::snf::IntMatrix;
use crate::linalg::zmod::modulo;
use crate::simpdist::SimpError;
use crate::sset::{PresentedSSet, SimplexId, SsetError};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CohoError {
    #[error(transparent)]
    Sset(#[from] SsetError),
    #[error(transparent)]
    Simp(#[from] SimpError),
    #[error("no {0}-simplices above max_dim {1}")]
    DimensionOverflow(usize, usize),
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("cochains live on different spaces or coefficients")]
    Mismatch,
    #[error("{0}")]
    Malformed(String),
}

/// A `Z_d`-valued function on the nondegenerate `n`-simplices; degenerate ones are 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub space: Arc<PresentedSSet>,
    pub dim: usize,
    pub d: u32,
    pub values: Vec<u32>,
}

impl Cochain {
    pub fn zero(space: Arc<PresentedSSet>, dim: usize, d: u32) -> Self {
        let n = space.count(dim);
        Cochain { space, dim, d, values: vec![0; n] }
    }

    pub fn new(space: Arc<PresentedSSet>, dim: usize, d: u32, values: Vec<u32>) -> Result<Self, CohoError> {
        if dim > space.max_dim() {
            return Err(CohoError::DimensionOverflow(dim, space.max_dim()));
        }
        if values.len() != space.count(dim) || d == 0 {
            return Err(CohoError::Malformed(format!("{} values for {} simplices", values.len(), space.count(dim))));
        }
        let values = values.into_iter().map(|v| v % d).collect();
        Ok(Cochain { space, dim, d, values })
    }

    /// Values by simplex label; unnamed simplices get 0.
    pub fn from_labels(space: Arc<PresentedSSet>, dim: usize, d: u32, values: &[(&str, u32)]) -> Result<Self, CohoError> {
        let mut c = Cochain::zero(space, dim, d);
        for (l, v) in values {
            let s = c.space.find_label(l).filter(|s| s.dim == dim).ok_or_else(|| CohoError::Malformed(format!("no {dim}-simplex {l:?}")))?;
            c.values[s.id] = v % d;
        }
        Ok(c)
    }

    pub fn get(&self, s: SimplexId) -> u32 {
        self.values[s.id]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain, CohoError> {
        if self.dim != other.dim || self.d != other.d || self.space != other.space {
            return Err(CohoError::Mismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| (a + self.d - b) % self.d).collect();
        Ok(Cochain { values, ..self.clone() })
    }

    /// `label -> value` for the nonzero entries.
    pub fn table(&self) -> BTreeMap<String, u32> {
        self.space
            .simplices(self.dim)
            .filter(|s| self.values[s.id] != 0)
            .map(|s| (self.space.label(s).to_string(), self.values[s.id]))
            .collect()
    }

    pub fn is_cocycle(&self) -> Result<bool, CohoError> {
        if self.dim + 1 > self.space.max_dim() {
            return Ok(true);
        }
        Ok(coboundary(self)?.is_zero())
    }

    pub fn report(&self) -> CochainReport {
        CochainReport { dim: self.dim, d: self.d, values: self.table(), space_hash: self.space.fingerprint() }
    }
}

/// Serialized form: nonzero values by label, plus the ambient presentation hash.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CochainReport {
    pub dim: usize,
    pub d: u32,
    pub values: BTreeMap<String, u32>,
    pub space_hash: String,
}

/// Integer matrix of `δ_n : C^n -> C^{n+1}`, rows indexed by `(n+1)`-simplices.
pub fn coboundary_matrix(x: &PresentedSSet, n: usize) -> Result<IntMatrix, CohoError> {
    if n + 1 > x.max_dim() {
        return Err(CohoError::DimensionOverflow(n + 1, x.max_dim()));
    }
    let cols = x.count(n);
    let mut m = vec![];
    for s in x.simplices(n + 1) {
        let mut row = vec![BigInt::from(0); cols];
        for (i, f) in x.raw_faces(s).iter().enumerate() {
            if !f.is_degenerate() {
                row[f.base.id] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
        m.push(row);
    }
    Ok(m)
}

/// `δf(σ) = Σ (-1)^i f(d_i σ)` mod `d`.
pub fn coboundary(f: &Cochain) -> Result<Cochain, CohoError> {
    let m = coboundary_matrix(&f.space, f.dim)?;
    let values = m
        .iter()
        .map(|row| {
            let acc = row.iter().zip(&f.values).fold(BigInt::from(0), |acc, (c, &v)| acc + c * v);
            modulo(&acc, f.d as u64) as u32
        })
        .collect();
    Ok(Cochain { space: f.space.clone(), dim: f.dim + 1, d: f.d, values })
}
