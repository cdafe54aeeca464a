use std::sync::Arc;

use num::bigint::BigInt;
use num::{ToPrimitive, Zero};
use serde::Serialize;

use crate::linalg::gauss;
use crate::linalg::snf::{identity, mat_mul, smith, IntMatrix};
use crate::linalg::zmod::{modulo, preimage_mod};
use crate::rational::Q;
use crate::sset::PresentedSSet;

use super::{coboundary_matrix, Cochain, CochainReport, CohoError};

/// `H^n(X; Z_d)` as a product of cyclic groups with representative cocycles.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub dim: usize,
    pub d: u32,
    /// Orders of the cyclic factors, all greater than 1.
    pub invariants: Vec<u64>,
    pub generators: Vec<Cochain>,
}

impl CohomologyGroup {
    pub fn order(&self) -> u128 {
        self.invariants.iter().fold(1u128, |a, &k| a.saturating_mul(k as u128))
    }
}

/// The class of a cocycle; `preimage` is set when the class is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub representative: Cochain,
    pub is_zero: bool,
    pub preimage: Option<Cochain>,
}

impl CohomologyClass {
    pub fn report(&self) -> ClassReport {
        ClassReport {
            representative: self.representative.report(),
            is_zero: self.is_zero,
            preimage: self.preimage.as_ref().map(|t| t.report()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub representative: CochainReport,
    pub is_zero: bool,
    pub preimage: Option<CochainReport>,
}

/// Decides `c ∈ im δ_{n-1}`; a zero class carries `t` with `δt = c`.
pub fn is_zero_class(c: &Cochain) -> Result<CohomologyClass, CohoError> {
    if !c.is_cocycle()? {
        return Err(CohoError::NotACocycle);
    }
    if c.dim == 0 {
        let zero = c.is_zero();
        return Ok(CohomologyClass { representative: c.clone(), is_zero: zero, preimage: None });
    }
    let x = &c.space;
    let a = coboundary_matrix(x, c.dim - 1)?;
    let cols = x.count(c.dim - 1);
    let b: Vec<BigInt> = c.values.iter().map(|&v| BigInt::from(v)).collect();
    let pre = if c.is_zero() {
        Some(vec![0; cols])
    } else {
        preimage_mod(&a, &b, a.len(), cols, c.d as u64)
    };
    let preimage = match pre {
        Some(t) => Some(Cochain::new(x.clone(), c.dim - 1, c.d, t)?),
        None => None,
    };
    Ok(CohomologyClass { representative: c.clone(), is_zero: preimage.is_some(), preimage })
}

/// Integer kernel basis of a `rows x cols` matrix.
fn integer_kernel(a: &IntMatrix, rows: usize, cols: usize) -> Vec<Vec<BigInt>> {
    if rows == 0 {
        return identity(cols);
    }
    let f = smith(a, rows, cols);
    (f.rank..cols).map(|j| (0..cols).map(|i| f.v[i][j].clone()).collect()).collect()
}

/// `H^n(X; Z_d) = ker δ_n / im δ_{n-1}`, worked out over the integers:
/// the lattice `K = {x : δ_n x ≡ 0}` modulo `L = im δ_{n-1} + d Z^m`.
pub fn cohomology(x: &Arc<PresentedSSet>, n: usize, d: u32) -> Result<CohomologyGroup, CohoError> {
    if n > x.max_dim() {
        return Err(CohoError::DimensionOverflow(n, x.max_dim()));
    }
    if d == 0 {
        return Err(CohoError::Malformed("coefficients Z_0 are not supported".into()));
    }
    let m = x.count(n);
    let dd = BigInt::from(d);
    // K as the x-part of ker [δ_n | d I]
    let basis: Vec<Vec<BigInt>> = if n + 1 <= x.max_dim() && x.count(n + 1) > 0 {
        let delta = coboundary_matrix(x, n)?;
        let k = delta.len();
        let big: IntMatrix = delta
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..k).map(|j| if i == j { dd.clone() } else { BigInt::zero() }));
                r
            })
            .collect();
        integer_kernel(&big, k, m + k).into_iter().map(|v| v[..m].to_vec()).collect()
    } else {
        identity(m)
    };
    debug_assert_eq!(basis.len(), m);
    let mut gens_l: Vec<Vec<BigInt>> = (0..m).map(|j| (0..m).map(|i| if i == j { dd.clone() } else { BigInt::zero() }).collect()).collect();
    if n >= 1 {
        let prev = coboundary_matrix(x, n - 1)?;
        for j in 0..x.count(n - 1) {
            gens_l.push(prev.iter().map(|row| row[j].clone()).collect());
        }
    }
    if m == 0 {
        return Ok(CohomologyGroup { dim: n, d, invariants: vec![], generators: vec![] });
    }
    // coordinates of L's generators in the K basis: Kb C = L
    let kb: Vec<Vec<Q>> = (0..m).map(|i| basis.iter().map(|b| Q::from_integer(b[i].clone())).collect()).collect();
    let mut c: IntMatrix = vec![vec![BigInt::zero(); gens_l.len()]; m];
    for (j, g) in gens_l.iter().enumerate() {
        let rhs: Vec<Q> = g.iter().map(|v| Q::from_integer(v.clone())).collect();
        let sol = gauss::solve(&kb, &rhs).expect("L is contained in K");
        for (i, s) in sol.into_iter().enumerate() {
            assert!(s.is_integer(), "K basis is a lattice basis");
            c[i][j] = s.to_integer();
        }
    }
    let f = smith(&c, m, gens_l.len());
    // new K basis Kb u^{-1}; L is spanned by s_i times its columns
    let kb_int: IntMatrix = (0..m).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
    let new_basis = mat_mul(&kb_int, &f.u_inv, m);
    let mut invariants = vec![];
    let mut generators = vec![];
    for i in 0..m {
        let s = if i < f.rank { f.s[i][i].clone() } else { BigInt::zero() };
        let order = s.to_u64().unwrap_or(0);
        if order == 1 {
            continue;
        }
        invariants.push(order);
        let values = (0..m).map(|r| modulo(&new_basis[r][i], d as u64) as u32).collect();
        generators.push(Cochain::new(x.clone(), n, d, values)?);
    }
    Ok(CohomologyGroup { dim: n, d, invariants, generators })
}

pub fn h1(x: &Arc<PresentedSSet>, d: u32) -> Result<CohomologyGroup, CohoError> {
    cohomology(x, 1, d)
}
