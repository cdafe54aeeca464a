use std::sync::Arc;

use serde::Serialize;

use crate::limits::Limits;
use crate::outcomes::{OutcomeSpace, RationalDistribution};
use crate::par::Execution;
use crate::simpdist::{restrict, support, DeterministicAssignment, SimpError};
use crate::sset::{quotient_with_map, PresentedSSet, SpaceMap, Subspace};

use super::group::{is_zero_class, ClassReport, CohomologyClass};
use super::{coboundary, Cochain, CohoError};

/// The edge-labelling 1-cochain `r_1` of a nerve assignment.
pub fn alpha(x: &Arc<PresentedSSet>, y: OutcomeSpace, r: &DeterministicAssignment) -> Result<Cochain, CohoError> {
    if !y.is_nerve_like() {
        return Err(CohoError::Simp(SimpError::Unsupported(format!("cochains need nerve outcomes, got {y}"))));
    }
    if x.max_dim() < 1 {
        return Err(CohoError::DimensionOverflow(1, x.max_dim()));
    }
    Cochain::new(x.clone(), 1, y.modulus(), r.edge_values())
}

struct Setup {
    inclusion: SpaceMap,
    quotient: Arc<PresentedSSet>,
    q: SpaceMap,
}

fn setup(x: &PresentedSSet, z: &Subspace, f: &Cochain) -> Result<Setup, CohoError> {
    let (pres, inclusion) = z.presentation(x)?;
    if *f.space != pres {
        return Err(CohoError::Mismatch);
    }
    let (g, _) = quotient_with_map(x, z)?;
    Ok(Setup { inclusion, quotient: Arc::new(g.space), q: g.map })
}

/// Zero-extension of a 1-cochain on `Z` to `X`.
fn lift(x: &Arc<PresentedSSet>, inclusion: &SpaceMap, f: &Cochain) -> Cochain {
    let mut out = Cochain::zero(x.clone(), 1, f.d);
    for e in f.space.simplices(1) {
        out.values[inclusion.image(e).base.id] = f.get(e);
    }
    out
}

/// `ζ[f]`: lift `f` by zeros, take `δ`, and read the result on `X/Z`.
/// `f` lives on the presentation of `Z` from [`Subspace::presentation`].
pub fn connecting(x: &Arc<PresentedSSet>, z: &Subspace, f: &Cochain) -> Result<CohomologyClass, CohoError> {
    if f.dim != 1 {
        return Err(CohoError::Malformed("the connecting map takes 1-cochains".into()));
    }
    if !f.is_cocycle()? {
        return Err(CohoError::NotACocycle);
    }
    let s = setup(x, z, f)?;
    let beta = connecting_cochain(x, &s, f)?;
    is_zero_class(&beta)
}

fn connecting_cochain(x: &Arc<PresentedSSet>, s: &Setup, f: &Cochain) -> Result<Cochain, CohoError> {
    let lifted = coboundary(&lift(x, &s.inclusion, f))?;
    let mut beta = Cochain::zero(s.quotient.clone(), 2, f.d);
    for t in x.simplices(2) {
        let img = s.q.image(t);
        if !img.is_degenerate() {
            beta.values[img.base.id] = lifted.get(t);
        }
    }
    Ok(beta)
}

/// An extension of `r` from `Z` to `X`, built as `r̃_1 - q*(t)` from a preimage
/// `δt = ζ[α(r)]`; `None` when the class is nonzero.
pub fn extend_by_cohomology(
    x: &Arc<PresentedSSet>,
    z: &Subspace,
    d: u32,
    r: &DeterministicAssignment,
) -> Result<Option<DeterministicAssignment>, CohoError> {
    let (pres, _) = z.presentation(x)?;
    let y = OutcomeSpace::Nerve(d);
    let f = alpha(&Arc::new(pres), y, r)?;
    let s = setup(x, z, &f)?;
    let cls = is_zero_class(&connecting_cochain(x, &s, &f)?)?;
    let Some(t) = cls.preimage else { return Ok(None) };
    let lifted = lift(x, &s.inclusion, &f);
    let edges: Vec<u32> = x
        .simplices(1)
        .map(|e| {
            let img = s.q.image(e);
            let te = if img.is_degenerate() { 0 } else { t.get(img.base) };
            (lifted.get(e) + d - te) % d
        })
        .collect();
    Ok(Some(DeterministicAssignment::from_edge_labeling(x, y, &edges)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessVerdict {
    /// No class in `cl_Z(p)` is zero.
    StronglyContextual,
    /// Some class is zero; the test says nothing.
    Inconclusive,
    /// `p|_Z` has empty support, so `cl_Z(p)` is empty.
    Vacuous,
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub classes: Vec<CohomologyClass>,
    pub support_size: usize,
    pub verdict: WitnessVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub verdict: WitnessVerdict,
    pub support_size: usize,
    pub classes: Vec<ClassReport>,
}

impl Witness {
    pub fn report(&self) -> WitnessReport {
        WitnessReport {
            verdict: self.verdict,
            support_size: self.support_size,
            classes: self.classes.iter().map(|c| c.report()).collect(),
        }
    }
}

/// `cl_Z(p)`: the classes `ζ α(r)` over the support of `p|_Z`, up to cohomology.
pub fn cl_witness(p: &RationalDistribution, z: &Subspace, limits: &Limits) -> Result<Witness, CohoError> {
    let x = p.space();
    let y = p.outcome();
    if !y.is_nerve_like() {
        return Err(CohoError::Simp(SimpError::Unsupported(format!("cochains need nerve outcomes, got {y}"))));
    }
    let (pres, inc) = z.presentation(x)?;
    let pres = Arc::new(pres);
    let q = restrict(p, &inc, pres.clone())?;
    let supp = support(&q, limits, Execution::default())?;
    if supp.is_empty() {
        return Ok(Witness { classes: vec![], support_size: 0, verdict: WitnessVerdict::Vacuous });
    }
    let f0 = alpha(&pres, y, &supp[0])?;
    let s = setup(x, z, &f0)?;
    let mut classes: Vec<CohomologyClass> = vec![];
    for r in &supp {
        let beta = connecting_cochain(x, &s, &alpha(&pres, y, r)?)?;
        let mut seen = false;
        for c in &classes {
            if is_zero_class(&beta.sub(&c.representative)?)?.is_zero {
                seen = true;
                break;
            }
        }
        if !seen {
            classes.push(is_zero_class(&beta)?);
        }
    }
    let verdict = if classes.iter().any(|c| c.is_zero) {
        WitnessVerdict::Inconclusive
    } else {
        WitnessVerdict::StronglyContextual
    };
    Ok(Witness { classes, support_size: supp.len(), verdict })
}
