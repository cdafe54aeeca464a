use std::collections::BTreeMap;
use std::sync::Arc;

use crate::limits::Limits;
use crate::outcomes::{Outcome, RationalDistribution, Semiring};
use crate::rational::NonNegRational;
use crate::simpdist::{enumerate_deterministic, restrict, ClassicalDistribution, DeterministicAssignment};
use crate::sset::{PresentedSSet, SimplexId, SpaceMap, Subspace};

use super::verdict::{is_noncontextual, Verdict};
use super::CtxError;

/// A classical distribution on a subspace, keyed by values on the subspace's
/// simplices in ambient numbering.
fn keyed<S: Semiring>(
    d: &ClassicalDistribution<S>,
    inclusion: &SpaceMap,
    sub: &Subspace,
) -> BTreeMap<Vec<Outcome>, S> {
    let local: BTreeMap<SimplexId, SimplexId> = inclusion.preimages();
    let mut out: BTreeMap<Vec<Outcome>, S> = BTreeMap::new();
    for (r, w) in d.weights() {
        let key: Vec<Outcome> = sub.iter().map(|s| r.get(local[&s]).clone()).collect();
        let e = out.entry(key).or_insert_with(S::zero);
        *e = e.add(w);
    }
    out
}

fn key_of(r: &DeterministicAssignment, sub: &Subspace) -> Vec<Outcome> {
    sub.iter().map(|s| r.get(s).clone()).collect()
}

/// Marginalizes a keyed distribution on `outer` to the simplices of `inner`.
fn marginalize<S: Semiring>(d: &BTreeMap<Vec<Outcome>, S>, outer: &Subspace, inner: &Subspace) -> BTreeMap<Vec<Outcome>, S> {
    let pos: Vec<usize> = inner.iter().map(|s| outer.iter().position(|t| t == s).expect("inner is contained in outer")).collect();
    let mut out: BTreeMap<Vec<Outcome>, S> = BTreeMap::new();
    for (k, w) in d {
        let key: Vec<Outcome> = pos.iter().map(|&i| k[i].clone()).collect();
        let e = out.entry(key).or_insert_with(S::zero);
        *e = e.add(w);
    }
    out
}

/// Glues classical distributions on subspaces `A` and `B` covering `X`:
/// `d(r) = d_A(r|A) d_B(r|B) / d_{A∩B}(r|A∩B)`, with `0/0 = 0`.
///
/// `d_a` and `d_b` live on the presentations returned by [`Subspace::presentation`].
pub fn glue_classical<S: Semiring>(
    x: &Arc<PresentedSSet>,
    a: &Subspace,
    d_a: &ClassicalDistribution<S>,
    b: &Subspace,
    d_b: &ClassicalDistribution<S>,
    limits: &Limits,
) -> Result<ClassicalDistribution<S>, CtxError> {
    if !S::IS_SEMIFIELD {
        return Err(CtxError::NotSemifield);
    }
    if d_a.outcome() != d_b.outcome() {
        return Err(CtxError::Malformed("glued distributions use different outcome spaces".into()));
    }
    let y = d_a.outcome();
    let full = Subspace::full(x);
    if a.union(b) != full {
        return Err(CtxError::Malformed("the subspaces do not cover the space".into()));
    }
    let (_, inc_a) = a.presentation(x)?;
    let (_, inc_b) = b.presentation(x)?;
    let ka = keyed(d_a, &inc_a, a);
    let kb = keyed(d_b, &inc_b, b);
    let ab = a.intersection(b);
    let on_ab = marginalize(&ka, a, &ab);
    if on_ab != marginalize(&kb, b, &ab) {
        return Err(CtxError::Incompatible);
    }
    let mut pairs = vec![];
    for r in enumerate_deterministic(x, y, limits)? {
        let wa = ka.get(&key_of(&r, a)).cloned().unwrap_or_else(S::zero);
        let wb = kb.get(&key_of(&r, b)).cloned().unwrap_or_else(S::zero);
        if wa.is_zero() || wb.is_zero() {
            continue;
        }
        let den = on_ab.get(&key_of(&r, &ab)).cloned().unwrap_or_else(S::zero);
        let inv = den.inv().expect("a positive product forces a positive marginal");
        pairs.push((r, wa.mul(&wb).mul(&inv)));
    }
    let d = ClassicalDistribution::new(x.clone(), y, pairs)?;
    Ok(d)
}

/// A classical distribution on a space with one generating simplex whose
/// deterministic assignments are determined by their value there, such as `Δ^n`.
pub fn simplex_classical(p: &RationalDistribution, limits: &Limits) -> Result<ClassicalDistribution<NonNegRational>, CtxError> {
    let gens = p.space().generating();
    let [top] = gens[..] else {
        return Err(CtxError::Malformed("space has more than one generating simplex".into()));
    };
    let all = enumerate_deterministic(p.space(), p.outcome(), limits)?;
    let pairs: Vec<(DeterministicAssignment, NonNegRational)> =
        all.into_iter().map(|r| { let w = p.get(top).get(r.get(top)); (r, w) }).collect();
    let d = ClassicalDistribution::new(p.space().clone(), p.outcome(), pairs)?;
    if d.theta() != *p {
        return Err(CtxError::Malformed("assignments are not determined by the top simplex".into()));
    }
    Ok(d)
}

/// Noncontextuality through gluing the pieces `A` and `B`: each restriction is
/// resolved on its own (top simplex or LP), then glued.
pub fn mixture_by_gluing(
    p: &RationalDistribution,
    a: &Subspace,
    b: &Subspace,
    limits: &Limits,
) -> Result<Option<ClassicalDistribution<NonNegRational>>, CtxError> {
    let x = p.space();
    let piece = |s: &Subspace| -> Result<Option<ClassicalDistribution<NonNegRational>>, CtxError> {
        let (pres, inc) = s.presentation(x)?;
        let q = restrict(p, &inc, Arc::new(pres))?;
        if let Ok(d) = simplex_classical(&q, limits) {
            return Ok(Some(d));
        }
        match is_noncontextual(&q, limits)? {
            Verdict::Noncontextual(d) => Ok(Some(d)),
            Verdict::Contextual(_) => Ok(None),
        }
    };
    let (Some(da), Some(db)) = (piece(a)?, piece(b)?) else { return Ok(None) };
    let d = glue_classical(x, a, &da, b, &db, limits)?;
    Ok(Some(d))
}
