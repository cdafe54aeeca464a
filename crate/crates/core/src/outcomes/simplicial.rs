use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::rational::NonNegRational;
use crate::sset::{OperatorWord, PresentedSSet, SimplexId, SimplexRef};

use super::dist::Distribution;
use super::semiring::{Boolean, Semiring};
use super::space::{Outcome, OutcomeSpace};
use super::OutcomeError;

/// One failed compatibility check `D(d_i)(p_σ) = p_{d_i σ}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub simplex: SimplexId,
    pub face: usize,
}

/// Result of checking the simplicial conditions of a table.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SimplicialReport {
    pub mismatches: Vec<Mismatch>,
    pub unnormalized: Vec<SimplexId>,
    pub invalid_outcomes: Vec<SimplexId>,
}

impl SimplicialReport {
    pub fn is_ok(&self) -> bool {
        self.mismatches.is_empty() && self.unnormalized.is_empty() && self.invalid_outcomes.is_empty()
    }
}

/// A distribution on every nondegenerate simplex, compatible with faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialDistribution<S> {
    space: Arc<PresentedSSet>,
    outcome: OutcomeSpace,
    table: Vec<Vec<Distribution<S>>>,
}

pub type RationalDistribution = SimplicialDistribution<NonNegRational>;

impl<S: Semiring> SimplicialDistribution<S> {
    /// Checked constructor over a full table `table[n][id]`.
    pub fn new(
        space: Arc<PresentedSSet>,
        outcome: OutcomeSpace,
        table: Vec<Vec<Distribution<S>>>,
    ) -> Result<Self, OutcomeError> {
        let p = Self::unchecked(space, outcome, table)?;
        let report = p.check_simplicial();
        if !report.is_ok() {
            return Err(OutcomeError::NotSimplicial(report));
        }
        Ok(p)
    }

    /// Builds the table without checking compatibility; only the shape is verified.
    pub fn unchecked(
        space: Arc<PresentedSSet>,
        outcome: OutcomeSpace,
        table: Vec<Vec<Distribution<S>>>,
    ) -> Result<Self, OutcomeError> {
        outcome.check()?;
        for n in 0..=space.max_dim() {
            if table.get(n).map_or(0, |r| r.len()) != space.count(n) {
                return Err(OutcomeError::Malformed(format!("table size in dimension {n}")));
            }
        }
        Ok(SimplicialDistribution { space, outcome, table })
    }

    /// Builds the table from distributions on some simplices; the others are
    /// obtained as marginals of a coface. Dimension-0 simplices of nerve-like
    /// outcome spaces get the unique distribution.
    pub fn from_partial(
        space: Arc<PresentedSSet>,
        outcome: OutcomeSpace,
        given: BTreeMap<SimplexId, Distribution<S>>,
    ) -> Result<Self, OutcomeError> {
        outcome.check()?;
        let mut table: Vec<Vec<Option<Distribution<S>>>> =
            (0..=space.max_dim()).map(|n| vec![None; space.count(n)]).collect();
        for (s, d) in given {
            if !space.contains(s) {
                return Err(OutcomeError::MissingSimplex(s));
            }
            table[s.dim][s.id] = Some(d);
        }
        for n in (0..=space.max_dim()).rev() {
            for s in space.simplices(n) {
                if table[n][s.id].is_some() {
                    continue;
                }
                if n == 0 && outcome.is_nerve_like() {
                    table[0][s.id] = Some(Distribution::delta(vec![]));
                    continue;
                }
                let derived = space.cofaces(s).into_iter().find_map(|(c, i)| {
                    table[c.dim][c.id].as_ref().map(|pc| {
                        pc.pushforward(|t| outcome.face(c.dim, t, i))
                    })
                });
                match derived {
                    Some(d) => table[n][s.id] = Some(d),
                    None => return Err(OutcomeError::MissingSimplex(s)),
                }
            }
        }
        let table = table.into_iter().map(|r| r.into_iter().map(Option::unwrap).collect()).collect();
        Self::new(space, outcome, table)
    }

    pub fn space(&self) -> &Arc<PresentedSSet> {
        &self.space
    }

    pub fn outcome(&self) -> OutcomeSpace {
        self.outcome
    }

    pub fn table(&self) -> &[Vec<Distribution<S>>] {
        &self.table
    }

    pub fn get(&self, s: SimplexId) -> &Distribution<S> {
        &self.table[s.dim][s.id]
    }

    /// The distribution on an arbitrary simplex, degenerate ones included.
    pub fn at(&self, r: &SimplexRef) -> Distribution<S> {
        let base = self.get(r.base);
        if !r.is_degenerate() {
            return base.clone();
        }
        let w = r.degeneracy_word();
        base.pushforward(|t| self.outcome.apply(t, &w))
    }

    /// `D(w)(p_σ)` for a word acting on σ.
    pub fn marginal(&self, r: &SimplexRef, w: &OperatorWord) -> Distribution<S> {
        self.at(r).pushforward(|t| self.outcome.apply(t, w))
    }

    pub fn check_simplicial(&self) -> SimplicialReport {
        let mut report = SimplicialReport::default();
        for s in self.space.all_simplices() {
            let p = self.get(s);
            if !p.is_normalized() {
                report.unnormalized.push(s);
            }
            if p.support().any(|t| !self.outcome.contains(s.dim, t)) {
                report.invalid_outcomes.push(s);
            }
            if s.dim == 0 {
                continue;
            }
            for i in 0..=s.dim {
                let pushed = p.pushforward(|t| self.outcome.face(s.dim, t, i));
                if pushed != self.at(self.space.raw_face(s, i)) {
                    report.mismatches.push(Mismatch { simplex: s, face: i });
                }
            }
        }
        report
    }

    /// Applies a semiring homomorphism entrywise, checking the homomorphism
    /// laws on 0, 1 and on sums and products of the values that occur.
    pub fn semiring_map<T: Semiring>(&self, phi: impl Fn(&S) -> T) -> Result<SimplicialDistribution<T>, OutcomeError> {
        let bad = || OutcomeError::NotAHomomorphism;
        if phi(&S::zero()) != T::zero() || phi(&S::one()) != T::one() {
            return Err(bad());
        }
        let mut values: Vec<S> = self.table.iter().flatten().flat_map(|d| d.iter().map(|(_, w)| w.clone())).collect();
        values.sort();
        values.dedup();
        values.truncate(16);
        for a in &values {
            for b in &values {
                if phi(&a.add(b)) != phi(a).add(&phi(b)) || phi(&a.mul(b)) != phi(a).mul(&phi(b)) {
                    return Err(bad());
                }
            }
        }
        let table = self.table.iter().map(|row| row.iter().map(|d| d.map_values(&phi)).collect()).collect();
        Ok(SimplicialDistribution { space: self.space.clone(), outcome: self.outcome, table })
    }

    /// The distribution with every simplex's distribution replaced by `f`.
    pub fn map_tables(&self, f: impl Fn(SimplexId, &Distribution<S>) -> Distribution<S>) -> Self {
        let table = self
            .table
            .iter()
            .enumerate()
            .map(|(n, row)| row.iter().enumerate().map(|(id, d)| f(SimplexId::new(n, id), d)).collect())
            .collect();
        SimplicialDistribution { space: self.space.clone(), outcome: self.outcome, table }
    }
}

impl SimplicialDistribution<NonNegRational> {
    /// Convex combination `Σ w_i p_i` of distributions on the same scenario.
    pub fn mixture(parts: &[(NonNegRational, &Self)]) -> Result<Self, OutcomeError> {
        let (_, first) = parts.first().ok_or_else(|| OutcomeError::Malformed("empty mixture".into()))?;
        if parts.iter().any(|(_, p)| p.space != first.space || p.outcome != first.outcome) {
            return Err(OutcomeError::Malformed("mixture of distributions on different scenarios".into()));
        }
        let table = first
            .table
            .iter()
            .enumerate()
            .map(|(n, row)| {
                (0..row.len())
                    .map(|id| {
                        parts.iter().fold(Distribution::new(), |acc, (w, p)| acc.add(&p.table[n][id].scale(w)))
                    })
                    .collect()
            })
            .collect();
        Self::new(first.space.clone(), first.outcome, table)
    }

    pub fn support_boolean(&self) -> SimplicialDistribution<Boolean> {
        self.semiring_map(super::semiring::support_map).expect("support is a homomorphism")
    }
}

/// Embeds a circle distribution given by `(p^1, .., p^n)` into the nerve:
/// the unit vector `e_k` gets `p^k` and the zero tuple gets the rest.
pub fn circle_embed(p: &[NonNegRational]) -> Result<Distribution<NonNegRational>, OutcomeError> {
    let n = p.len();
    let total = NonNegRational::sum(p.iter());
    let rest = NonNegRational::one()
        .checked_sub(&total)
        .ok_or_else(|| OutcomeError::Malformed("circle weights exceed one".into()))?;
    let mut pairs: Vec<(Outcome, NonNegRational)> = vec![(vec![0; n], rest)];
    for (k, w) in p.iter().enumerate() {
        let mut t = vec![0; n];
        t[k] = 1;
        pairs.push((t, w.clone()));
    }
    Ok(Distribution::from_pairs(pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::builtin;

    fn r(n: u64, d: u64) -> NonNegRational {
        NonNegRational::from_ratio(n, d)
    }

    fn four(p: [NonNegRational; 4]) -> Distribution<NonNegRational> {
        let [a, b, c, d] = p;
        Distribution::from_pairs(vec![(vec![0, 0], a), (vec![0, 1], b), (vec![1, 0], c), (vec![1, 1], d)])
    }

    fn on_triangle(p: Distribution<NonNegRational>) -> Result<RationalDistribution, OutcomeError> {
        let x = Arc::new(builtin("delta(2)").unwrap());
        let s = x.find_label("012").unwrap();
        SimplicialDistribution::from_partial(x, OutcomeSpace::Nerve(2), [(s, p)].into())
    }

    #[test]
    fn triangle_marginals() {
        let p = on_triangle(four([r(1, 2), r(0, 1), r(0, 1), r(1, 2)])).unwrap();
        let x = p.space().clone();
        let e = |l: &str| p.get(x.find_label(l).unwrap()).get(&[0]);
        assert_eq!(e("01"), r(1, 2)); // d2
        assert_eq!(e("12"), r(1, 2)); // d0
        assert_eq!(e("02"), NonNegRational::one()); // d1: 00 and 11 both sum to 0
    }

    #[test]
    fn degenerate_distribution() {
        let x = Arc::new(builtin("delta(1)").unwrap());
        let e = x.find_label("01").unwrap();
        let p = SimplicialDistribution::from_partial(
            x,
            OutcomeSpace::Nerve(2),
            [(e, Distribution::from_pairs(vec![(vec![0], r(1, 3)), (vec![1], r(2, 3))]))].into(),
        )
        .unwrap();
        let s0 = SimplexRef::degenerate(e, vec![0]).unwrap();
        let s1 = SimplexRef::degenerate(e, vec![1]).unwrap();
        assert_eq!(p.at(&s0).get(&[0, 1]), r(2, 3));
        assert_eq!(p.at(&s1).get(&[1, 0]), r(2, 3));
    }

    #[test]
    fn glued_triangle_forces_equal_middle_entries() {
        let x = Arc::new(builtin("glued_triangle").unwrap());
        let bad = four([r(1, 2), r(0, 1), r(1, 2), r(0, 1)]);
        let t: Vec<Vec<Distribution<NonNegRational>>> = vec![
            vec![Distribution::delta(vec![]); 2],
            vec![Distribution::delta(vec![0]), bad.pushforward(|t| vec![t[1]])],
            vec![bad],
            vec![],
        ];
        match SimplicialDistribution::new(x, OutcomeSpace::Nerve(2), t) {
            Err(OutcomeError::NotSimplicial(rep)) => assert!(!rep.mismatches.is_empty()),
            other => panic!("expected a mismatch, got {other:?}"),
        }
    }

    #[test]
    fn circle_embedding() {
        let p = circle_embed(&[r(1, 4), r(1, 4)]).unwrap();
        assert_eq!(p.get(&[0, 0]), r(1, 2));
        assert_eq!(p.get(&[1, 0]), r(1, 4));
        assert_eq!(p.get(&[0, 1]), r(1, 4));
        assert_eq!(p.get(&[1, 1]), NonNegRational::zero());
        assert!(circle_embed(&[r(3, 4), r(1, 2)]).is_err());
    }

    #[test]
    fn non_homomorphism_rejected() {
        let p = on_triangle(four([r(1, 4), r(1, 4), r(1, 4), r(1, 4)])).unwrap();
        // sends every nonzero value to true but also 0 to true
        assert!(p.semiring_map(|_| Boolean(true)).is_err());
        let b = p.support_boolean();
        assert_eq!(b.get(SimplexId::new(2, 0)).support_len(), 4);
    }
}
