use std::collections::BTreeMap;
use std::sync::Arc;

use crate::outcomes::{Distribution, OutcomeSpace, Semiring, SimplicialDistribution};
use crate::sset::{PresentedSSet, SpaceMap};

use super::deterministic::DeterministicAssignment;
use super::SimpError;

/// A finite mixture of deterministic assignments with weights in a semiring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalDistribution<S> {
    space: Arc<PresentedSSet>,
    outcome: OutcomeSpace,
    weights: BTreeMap<DeterministicAssignment, S>,
}

impl<S: Semiring> ClassicalDistribution<S> {
    /// Checks every assignment and normalization; repeated assignments add up.
    pub fn new(
        space: Arc<PresentedSSet>,
        outcome: OutcomeSpace,
        pairs: impl IntoIterator<Item = (DeterministicAssignment, S)>,
    ) -> Result<Self, SimpError> {
        let mut weights: BTreeMap<DeterministicAssignment, S> = BTreeMap::new();
        for (r, w) in pairs {
            if !r.is_valid(&space, outcome) {
                return Err(SimpError::InvalidAssignment);
            }
            if w.is_zero() {
                continue;
            }
            let e = weights.entry(r).or_insert_with(S::zero);
            *e = e.add(&w);
        }
        let d = ClassicalDistribution { space, outcome, weights };
        if S::sum(d.weights.values()) != S::one() {
            return Err(SimpError::Unnormalized);
        }
        Ok(d)
    }

    pub fn delta(space: Arc<PresentedSSet>, outcome: OutcomeSpace, r: DeterministicAssignment) -> Result<Self, SimpError> {
        Self::new(space, outcome, [(r, S::one())])
    }

    pub fn space(&self) -> &Arc<PresentedSSet> {
        &self.space
    }

    pub fn outcome(&self) -> OutcomeSpace {
        self.outcome
    }

    pub fn weights(&self) -> &BTreeMap<DeterministicAssignment, S> {
        &self.weights
    }

    pub fn weight(&self, r: &DeterministicAssignment) -> S {
        self.weights.get(r).cloned().unwrap_or_else(S::zero)
    }

    /// `Θ(d)_σ(θ) = Σ_{r_σ = θ} d(r)`.
    pub fn theta(&self) -> SimplicialDistribution<S> {
        let x = &self.space;
        let table = (0..=x.max_dim())
            .map(|n| {
                x.simplices(n)
                    .map(|s| {
                        let mut dist = Distribution::new();
                        for (r, w) in &self.weights {
                            dist.add_weight(r.get(s).clone(), w);
                        }
                        dist
                    })
                    .collect()
            })
            .collect();
        SimplicialDistribution::new(x.clone(), self.outcome, table).expect("mixtures of deterministic maps are simplicial")
    }

    /// Pushforward along restriction `r ↦ r ∘ f` for `f: Z -> X`.
    pub fn restrict(&self, f: &SpaceMap, source: Arc<PresentedSSet>) -> ClassicalDistribution<S> {
        let mut weights: BTreeMap<DeterministicAssignment, S> = BTreeMap::new();
        for (r, w) in &self.weights {
            let e = weights.entry(r.pullback(self.outcome, f, &source)).or_insert_with(S::zero);
            *e = e.add(w);
        }
        ClassicalDistribution { space: source, outcome: self.outcome, weights }
    }

    /// Post-composes every assignment with an outcome map.
    pub fn pushforward_outcomes(&self, to: OutcomeSpace, g: impl Fn(&[u32]) -> Vec<u32>) -> ClassicalDistribution<S> {
        let mut weights: BTreeMap<DeterministicAssignment, S> = BTreeMap::new();
        for (r, w) in &self.weights {
            let e = weights.entry(r.map_outcomes(&g)).or_insert_with(S::zero);
            *e = e.add(w);
        }
        ClassicalDistribution { space: self.space.clone(), outcome: to, weights }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;
    use crate::rational::NonNegRational;
    use crate::simpdist::enumerate_deterministic;
    use crate::sset::builtin;

    #[test]
    fn uniform_mixture_on_square_is_uniform() {
        let x = Arc::new(builtin("punctured_torus").unwrap());
        let y = OutcomeSpace::Nerve(2);
        let all = enumerate_deterministic(&x, y, &Limits::default()).unwrap();
        let w = NonNegRational::from_ratio(1, all.len() as u64);
        let d = ClassicalDistribution::new(x.clone(), y, all.into_iter().map(|r| (r, w.clone()))).unwrap();
        let p = d.theta();
        let quarter = NonNegRational::from_ratio(1, 4);
        for s in x.simplices(2) {
            for t in y.simplices(2) {
                assert_eq!(p.get(s).get(&t), quarter);
            }
        }
    }

    #[test]
    fn unnormalized_rejected() {
        let x = Arc::new(builtin("delta(1)").unwrap());
        let y = OutcomeSpace::Nerve(2);
        let all = enumerate_deterministic(&x, y, &Limits::default()).unwrap();
        let half = NonNegRational::from_ratio(1, 2);
        assert!(matches!(
            ClassicalDistribution::new(x, y, [(all[0].clone(), half)]),
            Err(SimpError::Unnormalized)
        ));
    }
}
