use std::collections::BTreeMap;

use num::{One, Zero};

use crate::limits::Limits;
use crate::lp::{feasible, Feasibility};
use crate::outcomes::{Outcome, RationalDistribution};
use crate::rational::{NonNegRational, Q};
use crate::simpdist::{enumerate_deterministic, ClassicalDistribution, DeterministicAssignment};
use crate::sset::SimplexId;

use super::CtxError;

/// `Σ c_{σ,θ} p_σ(θ) <= bound` on every deterministic distribution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatingFunctional {
    pub coefficients: BTreeMap<(SimplexId, Outcome), Q>,
    pub bound: Q,
}

impl SeparatingFunctional {
    pub fn value(&self, p: &RationalDistribution) -> Q {
        self.coefficients
            .iter()
            .fold(Q::zero(), |acc, ((s, t), c)| acc + c * p.get(*s).get(t).value())
    }

    pub fn value_at_vertex(&self, r: &DeterministicAssignment) -> Q {
        self.coefficients
            .iter()
            .filter(|((s, t), _)| r.get(*s) == t)
            .fold(Q::zero(), |acc, (_, c)| acc + c)
    }

    /// Holds on every listed vertex and fails at `p`.
    pub fn separates(&self, p: &RationalDistribution, vertices: &[DeterministicAssignment]) -> bool {
        vertices.iter().all(|r| self.value_at_vertex(r) <= self.bound) && self.value(p) > self.bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Noncontextual(ClassicalDistribution<NonNegRational>),
    Contextual(SeparatingFunctional),
}

impl Verdict {
    pub fn is_contextual(&self) -> bool {
        matches!(self, Verdict::Contextual(_))
    }

    /// Re-checks the stored certificate exactly.
    pub fn verify(&self, p: &RationalDistribution, limits: &Limits) -> Result<bool, CtxError> {
        match self {
            Verdict::Noncontextual(d) => Ok(d.theta() == *p),
            Verdict::Contextual(f) => {
                let vertices = enumerate_deterministic(p.space(), p.outcome(), limits)?;
                Ok(f.separates(p, &vertices))
            }
        }
    }
}

/// Decides whether `p` lies in the image of `Θ` by exact LP over the deterministic vertices.
pub fn is_noncontextual(p: &RationalDistribution, limits: &Limits) -> Result<Verdict, CtxError> {
    let x = p.space();
    let y = p.outcome();
    let vertices = enumerate_deterministic(x, y, limits)?;
    let gens = x.generating();
    let mut keys: Vec<(SimplexId, Outcome)> = vec![];
    for &s in &gens {
        for t in y.simplices(s.dim) {
            keys.push((s, t));
        }
    }
    let index: BTreeMap<&(SimplexId, Outcome), usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let rows = keys.len() + 1;
    let mut a = vec![vec![Q::zero(); vertices.len()]; rows];
    for (j, r) in vertices.iter().enumerate() {
        for &s in &gens {
            let i = index[&(s, r.get(s).clone())];
            a[i][j] = Q::one();
        }
        a[rows - 1][j] = Q::one();
    }
    let mut b: Vec<Q> = keys.iter().map(|(s, t)| p.get(*s).get(t).value().clone()).collect();
    b.push(Q::one());

    match feasible(&a, &b) {
        Feasibility::Feasible(lambda) => {
            let pairs = vertices
                .into_iter()
                .zip(lambda)
                .filter(|(_, w)| !w.is_zero())
                .map(|(r, w)| (r, NonNegRational::new(w).expect("simplex solutions are nonnegative")));
            let d = ClassicalDistribution::new(x.clone(), y, pairs)?;
            debug_assert!(d.theta() == *p);
            Ok(Verdict::Noncontextual(d))
        }
        Feasibility::Infeasible(z) => {
            let coefficients = keys
                .into_iter()
                .zip(&z)
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, -c))
                .collect();
            let f = SeparatingFunctional { coefficients, bound: z[rows - 1].clone() };
            debug_assert!(f.separates(p, &vertices));
            Ok(Verdict::Contextual(f))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::outcomes::{Distribution, OutcomeSpace, SimplicialDistribution};
    use crate::sset::builtin;
    use std::sync::Arc;

    fn glued(p: [u64; 4], den: u64) -> RationalDistribution {
        let x = Arc::new(builtin("glued_triangle").unwrap());
        let y = OutcomeSpace::Nerve(2);
        let d = Distribution::from_pairs(
            y.simplices(2).into_iter().zip(p).map(|(t, w)| (t, NonNegRational::from_ratio(w, den))),
        );
        SimplicialDistribution::from_partial(x, y, [(SimplexId::new(2, 0), d)].into()).unwrap()
    }

    #[test]
    fn glued_triangle_examples() {
        let limits = Limits::default();
        let p = glued([0, 0, 1, 1], 2);
        let v = is_noncontextual(&p, &limits).unwrap();
        assert!(v.is_contextual());
        assert!(v.verify(&p, &limits).unwrap());
        let p = glued([1, 1, 0, 0], 2);
        let v = is_noncontextual(&p, &limits).unwrap();
        assert!(!v.is_contextual());
        assert!(v.verify(&p, &limits).unwrap());
    }
}
