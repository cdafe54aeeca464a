//! Measurement scenarios `(M, C)` with outcomes in `Z_d`, as simplicial
//! distributions on `(X_C, Δ_{Z_d})`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num::{One, Zero};

use crate::lp::{feasible, Feasibility};
use crate::outcomes::{Distribution, Outcome, OutcomeSpace, RationalDistribution, SimplicialDistribution};
use crate::rational::{NonNegRational, Q};
use crate::sset::{PresentedSSet, SimplexId, SimplexRef, DEFAULT_MAX_DIM};

use super::CtxError;

/// Measurements in their total order, and contexts as sorted index lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteScenario {
    pub measurements: Vec<String>,
    pub contexts: Vec<Vec<usize>>,
    pub d: u32,
    pub space: Arc<PresentedSSet>,
    /// Top simplex of each context in `space`.
    pub tops: Vec<SimplexId>,
}

/// One distribution per context, on tuples indexed like the context.
pub type ScenarioTable = Vec<Distribution<NonNegRational>>;

pub fn discrete_embed(measurements: &[&str], contexts: &[Vec<&str>], d: u32) -> Result<DiscreteScenario, CtxError> {
    OutcomeSpace::Discrete(d).check()?;
    let pos: BTreeMap<&str, usize> = measurements.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    if pos.len() != measurements.len() {
        return Err(CtxError::Malformed("repeated measurement".into()));
    }
    let mut sets: Vec<Vec<usize>> = vec![];
    for c in contexts {
        let mut ix = c
            .iter()
            .map(|m| pos.get(m).copied().ok_or_else(|| CtxError::Malformed(format!("unknown measurement {m:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        ix.sort_unstable();
        ix.dedup();
        if ix.is_empty() {
            return Err(CtxError::Malformed("empty context".into()));
        }
        sets.push(ix);
    }
    let covered: BTreeSet<usize> = sets.iter().flatten().copied().collect();
    if covered.len() != measurements.len() {
        return Err(CtxError::Malformed("contexts do not cover the measurements".into()));
    }
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            if i != j && a.iter().all(|m| b.contains(m)) {
                return Err(CtxError::Malformed("contexts are not an antichain".into()));
            }
        }
    }
    let space = PresentedSSet::from_ordered_complex(measurements, &sets, DEFAULT_MAX_DIM)?;
    let mut by_vertices: BTreeMap<Vec<usize>, SimplexId> = BTreeMap::new();
    for s in space.all_simplices() {
        by_vertices.insert(space.vertices(&SimplexRef::from(s))?, s);
    }
    let tops = sets.iter().map(|c| by_vertices[c]).collect();
    Ok(DiscreteScenario {
        measurements: measurements.iter().map(|m| m.to_string()).collect(),
        contexts: sets,
        d,
        space: Arc::new(space),
        tops,
    })
}

impl DiscreteScenario {
    pub fn outcome(&self) -> OutcomeSpace {
        OutcomeSpace::Discrete(self.d)
    }

    /// Fails unless the table is nonsignaling.
    pub fn to_simplicial(&self, table: &ScenarioTable) -> Result<RationalDistribution, CtxError> {
        if table.len() != self.contexts.len() {
            return Err(CtxError::Malformed(format!("expected {} context tables", self.contexts.len())));
        }
        let given = self.tops.iter().copied().zip(table.iter().cloned()).collect();
        Ok(SimplicialDistribution::from_partial(self.space.clone(), self.outcome(), given)?)
    }

    pub fn to_table(&self, p: &RationalDistribution) -> ScenarioTable {
        self.tops.iter().map(|&s| p.get(s).clone()).collect()
    }

    /// All global assignments `M -> Z_d`, lexicographically.
    pub fn global_assignments(&self) -> Vec<Outcome> {
        let n = self.measurements.len();
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out.into_iter().flat_map(|g: Outcome| (0..self.d).map(move |a| [g.clone(), vec![a]].concat())).collect();
        }
        out
    }

    /// Noncontextuality read directly off the context tables: is there a
    /// distribution on global assignments whose context marginals give `table`?
    pub fn sheaf_noncontextual(&self, table: &ScenarioTable) -> bool {
        let globals = self.global_assignments();
        let mut keys: Vec<(usize, Outcome)> = vec![];
        for (i, c) in self.contexts.iter().enumerate() {
            let mut tuples = vec![vec![]];
            for _ in c {
                tuples = tuples.into_iter().flat_map(|t: Outcome| (0..self.d).map(move |a| [t.clone(), vec![a]].concat())).collect();
            }
            keys.extend(tuples.into_iter().map(|t| (i, t)));
        }
        let index: BTreeMap<&(usize, Outcome), usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut a = vec![vec![Q::zero(); globals.len()]; keys.len() + 1];
        for (j, g) in globals.iter().enumerate() {
            for (i, c) in self.contexts.iter().enumerate() {
                let t: Outcome = c.iter().map(|&m| g[m]).collect();
                a[index[&(i, t)]][j] = Q::one();
            }
            a[keys.len()][j] = Q::one();
        }
        let mut b: Vec<Q> = keys.iter().map(|(i, t)| table[*i].get(t).value().clone()).collect();
        b.push(Q::one());
        matches!(feasible(&a, &b), Feasibility::Feasible(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;
    use crate::contextuality::is_noncontextual;
    use crate::simpdist::enumerate_deterministic;

    fn chsh() -> DiscreteScenario {
        discrete_embed(&["a0", "a1", "b0", "b1"], &[vec!["a0", "b0"], vec!["a0", "b1"], vec!["a1", "b0"], vec!["a1", "b1"]], 2).unwrap()
    }

    fn pr_table() -> ScenarioTable {
        let h = NonNegRational::from_ratio(1, 2);
        (0..4)
            .map(|i| {
                let anti = i == 3;
                Distribution::from_pairs((0..2u32).map(|a| (vec![a, a ^ anti as u32], h.clone())))
            })
            .collect()
    }

    #[test]
    fn chsh_space_is_a_four_cycle() {
        let s = chsh();
        assert_eq!(s.space.count(0), 4);
        assert_eq!(s.space.count(1), 4);
        assert_eq!(s.space.count(2), 0);
        let dets = enumerate_deterministic(&s.space, s.outcome(), &Limits::default()).unwrap();
        assert_eq!(dets.len(), 16);
    }

    #[test]
    fn pr_box_agrees_with_direct_test() {
        let s = chsh();
        let t = pr_table();
        let p = s.to_simplicial(&t).unwrap();
        assert_eq!(s.to_table(&p), t);
        assert!(!s.sheaf_noncontextual(&t));
        assert!(is_noncontextual(&p, &Limits::default()).unwrap().is_contextual());
    }

    #[test]
    fn rejects_bad_covers() {
        assert!(discrete_embed(&["a", "b"], &[vec!["a"]], 2).is_err());
        assert!(discrete_embed(&["a", "b"], &[vec!["a"], vec!["a", "b"]], 2).is_err());
    }
}
