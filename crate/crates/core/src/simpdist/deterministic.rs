use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use num::bigint::BigInt;
use serde::Serialize;

use crate::limits::Limits;
use crate::linalg::zmod::solve_mod;
use crate::outcomes::{Outcome, OutcomeSpace};
use crate::par::{self, Execution};
use crate::sset::{PresentedSSet, SimplexId, SimplexRef, SpaceMap};

use super::SimpError;

/// A simplicial map `X -> Y`, stored as the outcome of every nondegenerate simplex.
///
/// For nerve outcomes the edge values already determine the whole map.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DeterministicAssignment {
    values: Vec<Vec<Outcome>>,
}

impl DeterministicAssignment {
    pub fn from_values(values: Vec<Vec<Outcome>>) -> Self {
        DeterministicAssignment { values }
    }

    /// Builds the nerve assignment with the given value on each nondegenerate edge.
    pub fn from_edge_labeling(x: &PresentedSSet, y: OutcomeSpace, edges: &[u32]) -> Result<Self, SimpError> {
        if !y.is_nerve_like() {
            return Err(SimpError::Unsupported(format!("edge labelings need nerve outcomes, got {y}")));
        }
        if edges.len() != x.count(1) {
            return Err(SimpError::Malformed(format!("{} edge values for {} edges", edges.len(), x.count(1))));
        }
        let d = y.modulus();
        let mut values: Vec<Vec<Outcome>> = vec![vec![vec![]; x.count(0)]];
        for n in 1..=x.max_dim() {
            let mut row = Vec::with_capacity(x.count(n));
            for s in x.simplices(n) {
                let t: Outcome = x
                    .spine(&s.into())?
                    .iter()
                    .map(|e| if e.is_degenerate() { 0 } else { edges[e.base.id] % d })
                    .collect();
                row.push(t);
            }
            values.push(row);
        }
        let r = DeterministicAssignment { values };
        if !r.is_valid(x, y) {
            return Err(SimpError::InvalidAssignment);
        }
        Ok(r)
    }

    pub fn values(&self) -> &[Vec<Outcome>] {
        &self.values
    }

    pub fn get(&self, s: SimplexId) -> &Outcome {
        &self.values[s.dim][s.id]
    }

    /// The outcome of an arbitrary simplex, degenerate ones included.
    pub fn at(&self, y: OutcomeSpace, r: &SimplexRef) -> Outcome {
        let base = self.get(r.base);
        if r.is_degenerate() {
            y.apply(base, &r.degeneracy_word())
        } else {
            base.clone()
        }
    }

    /// Values on nondegenerate edges, for nerve outcomes.
    pub fn edge_values(&self) -> Vec<u32> {
        self.values.get(1).map_or(vec![], |row| row.iter().map(|t| t[0]).collect())
    }

    /// `{edge label: value}`, the serialized form for nerve outcomes.
    pub fn edge_map(&self, x: &PresentedSSet) -> BTreeMap<String, u32> {
        x.simplices(1).zip(self.edge_values()).map(|(e, v)| (x.label(e).to_string(), v)).collect()
    }

    pub fn is_valid(&self, x: &PresentedSSet, y: OutcomeSpace) -> bool {
        if self.values.len() != x.max_dim() + 1 {
            return false;
        }
        for s in x.all_simplices() {
            if self.values[s.dim].len() != x.count(s.dim) {
                return false;
            }
            let t = self.get(s);
            if !y.contains(s.dim, t) {
                return false;
            }
            if s.dim == 0 {
                continue;
            }
            for (i, f) in x.raw_faces(s).iter().enumerate() {
                if y.face(s.dim, t, i) != self.at(y, f) {
                    return false;
                }
            }
        }
        true
    }

    /// `r ∘ f` for a map `f: Z -> X`.
    pub fn pullback(&self, y: OutcomeSpace, f: &SpaceMap, source: &PresentedSSet) -> DeterministicAssignment {
        let values = (0..=source.max_dim())
            .map(|n| source.simplices(n).map(|s| self.at(y, f.image(s))).collect())
            .collect();
        DeterministicAssignment { values }
    }

    /// Post-composition with an outcome map given on tuples.
    pub fn map_outcomes(&self, g: impl Fn(&[u32]) -> Outcome) -> DeterministicAssignment {
        DeterministicAssignment {
            values: self.values.iter().map(|row| row.iter().map(|t| g(t)).collect()).collect(),
        }
    }
}

/// Row `f(d1σ) - f(d2σ) - f(d0σ)` for every nondegenerate triangle, over the nondegenerate edges.
pub(crate) fn cocycle_rows(x: &PresentedSSet) -> Vec<Vec<BigInt>> {
    let m = x.count(1);
    let mut rows = vec![];
    if x.max_dim() < 2 {
        return rows;
    }
    for s in x.simplices(2) {
        let mut row = vec![BigInt::from(0); m];
        for (i, coef) in [(0usize, -1i64), (1, 1), (2, -1)] {
            let f = x.raw_face(s, i);
            if !f.is_degenerate() {
                row[f.base.id] += coef;
            }
        }
        rows.push(row);
    }
    rows
}

/// Solution set of the edge system with optional pins `edge -> value`.
fn edge_solutions(
    x: &PresentedSSet,
    d: u32,
    pins: &BTreeMap<SimplexId, u32>,
) -> Result<Option<crate::linalg::zmod::ZmodSolutions>, SimpError> {
    let m = x.count(1);
    let mut a = cocycle_rows(x);
    let mut b = vec![BigInt::from(0); a.len()];
    for (&e, &v) in pins {
        if e.dim != 1 || !x.contains(e) {
            return Err(SimpError::Malformed(format!("pin on {e}, which is not an edge")));
        }
        let mut row = vec![BigInt::from(0); m];
        row[e.id] = BigInt::from(1);
        a.push(row);
        b.push(BigInt::from(v));
    }
    let rows = a.len();
    Ok(solve_mod(&a, &b, rows, m, d as u64))
}

/// Number of deterministic assignments to a nerve `N Z_d`, without enumerating.
pub fn count_deterministic_nerve(x: &PresentedSSet, d: u32) -> Result<u128, SimpError> {
    Ok(edge_solutions(x, d, &BTreeMap::new())?.map_or(0, |s| s.count()))
}

/// All deterministic assignments, in lexicographic order of edge values for
/// nerve outcomes and of the full value table otherwise.
pub fn enumerate_deterministic(
    x: &PresentedSSet,
    y: OutcomeSpace,
    limits: &Limits,
) -> Result<Vec<DeterministicAssignment>, SimpError> {
    enumerate_deterministic_pinned(x, y, &BTreeMap::new(), limits)
}

/// As [`enumerate_deterministic`], with some edges forced to given values.
pub fn enumerate_deterministic_pinned(
    x: &PresentedSSet,
    y: OutcomeSpace,
    pins: &BTreeMap<SimplexId, u32>,
    limits: &Limits,
) -> Result<Vec<DeterministicAssignment>, SimpError> {
    y.check()?;
    match y {
        OutcomeSpace::Nerve(d) => {
            let Some(sol) = edge_solutions(x, d, pins)? else { return Ok(vec![]) };
            let count = sol.count();
            if count > limits.max_vertices {
                return Err(SimpError::ResourceLimit { needed: count, cap: limits.max_vertices });
            }
            sol.enumerate().iter().map(|f| DeterministicAssignment::from_edge_labeling(x, y, f)).collect()
        }
        _ => {
            let pinned: BTreeMap<SimplexId, Outcome> = pins.iter().map(|(&e, &v)| (e, vec![v])).collect();
            enumerate_deterministic_general(x, y, |s, t| pinned.get(&s).map_or(true, |p| p == t), limits, Execution::default())
        }
    }
}

/// Backtracking over all simplicial maps `X -> Y`, keeping only those whose
/// value `t` on every nondegenerate `s` passes `allowed(s, t)`.
pub fn enumerate_deterministic_general<F>(
    x: &PresentedSSet,
    y: OutcomeSpace,
    allowed: F,
    limits: &Limits,
    mode: Execution,
) -> Result<Vec<DeterministicAssignment>, SimpError>
where
    F: Fn(SimplexId, &Outcome) -> bool + Sync + Send,
{
    y.check()?;
    let order: Vec<SimplexId> = x.all_simplices().collect();
    let found = AtomicU64::new(0);
    let search = Search { x, y, order: &order, allowed: &allowed, cap: limits.max_vertices, found: &found };
    let mut partial: Vec<Vec<Option<Outcome>>> = (0..=x.max_dim()).map(|n| vec![None; x.count(n)]).collect();
    let Some(&first) = order.first() else {
        return Ok(vec![DeterministicAssignment { values: vec![vec![]; x.max_dim() + 1] }]);
    };
    let firsts = search.candidates(first, &partial)?;
    let branches: Vec<Result<Vec<DeterministicAssignment>, SimpError>> = par::map(&firsts, mode, |t| {
        let mut p = partial.clone();
        p[first.dim][first.id] = Some(t.clone());
        let mut out = vec![];
        search.dfs(1, &mut p, &mut out)?;
        Ok(out)
    });
    partial.clear();
    let mut out = vec![];
    for b in branches {
        out.extend(b?);
    }
    Ok(out)
}

struct Search<'a, F> {
    x: &'a PresentedSSet,
    y: OutcomeSpace,
    order: &'a [SimplexId],
    allowed: &'a F,
    cap: u128,
    found: &'a AtomicU64,
}

impl<F: Fn(SimplexId, &Outcome) -> bool> Search<'_, F> {
    fn value_at(&self, partial: &[Vec<Option<Outcome>>], r: &SimplexRef) -> Outcome {
        let base = partial[r.base.dim][r.base.id].as_ref().expect("faces are assigned first");
        if r.is_degenerate() {
            self.y.apply(base, &r.degeneracy_word())
        } else {
            base.clone()
        }
    }

    fn candidates(&self, s: SimplexId, partial: &[Vec<Option<Outcome>>]) -> Result<Vec<Outcome>, SimpError> {
        let n = s.dim;
        let faces: Vec<Outcome> = if n == 0 {
            vec![]
        } else {
            self.x.raw_faces(s).iter().map(|f| self.value_at(partial, f)).collect()
        };
        let pool = if n >= 1 && self.y.is_nerve_like() {
            // the first and last faces pin every entry of a nerve tuple
            let mut t = faces[n].clone();
            t.push(*faces[0].last().unwrap_or(&0));
            if n == 1 {
                // both faces are vertices, so the edge value is free
                (0..self.y.modulus()).map(|a| vec![a]).filter(|t| self.y.contains(1, t)).collect()
            } else {
                vec![t]
            }
        } else {
            if self.y.count(n) > self.cap {
                return Err(SimpError::ResourceLimit { needed: self.y.count(n), cap: self.cap });
            }
            self.y.simplices(n)
        };
        Ok(pool
            .into_iter()
            .filter(|t| self.y.contains(n, t))
            .filter(|t| (0..faces.len()).all(|i| self.y.face(n, t, i) == faces[i]))
            .filter(|t| (self.allowed)(s, t))
            .collect())
    }

    fn dfs(
        &self,
        k: usize,
        partial: &mut Vec<Vec<Option<Outcome>>>,
        out: &mut Vec<DeterministicAssignment>,
    ) -> Result<(), SimpError> {
        if k == self.order.len() {
            let total = self.found.fetch_add(1, Ordering::Relaxed) as u128 + 1;
            if total > self.cap {
                return Err(SimpError::ResourceLimit { needed: total, cap: self.cap });
            }
            let values = partial.iter().map(|row| row.iter().map(|t| t.clone().unwrap()).collect()).collect();
            out.push(DeterministicAssignment { values });
            return Ok(());
        }
        let s = self.order[k];
        for t in self.candidates(s, partial)? {
            partial[s.dim][s.id] = Some(t);
            self.dfs(k + 1, partial, out)?;
        }
        partial[s.dim][s.id] = None;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::builtin;

    fn general(x: &PresentedSSet, y: OutcomeSpace) -> Vec<DeterministicAssignment> {
        let mut v = enumerate_deterministic_general(x, y, |_, _| true, &Limits::default(), Execution::Sequential).unwrap();
        v.sort();
        v
    }

    #[test]
    fn nerve_solver_agrees_with_backtracking() {
        for name in ["delta(2)", "delta(3)", "boundary_delta(3)", "circle", "diamond", "punctured_torus", "torus", "glued_triangle", "square_Q", "space_H", "mermin_square_state_dep"] {
            let x = builtin(name).unwrap();
            for d in [2, 3] {
                let y = OutcomeSpace::Nerve(d);
                let mut a = enumerate_deterministic(&x, y, &Limits::default()).unwrap();
                a.sort();
                assert_eq!(a, general(&x, y), "{name} d={d}");
                assert_eq!(count_deterministic_nerve(&x, d).unwrap(), a.len() as u128);
            }
        }
    }

    #[test]
    fn delta_n_maps_are_n_simplices() {
        for n in 0..=3 {
            let x = builtin(&format!("delta({n})")).unwrap();
            for y in [OutcomeSpace::Nerve(2), OutcomeSpace::Nerve(3), OutcomeSpace::Discrete(2), OutcomeSpace::Circle(2)] {
                assert_eq!(general(&x, y).len() as u128, y.count(n), "{n} {y}");
            }
        }
    }

    #[test]
    fn glued_triangle_forces_x_to_zero() {
        let x = builtin("glued_triangle").unwrap();
        let all = enumerate_deterministic(&x, OutcomeSpace::Nerve(2), &Limits::default()).unwrap();
        assert_eq!(all.len(), 2);
        for r in &all {
            assert_eq!(r.edge_map(&x)["x"], 0);
        }
    }

    #[test]
    fn pins_and_caps() {
        let x = builtin("punctured_torus").unwrap();
        let x0 = x.find_label("x0").unwrap();
        let pins = [(x0, 1)].into();
        let all = enumerate_deterministic_pinned(&x, OutcomeSpace::Nerve(2), &pins, &Limits::default()).unwrap();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|r| r.edge_map(&x)["x0"] == 1));
        let err = enumerate_deterministic(&x, OutcomeSpace::Nerve(2), &Limits::with_max_vertices(15));
        assert!(matches!(err, Err(SimpError::ResourceLimit { .. })));
    }

    #[test]
    fn punctured_torus_with_circle_outcomes() {
        let x = builtin("punctured_torus").unwrap();
        assert_eq!(general(&x, OutcomeSpace::Circle(2)).len(), 7);
    }
}
