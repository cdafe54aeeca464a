use std::collections::BTreeMap;
use std::sync::Arc;

use num::{One, Signed, Zero};

use crate::linalg::gauss;
use crate::lp::{feasible, is_farkas_certificate, Feasibility, LinearSystem, Relation, Row};
use crate::outcomes::{Distribution, Outcome, OutcomeSpace, RationalDistribution, SimplicialDistribution};
use crate::rational::{NonNegRational, Q};
use crate::sset::{builtin, PresentedSSet, SimplexId, SimplexRef, SpaceMap};

use super::CtxError;

/// Unknown distributions on the simplices of `X` outside a known part, as
/// `A v = b, v >= 0` over variables `v_{σ,θ}`.
#[derive(Clone, Debug)]
pub struct ExtensionProblem {
    x: Arc<PresentedSSet>,
    y: OutcomeSpace,
    known: Vec<Vec<Option<Distribution<NonNegRational>>>>,
    pub vars: Vec<(SimplexId, Outcome)>,
    index: BTreeMap<(SimplexId, Outcome), usize>,
    pub a: Vec<Vec<Q>>,
    pub b: Vec<Q>,
    /// `(σ, i, θ)` for a face row, `(σ, None, [])` for normalization.
    pub rows: Vec<(SimplexId, Option<usize>, Outcome)>,
}

/// `Σ z_i row_i` has nonnegative coefficients on every variable and negative right-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCertificate {
    pub multipliers: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Feasible(RationalDistribution),
    Infeasible(ExtensionCertificate),
}

impl Extension {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Extension::Feasible(_))
    }
}

impl ExtensionProblem {
    /// `p` lives on `Z`; `f: Z -> X` must be injective on nondegenerate simplices.
    pub fn new(p: &RationalDistribution, f: &SpaceMap, x: Arc<PresentedSSet>) -> Result<Self, CtxError> {
        let z = p.space();
        f.validate(z, &x)?;
        if !f.is_injective() {
            return Err(CtxError::Malformed("extension needs an inclusion".into()));
        }
        let y = p.outcome();
        let mut known: Vec<Vec<Option<Distribution<NonNegRational>>>> =
            (0..=x.max_dim()).map(|n| vec![None; x.count(n)]).collect();
        for s in z.all_simplices() {
            let t = f.image(s).base;
            known[t.dim][t.id] = Some(p.get(s).clone());
        }
        if y.is_nerve_like() {
            for v in known[0].iter_mut() {
                v.get_or_insert_with(|| Distribution::delta(vec![]));
            }
        }
        Ok(Self::build(x, y, known))
    }

    fn build(x: Arc<PresentedSSet>, y: OutcomeSpace, known: Vec<Vec<Option<Distribution<NonNegRational>>>>) -> Self {
        let mut vars = vec![];
        for s in x.all_simplices() {
            if known[s.dim][s.id].is_none() {
                for t in y.simplices(s.dim) {
                    vars.push((s, t));
                }
            }
        }
        let index = vars.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let mut prob = ExtensionProblem { x, y, known, vars, index, a: vec![], b: vec![], rows: vec![] };
        prob.add_rows();
        prob
    }

    /// Linear form `(coefficients, constant)` of the value at outcome `t` of `r`.
    fn value_form(&self, r: &SimplexRef, t: &[u32]) -> (BTreeMap<usize, Q>, Q) {
        let w = r.degeneracy_word();
        let base = r.base;
        match &self.known[base.dim][base.id] {
            Some(d) => {
                let c = d
                    .iter()
                    .filter(|(u, _)| self.y.apply(u, &w) == t)
                    .fold(Q::zero(), |acc, (_, v)| acc + v.value());
                (BTreeMap::new(), c)
            }
            None => {
                let mut coeffs = BTreeMap::new();
                for u in self.y.simplices(base.dim) {
                    if self.y.apply(&u, &w) == t {
                        coeffs.insert(self.index[&(base, u)], Q::one());
                    }
                }
                (coeffs, Q::zero())
            }
        }
    }

    fn add_rows(&mut self) {
        let nvars = self.vars.len();
        let unknown: Vec<SimplexId> =
            self.x.all_simplices().filter(|s| self.known[s.dim][s.id].is_none()).collect();
        for s in unknown {
            let outcomes = self.y.simplices(s.dim);
            let mut row = vec![Q::zero(); nvars];
            for t in &outcomes {
                row[self.index[&(s, t.clone())]] = Q::one();
            }
            self.a.push(row);
            self.b.push(Q::one());
            self.rows.push((s, None, vec![]));
            if s.dim == 0 {
                continue;
            }
            for i in 0..=s.dim {
                let face = self.x.raw_face(s, i).clone();
                for t in self.y.simplices(s.dim - 1) {
                    let mut row = vec![Q::zero(); nvars];
                    for u in &outcomes {
                        if self.y.face(s.dim, u, i) == t {
                            row[self.index[&(s, u.clone())]] += Q::one();
                        }
                    }
                    let (coeffs, c) = self.value_form(&face, &t);
                    for (j, v) in coeffs {
                        row[j] -= v;
                    }
                    self.a.push(row);
                    self.b.push(c);
                    self.rows.push((s, Some(i), t));
                }
            }
        }
    }

    /// Assembles the distribution with `values` on the unknowns.
    pub fn assemble(&self, values: &[Q]) -> Result<RationalDistribution, CtxError> {
        let mut table: Vec<Vec<Distribution<NonNegRational>>> = vec![];
        for n in 0..=self.x.max_dim() {
            let mut row = vec![];
            for s in self.x.simplices(n) {
                match &self.known[n][s.id] {
                    Some(d) => row.push(d.clone()),
                    None => {
                        let mut d = Distribution::new();
                        for t in self.y.simplices(n) {
                            let v = &values[self.index[&(s, t.clone())]];
                            let w = NonNegRational::new(v.clone())
                                .ok_or_else(|| CtxError::Malformed("negative value in extension".into()))?;
                            d.add_weight(t, &w);
                        }
                        row.push(d);
                    }
                }
            }
            table.push(row);
        }
        Ok(SimplicialDistribution::new(self.x.clone(), self.y, table)?)
    }

    pub fn solve(&self) -> Result<Extension, CtxError> {
        match feasible(&self.a, &self.b) {
            Feasibility::Feasible(v) => Ok(Extension::Feasible(self.assemble(&v)?)),
            Feasibility::Infeasible(z) => Ok(Extension::Infeasible(ExtensionCertificate { multipliers: z })),
        }
    }

    pub fn check_certificate(&self, cert: &ExtensionCertificate) -> bool {
        cert.multipliers.len() == self.a.len() && is_farkas_certificate(&self.a, &self.b, &cert.multipliers)
    }

    pub fn var_of(&self, s: SimplexId, t: &[u32]) -> Option<usize> {
        self.index.get(&(s, t.to_vec())).copied()
    }
}

/// Extends `p` on `Z` along `f: Z -> X`, or certifies that no extension exists.
pub fn solve_extension(p: &RationalDistribution, f: &SpaceMap, x: Arc<PresentedSSet>) -> Result<Extension, CtxError> {
    ExtensionProblem::new(p, f, x)?.solve()
}

/// The extension of a distribution on `∂Δ³` with nerve `Z_2` outcomes that puts
/// the least `p_ijk(00)` on `(0,0,0)` and fills the rest from the marginals.
pub fn extend_boundary_delta3(p: &RationalDistribution) -> Result<RationalDistribution, CtxError> {
    if p.outcome() != OutcomeSpace::Nerve(2) {
        return Err(CtxError::Malformed("the min-construction is for nerve(2) outcomes".into()));
    }
    let x = Arc::new(builtin("delta(3)")?);
    let f = SpaceMap::by_labels(p.space(), &x)?;
    let prob = ExtensionProblem::new(p, &f, x.clone())?;
    let m = p
        .space()
        .simplices(2)
        .map(|s| p.get(s).get(&[0, 0]).into_value())
        .min()
        .ok_or_else(|| CtxError::Malformed("no triangles".into()))?;
    let top = SimplexId::new(3, 0);
    let mut a = prob.a.clone();
    let mut b = prob.b.clone();
    let mut row = vec![Q::zero(); prob.vars.len()];
    row[prob.var_of(top, &[0, 0, 0]).expect("top simplex is unknown")] = Q::one();
    a.push(row);
    b.push(m);
    let v = gauss::solve(&a, &b).ok_or_else(|| CtxError::Malformed("marginals are inconsistent".into()))?;
    if v.iter().any(|x| x.is_negative()) {
        return Err(CtxError::Malformed("min-construction produced a negative value".into()));
    }
    prob.assemble(&v)
}

/// All nonsignaling distributions on `(X, Y)` as a system over variables
/// `p_{label}^{θ}` for every nondegenerate simplex of positive dimension.
pub fn nonsignaling_system(x: &PresentedSSet, y: OutcomeSpace) -> LinearSystem {
    let name = |s: SimplexId, t: &[u32]| format!("p_{}^{}", x.label(s), y.format_outcome(t));
    let simplices: Vec<SimplexId> = x.all_simplices().filter(|s| s.dim > 0 || !y.is_nerve_like()).collect();
    let mut vars = vec![];
    let mut index = BTreeMap::new();
    for &s in &simplices {
        for t in y.simplices(s.dim) {
            index.insert((s, t.clone()), vars.len());
            vars.push(name(s, &t));
        }
    }
    let mut sys = LinearSystem::new(vars);
    sys.add_nonnegativity();
    let n = sys.vars.len();
    // value of a possibly degenerate simplex at an outcome, as a coefficient vector plus constant
    let form = |r: &SimplexRef, t: &[u32]| -> (Vec<Q>, Q) {
        let mut c = vec![Q::zero(); n];
        if r.base.dim == 0 && y.is_nerve_like() {
            return (c, Q::one());
        }
        let w = r.degeneracy_word();
        for u in y.simplices(r.base.dim) {
            if y.apply(&u, &w) == t {
                c[index[&(r.base, u)]] += Q::one();
            }
        }
        (c, Q::zero())
    };
    for &s in &simplices {
        let mut row = vec![Q::zero(); n];
        for t in y.simplices(s.dim) {
            row[index[&(s, t)]] = Q::one();
        }
        sys.push(Row::new(row, Relation::Eq, Q::one()));
        if s.dim == 0 {
            continue;
        }
        for i in 0..=s.dim {
            let face = x.raw_face(s, i);
            for t in y.simplices(s.dim - 1) {
                let mut row = vec![Q::zero(); n];
                for u in y.simplices(s.dim) {
                    if y.face(s.dim, &u, i) == t {
                        row[index[&(s, u)]] += Q::one();
                    }
                }
                let (c, k) = form(face, &t);
                for (r, v) in row.iter_mut().zip(c) {
                    *r -= v;
                }
                sys.push(Row::new(row, Relation::Eq, k));
            }
        }
    }
    sys
}

/// Projects a system onto the named variables by Fourier–Motzkin elimination,
/// using equations first.
pub fn project_onto(sys: &LinearSystem, keep: &[String]) -> LinearSystem {
    let mut cur = crate::lp::simplify(sys.clone());
    loop {
        let elim: Vec<usize> = (0..cur.vars.len()).filter(|&j| !keep.contains(&cur.vars[j])).collect();
        if elim.is_empty() {
            break;
        }
        let with_eq = elim
            .iter()
            .copied()
            .find(|&j| cur.rows.iter().any(|r| r.rel == Relation::Eq && !r.coeffs[j].is_zero()));
        let j = with_eq.unwrap_or_else(|| {
            *elim
                .iter()
                .min_by_key(|&&j| {
                    let pos = cur.rows.iter().filter(|r| r.normalized().coeffs[j].is_positive()).count();
                    let neg = cur.rows.iter().filter(|r| r.normalized().coeffs[j].is_negative()).count();
                    pos * neg
                })
                .unwrap()
        });
        let name = cur.vars[j].clone();
        cur = crate::lp::fourier_motzkin(&cur, &name);
    }
    // restore the requested variable order
    let perm: Vec<usize> = keep.iter().map(|k| cur.var(k).expect("kept variable survives")).collect();
    LinearSystem {
        vars: keep.to_vec(),
        rows: cur
            .rows
            .iter()
            .map(|r| Row::new(perm.iter().map(|&j| r.coeffs[j].clone()).collect(), r.rel, r.rhs.clone()))
            .collect(),
    }
}
