use crate::limits::Limits;
use crate::lp::{canonicalize, fourier_motzkin, hull_facets, simplify, LinearSystem, Maximum, Relation, Row};
use crate::outcomes::OutcomeSpace;
use crate::rational::{qi, Q};
use crate::simpdist::enumerate_deterministic;
use crate::sset::{PresentedSSet, SimplexId};

use super::CtxError;

/// Above this many vertices the hull is computed by Fourier–Motzkin.
pub const DD_VERTEX_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FacetMethod {
    #[default]
    Auto,
    DoubleDescription,
    FourierMotzkin,
}

/// Coordinates `p_σ^θ` for the chosen simplices, the last outcome of each dropped.
pub fn facet_coordinates(x: &PresentedSSet, y: OutcomeSpace, simplices: &[SimplexId]) -> Vec<(SimplexId, Vec<u32>, String)> {
    let mut out = vec![];
    for &s in simplices {
        let mut ts = y.simplices(s.dim);
        ts.pop();
        for t in ts {
            let name = format!("p_{}^{}", x.label(s), y.format_outcome(&t));
            out.push((s, t, name));
        }
    }
    out
}

/// Equations and facets of the convex hull of the deterministic distributions
/// of `(X, Y)`, in the coordinates of [`facet_coordinates`].
pub fn classical_facets(
    x: &PresentedSSet,
    y: OutcomeSpace,
    simplices: &[SimplexId],
    method: FacetMethod,
    limits: &Limits,
) -> Result<LinearSystem, CtxError> {
    let coords = facet_coordinates(x, y, simplices);
    let vertices = enumerate_deterministic(x, y, limits)?;
    if vertices.is_empty() {
        return Err(CtxError::Malformed("no deterministic distributions".into()));
    }
    let points: Vec<Vec<Q>> = vertices
        .iter()
        .map(|r| coords.iter().map(|(s, t, _)| if r.get(*s) == t { qi(1) } else { qi(0) }).collect())
        .collect();
    let vars: Vec<String> = coords.iter().map(|c| c.2.clone()).collect();
    let use_dd = match method {
        FacetMethod::Auto => points.len() <= DD_VERTEX_LIMIT,
        FacetMethod::DoubleDescription => true,
        FacetMethod::FourierMotzkin => false,
    };
    let mut sys = if use_dd {
        let h = hull_facets(&points);
        LinearSystem { vars, rows: h.equations.into_iter().chain(h.facets).collect() }
    } else {
        hull_by_elimination(&points, vars)
    };
    sys.rows.sort_by(|a, b| (a.rel != Relation::Eq).cmp(&(b.rel != Relation::Eq)).then(a.cmp(b)));
    Ok(sys)
}

/// `x = Σ λ_r v_r, Σ λ_r = 1, λ >= 0`, projected onto `x`.
fn hull_by_elimination(points: &[Vec<Q>], vars: Vec<String>) -> LinearSystem {
    let k = vars.len();
    let lambdas: Vec<String> = (0..points.len()).map(|i| format!("lambda{i}")).collect();
    let mut all = vars.clone();
    all.extend(lambdas.iter().cloned());
    let mut sys = LinearSystem::new(all.clone());
    for j in 0..k {
        let mut c = vec![qi(0); all.len()];
        c[j] = qi(1);
        for (i, v) in points.iter().enumerate() {
            c[k + i] = -v[j].clone();
        }
        sys.push(Row::new(c, Relation::Eq, qi(0)));
    }
    let mut c = vec![qi(0); all.len()];
    for i in 0..points.len() {
        c[k + i] = qi(1);
    }
    sys.push(Row::new(c, Relation::Eq, qi(1)));
    for i in 0..points.len() {
        let mut c = vec![qi(0); all.len()];
        c[k + i] = qi(1);
        sys.push(Row::new(c, Relation::Ge, qi(0)));
    }
    let mut cur = sys;
    for l in &lambdas {
        cur = fourier_motzkin(&cur, l);
    }
    canonical(simplify(cur))
}

/// Promotes implicit equalities, then reduces modulo the equations so both
/// methods print alike.
fn canonical(sys: LinearSystem) -> LinearSystem {
    let mut eqs: Vec<Row> = vec![];
    let mut ineqs: Vec<Row> = vec![];
    for r in &sys.rows {
        let r = r.normalized();
        if r.rel == Relation::Eq {
            eqs.push(r);
            continue;
        }
        let neg: Vec<Q> = r.coeffs.iter().map(|c| -c).collect();
        match sys.maximize(&neg) {
            Maximum::Bounded { value, .. } if value == -r.rhs.clone() => eqs.push(Row::new(r.coeffs, Relation::Eq, r.rhs)),
            _ => ineqs.push(r),
        }
    }
    let h = canonicalize(sys.vars.len(), &eqs, &ineqs);
    LinearSystem { vars: sys.vars, rows: h.equations.into_iter().chain(h.facets).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::builtin;

    #[test]
    fn triangle_facets_are_the_simplex() {
        let x = builtin("delta(2)").unwrap();
        let t = x.find_label("012").unwrap();
        let f = classical_facets(&x, OutcomeSpace::Nerve(2), &[t], FacetMethod::Auto, &Limits::default()).unwrap();
        // three free coordinates, four nonnegativity facets
        assert_eq!(f.rows.len(), 4, "{f}");
    }

    #[test]
    fn methods_agree_on_the_diamond_boundary() {
        let x = builtin("diamond").unwrap();
        let coords: Vec<SimplexId> = x.designation("boundary").unwrap().to_vec();
        let y = OutcomeSpace::Nerve(2);
        let dd = classical_facets(&x, y, &coords, FacetMethod::DoubleDescription, &Limits::default()).unwrap();
        let fm = classical_facets(&x, y, &coords, FacetMethod::FourierMotzkin, &Limits::default()).unwrap();
        assert_eq!(dd, fm);
        assert_eq!(dd.rows.len(), 16);
    }
}
