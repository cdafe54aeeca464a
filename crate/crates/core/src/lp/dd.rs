//! Facets of the convex hull of finitely many points, by double description.

use std::collections::BTreeSet;

use num::{Signed, Zero};

use crate::linalg::gauss::{dot, nullspace, primitive, rank, rref};
use crate::rational::Q;

use super::system::{Relation, Row};

/// H-representation `{equations, facets}` of `conv(points)`, rows normalized and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub equations: Vec<Row>,
    pub facets: Vec<Row>,
}

/// Valid inequalities `a . x <= b` correspond to `h = (b, -a)` with
/// `h . (1, v) >= 0` for every point; facets are the extreme rays of that cone.
pub fn hull_facets(points: &[Vec<Q>]) -> HRep {
    assert!(!points.is_empty(), "hull of no points");
    let k = points[0].len();
    let m: Vec<Vec<Q>> = points
        .iter()
        .map(|v| {
            let mut r = vec![Q::from_integer(1.into())];
            r.extend(v.iter().cloned());
            r
        })
        .collect();

    // row space basis R, so h = R^T u and constraints read G u >= 0 with G = M R^T
    let mut red = m.clone();
    let pivots = rref(&mut red, k + 1);
    let r = pivots.len();
    let basis: Vec<Vec<Q>> = red[..r].to_vec();
    let g: Vec<Vec<Q>> = m.iter().map(|row| basis.iter().map(|b| dot(row, b)).collect()).collect();

    let rays = if r == 1 {
        // a single point: only the lineality directions survive
        vec![]
    } else {
        extreme_rays(&g, r)
    };
    let facets: Vec<Vec<Q>> = rays
        .iter()
        .map(|u| {
            let mut h = vec![Q::zero(); k + 1];
            for (ui, b) in u.iter().zip(&basis) {
                for (hj, bj) in h.iter_mut().zip(b) {
                    *hj += ui * bj;
                }
            }
            h
        })
        .collect();
    let equations = nullspace(&m, k + 1);
    canonical(k, equations, facets)
}

fn to_h(r: &Row) -> Vec<Q> {
    let r = r.normalized();
    let mut h = vec![r.rhs.clone()];
    h.extend(r.coeffs.iter().map(|c| -c));
    h
}

fn to_row(h: &[Q], rel: Relation) -> Row {
    let coeffs: Vec<Q> = h[1..].iter().map(|c| -c).collect();
    Row::new(coeffs, rel, h[0].clone()).normalized()
}

/// Canonical form of `{equations, inequalities}` in `k` variables: equations in
/// reduced form on the last coordinates, inequalities reduced modulo them.
pub fn canonicalize(k: usize, equations: &[Row], inequalities: &[Row]) -> HRep {
    canonical(k, equations.iter().map(to_h).collect(), inequalities.iter().map(to_h).collect())
}

fn canonical(k: usize, equations: Vec<Vec<Q>>, inequalities: Vec<Vec<Q>>) -> HRep {
    let mut eqs: Vec<Vec<Q>> = equations.iter().map(|h| h.iter().rev().cloned().collect()).collect();
    let pivots = rref(&mut eqs, k + 1);
    eqs.truncate(pivots.len());
    let eqs: Vec<Vec<Q>> = eqs.into_iter().map(|h| h.into_iter().rev().collect()).collect();
    let pivots: Vec<usize> = pivots.iter().map(|&c| k - c).collect();
    let facets: BTreeSet<Row> = inequalities
        .into_iter()
        .map(|mut h| {
            for (e, &c) in eqs.iter().zip(&pivots) {
                if !h[c].is_zero() {
                    let f = h[c].clone() / &e[c];
                    for (x, y) in h.iter_mut().zip(e) {
                        *x -= &f * y;
                    }
                }
            }
            to_row(&h, Relation::Le)
        })
        .filter(|r| !r.is_trivial())
        .collect();
    let equations: BTreeSet<Row> = eqs.iter().map(|h| to_row(h, Relation::Eq)).collect();
    HRep { equations: equations.into_iter().collect(), facets: facets.into_iter().collect() }
}

struct Ray {
    u: Vec<Q>,
    zeros: BTreeSet<usize>,
}

/// Extreme rays of the pointed cone `{u : G u >= 0}` where `G` has full column rank `r`.
fn extreme_rays(g: &[Vec<Q>], r: usize) -> Vec<Vec<Q>> {
    // initial simplicial cone from r independent rows
    let mut chosen: Vec<usize> = vec![];
    for i in 0..g.len() {
        let mut trial: Vec<Vec<Q>> = chosen.iter().map(|&c| g[c].clone()).collect();
        trial.push(g[i].clone());
        if rank(&trial, r) == trial.len() {
            chosen.push(i);
            if chosen.len() == r {
                break;
            }
        }
    }
    assert_eq!(chosen.len(), r, "constraint matrix must have full column rank");
    let b: Vec<Vec<Q>> = chosen.iter().map(|&c| g[c].clone()).collect();
    let inv = inverse(&b, r);
    let processed: Vec<usize> = chosen.clone();
    let mut rays: Vec<Ray> = (0..r)
        .map(|j| {
            let u: Vec<Q> = (0..r).map(|i| inv[i][j].clone()).collect();
            let zeros = processed.iter().copied().filter(|&c| dot(&g[c], &u).is_zero()).collect();
            Ray { u, zeros }
        })
        .collect();
    let mut done: BTreeSet<usize> = chosen.iter().copied().collect();
    for i in 0..g.len() {
        if done.contains(&i) {
            continue;
        }
        let vals: Vec<Q> = rays.iter().map(|ray| dot(&g[i], &ray.u)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_negative()).collect();
        let mut next: Vec<Ray> = vec![];
        for (j, ray) in rays.iter().enumerate() {
            if !vals[j].is_negative() {
                let mut zeros = ray.zeros.clone();
                if vals[j].is_zero() {
                    zeros.insert(i);
                }
                next.push(Ray { u: ray.u.clone(), zeros });
            }
        }
        for &p in &pos {
            for &n in &neg {
                let common: BTreeSet<usize> = rays[p].zeros.intersection(&rays[n].zeros).copied().collect();
                if common.len() + 2 < r {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|t| t == p || t == n || !common.is_subset(&rays[t].zeros));
                if !adjacent {
                    continue;
                }
                // combination vanishing on row i
                let u: Vec<Q> = rays[p]
                    .u
                    .iter()
                    .zip(&rays[n].u)
                    .map(|(a, b)| a * &(-&vals[n]) + b * &vals[p])
                    .collect();
                let u = primitive(&u);
                let mut zeros = common;
                zeros.insert(i);
                next.push(Ray { u, zeros });
            }
        }
        rays = next;
        done.insert(i);
    }
    rays.into_iter().map(|r| primitive(&r.u)).collect()
}

fn inverse(a: &[Vec<Q>], n: usize) -> Vec<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::from_integer(1.into()) } else { Q::zero() }));
            r
        })
        .collect();
    rref(&mut m, n);
    m.iter().map(|row| row[n..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::system::LinearSystem;
    use crate::rational::qi;

    fn pts(v: &[&[i64]]) -> Vec<Vec<Q>> {
        v.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect()
    }

    fn shown(h: &HRep, vars: &[&str]) -> Vec<String> {
        let s = LinearSystem::new(vars.iter().map(|v| v.to_string()).collect());
        let mut out: Vec<String> = h.equations.iter().chain(&h.facets).map(|r| s.format_row(r)).collect();
        out.sort();
        out
    }

    #[test]
    fn square_has_four_facets() {
        let h = hull_facets(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[0, 0]]));
        assert!(h.equations.is_empty());
        assert_eq!(shown(&h, &["x", "y"]), vec!["-x <= 0", "-y <= 0", "x <= 1", "y <= 1"]);
    }

    #[test]
    fn lower_dimensional_hull_reports_equations() {
        let h = hull_facets(&pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(h.equations.len(), 1);
        assert_eq!(h.facets.len(), 3);
        assert_eq!(shown(&h, &["x", "y", "z"])[0], "-x <= 0");
    }

    #[test]
    fn cube_and_interior_point() {
        let mut v = vec![];
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    v.push(vec![qi(a * 2), qi(b * 2), qi(c * 2)]);
                }
            }
        }
        v.push(vec![qi(1), qi(1), qi(1)]);
        let h = hull_facets(&v);
        assert_eq!(h.facets.len(), 6);
    }
}
