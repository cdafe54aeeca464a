//! Fourier–Motzkin elimination with LP-based redundancy removal.

use std::collections::BTreeSet;

use num::{Signed, Zero};

use crate::rational::Q;

use super::system::{LinearSystem, Relation, Row};

/// Projects the solution set onto the remaining variables.
pub fn fourier_motzkin(sys: &LinearSystem, var: &str) -> LinearSystem {
    let k = sys.var(var).unwrap_or_else(|| panic!("unknown variable {var}"));
    let drop = |coeffs: &[Q]| -> Vec<Q> {
        coeffs.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, c)| c.clone()).collect()
    };
    let vars: Vec<String> = sys.vars.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, v)| v.clone()).collect();
    let mut out = LinearSystem::new(vars);

    if let Some(e) = sys.rows.iter().position(|r| r.rel == Relation::Eq && !r.coeffs[k].is_zero()) {
        // substitute through the equation
        let eq = &sys.rows[e];
        for (i, r) in sys.rows.iter().enumerate() {
            if i == e {
                continue;
            }
            let f = &r.coeffs[k] / &eq.coeffs[k];
            let coeffs: Vec<Q> = r.coeffs.iter().zip(&eq.coeffs).map(|(a, b)| a - &f * b).collect();
            out.push(Row::new(drop(&coeffs), r.rel, &r.rhs - &f * &eq.rhs));
        }
        return simplify(out);
    }

    let mut upper = vec![];
    let mut lower = vec![];
    for r in &sys.rows {
        let rows = match r.rel {
            Relation::Eq => vec![Row::new(r.coeffs.clone(), Relation::Le, r.rhs.clone()), Row::new(r.coeffs.clone(), Relation::Ge, r.rhs.clone())],
            _ => vec![r.clone()],
        };
        for r in rows {
            let r = r.normalized();
            let c = &r.coeffs[k];
            if c.is_positive() {
                upper.push(r);
            } else if c.is_negative() {
                lower.push(r);
            } else {
                out.push(Row::new(drop(&r.coeffs), Relation::Le, r.rhs.clone()));
            }
        }
    }
    for u in &upper {
        for l in &lower {
            let a = &u.coeffs[k];
            let b = -&l.coeffs[k];
            let coeffs: Vec<Q> = u.coeffs.iter().zip(&l.coeffs).map(|(x, y)| x * &b + y * a).collect();
            out.push(Row::new(drop(&coeffs), Relation::Le, &u.rhs * &b + &l.rhs * a));
        }
    }
    simplify(out)
}

/// Normalizes rows, drops duplicates, tautologies and rows implied by the rest.
pub fn simplify(sys: LinearSystem) -> LinearSystem {
    let mut seen = BTreeSet::new();
    let mut rows = vec![];
    for r in sys.rows {
        let r = r.normalized();
        if r.is_trivial() && r.rel == Relation::Le && !r.rhs.is_negative() {
            continue;
        }
        if r.is_trivial() && r.rel == Relation::Eq && r.rhs.is_zero() {
            continue;
        }
        if seen.insert(r.clone()) {
            rows.push(r);
        }
    }
    // pairs a <= b and -a <= -b become one equation
    let mut merged: Vec<Row> = vec![];
    let mut used = vec![false; rows.len()];
    for i in 0..rows.len() {
        if used[i] {
            continue;
        }
        if rows[i].rel == Relation::Le {
            let neg: Vec<Q> = rows[i].coeffs.iter().map(|c| -c).collect();
            let partner = (i + 1..rows.len())
                .find(|&j| !used[j] && rows[j].rel == Relation::Le && rows[j].coeffs == neg && rows[j].rhs == -rows[i].rhs.clone());
            if let Some(j) = partner {
                used[j] = true;
                merged.push(Row::new(rows[i].coeffs.clone(), Relation::Eq, rows[i].rhs.clone()).normalized());
                continue;
            }
        }
        merged.push(rows[i].clone());
    }
    let mut out = LinearSystem { vars: sys.vars, rows: merged };
    let mut i = 0;
    while i < out.rows.len() {
        if out.rows[i].rel != Relation::Eq && out.implies(&out.rows[i].clone(), Some(i)) {
            out.rows.remove(i);
        } else {
            i += 1;
        }
    }
    out
}
