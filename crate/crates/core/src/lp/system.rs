//! Named linear systems of (in)equalities over free rational variables.

use std::fmt;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::gauss::{dot, primitive};
use crate::rational::{format_q, q_string, q_vec_string, Q};

use super::simplex::{minimize, Optimum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Row {
    #[serde(with = "q_vec_string")]
    pub coeffs: Vec<Q>,
    pub rel: Relation,
    #[serde(with = "q_string")]
    pub rhs: Q,
}

impl Row {
    pub fn new(coeffs: Vec<Q>, rel: Relation, rhs: Q) -> Self {
        Row { coeffs, rel, rhs }
    }

    pub fn holds_at(&self, x: &[Q]) -> bool {
        let v = dot(&self.coeffs, x);
        match self.rel {
            Relation::Le => v <= self.rhs,
            Relation::Ge => v >= self.rhs,
            Relation::Eq => v == self.rhs,
        }
    }

    /// Same solution set, `Ge` turned into `Le`, coefficients coprime integers.
    pub fn normalized(&self) -> Row {
        let (mut coeffs, mut rhs, rel) = match self.rel {
            Relation::Ge => (self.coeffs.iter().map(|c| -c).collect::<Vec<_>>(), -self.rhs.clone(), Relation::Le),
            r => (self.coeffs.clone(), self.rhs.clone(), r),
        };
        let mut all = coeffs.clone();
        all.push(rhs.clone());
        let p = primitive(&all);
        if !crate::linalg::gauss::is_zero_vec(&all) {
            // primitive keeps the sign of the first nonzero entry; undo any flip
            let first = all.iter().position(|x| !x.is_zero()).unwrap();
            let flip = all[first].is_negative() != p[first].is_negative();
            let sign = if flip { -Q::one() } else { Q::one() };
            coeffs = p[..coeffs.len()].iter().map(|x| x * &sign).collect();
            rhs = &p[coeffs.len()] * &sign;
            if rel == Relation::Eq {
                // canonical sign for equations
                if let Some(f) = coeffs.iter().position(|x| !x.is_zero()) {
                    if coeffs[f].is_negative() {
                        coeffs = coeffs.iter().map(|x| -x).collect();
                        rhs = -rhs;
                    }
                }
            }
        }
        Row { coeffs, rel, rhs }
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// `Σ λ_i a_i = 0` and `Σ λ_i b_i < 0`, with `λ_i >= 0` on `<=` rows and
/// `λ_i <= 0` on `>=` rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowCertificate {
    #[serde(with = "q_vec_string")]
    pub multipliers: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemSolution {
    Feasible(Vec<Q>),
    Infeasible(RowCertificate),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Maximum {
    Bounded { value: Q, at: Vec<Q> },
    Unbounded,
    Infeasible,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSystem {
    pub vars: Vec<String>,
    pub rows: Vec<Row>,
}

impl LinearSystem {
    pub fn new(vars: Vec<String>) -> Self {
        LinearSystem { vars, rows: vec![] }
    }

    pub fn var(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn push(&mut self, row: Row) {
        assert_eq!(row.coeffs.len(), self.vars.len(), "row width");
        self.rows.push(row);
    }

    /// Adds `Σ c_v v rel rhs` from `(name, coefficient)` pairs.
    pub fn add(&mut self, terms: &[(&str, Q)], rel: Relation, rhs: Q) {
        let mut coeffs = vec![Q::zero(); self.vars.len()];
        for (name, c) in terms {
            let i = self.var(name).unwrap_or_else(|| panic!("unknown variable {name}"));
            coeffs[i] += c;
        }
        self.push(Row::new(coeffs, rel, rhs));
    }

    /// Adds `0 <= v` for every variable.
    pub fn add_nonnegativity(&mut self) {
        for i in 0..self.vars.len() {
            let mut coeffs = vec![Q::zero(); self.vars.len()];
            coeffs[i] = Q::one();
            self.push(Row::new(coeffs, Relation::Ge, Q::zero()));
        }
    }

    pub fn contains_point(&self, x: &[Q]) -> bool {
        self.rows.iter().all(|r| r.holds_at(x))
    }

    /// Standard form over `x+, x-, slacks`.
    fn standard_form(&self, rows: &[&Row]) -> (Vec<Vec<Q>>, Vec<Q>, usize) {
        let n = self.vars.len();
        let slacks: Vec<usize> = rows.iter().filter(|r| r.rel != Relation::Eq).map(|_| 1).collect();
        let width = 2 * n + slacks.len();
        let mut a = vec![];
        let mut b = vec![];
        let mut s = 0;
        for r in rows {
            let mut row = vec![Q::zero(); width];
            for j in 0..n {
                row[j] = r.coeffs[j].clone();
                row[n + j] = -r.coeffs[j].clone();
            }
            match r.rel {
                Relation::Le => {
                    row[2 * n + s] = Q::one();
                    s += 1;
                }
                Relation::Ge => {
                    row[2 * n + s] = -Q::one();
                    s += 1;
                }
                Relation::Eq => {}
            }
            a.push(row);
            b.push(r.rhs.clone());
        }
        (a, b, width)
    }

    fn optimize(&self, rows: &[&Row], objective: Option<&[Q]>) -> (Optimum, usize) {
        let n = self.vars.len();
        let (a, b, width) = self.standard_form(rows);
        let mut c = vec![Q::zero(); width];
        if let Some(obj) = objective {
            for j in 0..n {
                c[j] = -obj[j].clone();
                c[n + j] = obj[j].clone();
            }
        }
        if a.is_empty() {
            // no rows: the origin is feasible, and any nonzero objective is unbounded
            let unbounded = objective.map_or(false, |o| o.iter().any(|x| !x.is_zero()));
            let opt = if unbounded {
                Optimum::Unbounded
            } else {
                Optimum::Optimal { x: vec![Q::zero(); width], value: Q::zero() }
            };
            return (opt, n);
        }
        (minimize(&a, &b, &c), n)
    }

    pub fn solve(&self) -> SystemSolution {
        let rows: Vec<&Row> = self.rows.iter().collect();
        match self.optimize(&rows, None) {
            (Optimum::Optimal { x, .. }, n) => {
                SystemSolution::Feasible((0..n).map(|j| &x[j] - &x[n + j]).collect())
            }
            (Optimum::Infeasible(z), _) => {
                let cert = RowCertificate { multipliers: z };
                debug_assert!(self.check_certificate(&cert));
                SystemSolution::Infeasible(cert)
            }
            (Optimum::Unbounded, _) => unreachable!("feasibility has no objective"),
        }
    }

    pub fn check_certificate(&self, cert: &RowCertificate) -> bool {
        let lam = &cert.multipliers;
        if lam.len() != self.rows.len() {
            return false;
        }
        let signs_ok = self.rows.iter().zip(lam).all(|(r, l)| match r.rel {
            Relation::Le => !l.is_negative(),
            Relation::Ge => !l.is_positive(),
            Relation::Eq => true,
        });
        let combo_zero = (0..self.vars.len())
            .all(|j| self.rows.iter().zip(lam).fold(Q::zero(), |acc, (r, l)| acc + &r.coeffs[j] * l).is_zero());
        let rhs = self.rows.iter().zip(lam).fold(Q::zero(), |acc, (r, l)| acc + &r.rhs * l);
        signs_ok && combo_zero && rhs.is_negative()
    }

    /// `max obj . x` over the system, skipping the row at `skip`.
    pub fn maximize_without(&self, obj: &[Q], skip: Option<usize>) -> Maximum {
        let rows: Vec<&Row> = self.rows.iter().enumerate().filter(|(i, _)| Some(*i) != skip).map(|(_, r)| r).collect();
        match self.optimize(&rows, Some(obj)) {
            (Optimum::Optimal { x, value }, n) => {
                Maximum::Bounded { value: -value, at: (0..n).map(|j| &x[j] - &x[n + j]).collect() }
            }
            (Optimum::Unbounded, _) => Maximum::Unbounded,
            (Optimum::Infeasible(_), _) => Maximum::Infeasible,
        }
    }

    pub fn maximize(&self, obj: &[Q]) -> Maximum {
        self.maximize_without(obj, None)
    }

    /// Whether `row` holds on every solution of the system (vacuously when infeasible).
    pub fn implies(&self, row: &Row, skip: Option<usize>) -> bool {
        let le = |coeffs: &[Q], rhs: &Q| match self.maximize_without(coeffs, skip) {
            Maximum::Bounded { value, .. } => value <= *rhs,
            Maximum::Unbounded => false,
            Maximum::Infeasible => true,
        };
        let neg: Vec<Q> = row.coeffs.iter().map(|c| -c).collect();
        match row.rel {
            Relation::Le => le(&row.coeffs, &row.rhs),
            Relation::Ge => le(&neg, &-row.rhs.clone()),
            Relation::Eq => le(&row.coeffs, &row.rhs) && le(&neg, &-row.rhs.clone()),
        }
    }

    pub fn format_row(&self, r: &Row) -> String {
        let mut s = String::new();
        for (c, v) in r.coeffs.iter().zip(&self.vars) {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if s.is_empty() {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            if !mag.is_one() {
                s.push_str(&if mag.is_integer() { mag.to_string() } else { format_q(&mag) });
                s.push('*');
            }
            s.push_str(v);
        }
        if s.is_empty() {
            s.push('0');
        }
        let rhs = if r.rhs.is_integer() { r.rhs.to_string() } else { format_q(&r.rhs) };
        format!("{s} {} {rhs}", r.rel)
    }
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{}", self.format_row(r))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn free_variables_and_certificates() {
        let mut s = LinearSystem::new(vars(&["x", "y"]));
        s.add(&[("x", qi(1)), ("y", qi(1))], Relation::Le, qi(-3));
        s.add(&[("x", qi(1))], Relation::Ge, qi(-1));
        s.add(&[("y", qi(1))], Relation::Ge, qi(-1));
        match s.solve() {
            SystemSolution::Infeasible(c) => assert!(s.check_certificate(&c)),
            other => panic!("{other:?}"),
        }
        s.rows[0].rhs = qi(-2);
        match s.solve() {
            SystemSolution::Feasible(x) => {
                assert!(s.contains_point(&x));
                assert_eq!(x, vec![qi(-1), qi(-1)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn implication_by_lp() {
        let mut s = LinearSystem::new(vars(&["x", "y"]));
        s.add_nonnegativity();
        s.add(&[("x", qi(1)), ("y", qi(1))], Relation::Le, qi(1));
        let r = Row::new(vec![qi(1), qi(0)], Relation::Le, qi(1));
        assert!(s.implies(&r, None));
        let r = Row::new(vec![qi(1), qi(-1)], Relation::Le, q(1, 2));
        assert!(!s.implies(&r, None));
        assert_eq!(s.maximize(&[qi(2), qi(1)]), Maximum::Bounded { value: qi(2), at: vec![qi(1), qi(0)] });
    }

    #[test]
    fn normalization_and_display() {
        let r = Row::new(vec![q(-1, 2), q(1, 4)], Relation::Ge, q(-3, 4));
        let n = r.normalized();
        assert_eq!(n, Row::new(vec![qi(2), qi(-1)], Relation::Le, qi(3)));
        let s = LinearSystem::new(vars(&["a", "b"]));
        assert_eq!(s.format_row(&n), "2*a - b <= 3");
    }
}
