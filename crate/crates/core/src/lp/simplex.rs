//! Exact two-phase simplex method on `A x = b, x >= 0` with Bland's rule.

use num::{One, Signed, Zero};

use crate::linalg::gauss::dot;
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Q>),
    /// `z` with `A^T z >= 0` and `b . z < 0`.
    Infeasible(Vec<Q>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Optimum {
    Optimal { x: Vec<Q>, value: Q },
    Infeasible(Vec<Q>),
    Unbounded,
}

struct Tableau {
    t: Vec<Vec<Q>>,
    obj: Vec<Q>,
    basis: Vec<usize>,
    rhs: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.t[r][c].recip();
        for x in self.t[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let row = self.t[r].clone();
        let nz: Vec<usize> = (0..row.len()).filter(|&j| !row[j].is_zero()).collect();
        let eliminate = |target: &mut Vec<Q>| {
            if target[c].is_zero() {
                return;
            }
            let f = target[c].clone();
            for &j in &nz {
                let delta = &f * &row[j];
                target[j] -= delta;
            }
        };
        for i in 0..self.t.len() {
            if i != r {
                eliminate(&mut self.t[i]);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = c;
    }

    /// Runs Bland's rule over the allowed entering columns; `false` when unbounded.
    fn run(&mut self, allowed: usize) -> bool {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].is_negative()) else { return true };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.t.len() {
                if self.t[i][c].is_positive() {
                    let ratio = &self.t[i][self.rhs] / &self.t[i][c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

fn solve(a: &[Vec<Q>], b: &[Q], cost: Option<&[Q]>) -> Optimum {
    let m = a.len();
    let n = a.first().map_or_else(|| cost.map_or(0, |c| c.len()), |r| r.len());
    let rhs = n + m;
    let signs: Vec<bool> = b.iter().map(|x| x.is_negative()).collect();
    let mut t = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![Q::zero(); rhs + 1];
        for j in 0..n {
            row[j] = if signs[i] { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[n + i] = Q::one();
        row[rhs] = b[i].abs();
        t.push(row);
    }
    let mut obj = vec![Q::zero(); rhs + 1];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[rhs] -= &row[rhs];
    }
    let mut tab = Tableau { t, obj, basis: (n..n + m).collect(), rhs };
    tab.run(n + m);
    if tab.obj[rhs].is_negative() {
        // duals of phase 1: y_i = 1 - reduced cost of artificial i
        let z: Vec<Q> = (0..m)
            .map(|i| {
                let y = Q::one() - &tab.obj[n + i];
                if signs[i] {
                    y
                } else {
                    -y
                }
            })
            .collect();
        debug_assert!(is_farkas_certificate(a, b, &z));
        return Optimum::Infeasible(z);
    }
    for r in 0..m {
        if tab.basis[r] >= n {
            if let Some(c) = (0..n).find(|&j| !tab.t[r][j].is_zero()) {
                tab.pivot(r, c);
            }
        }
    }
    if let Some(c) = cost {
        let mut obj = vec![Q::zero(); rhs + 1];
        obj[..n].clone_from_slice(&c[..n]);
        for r in 0..m {
            let bv = tab.basis[r];
            if bv < n && !c[bv].is_zero() {
                let f = c[bv].clone();
                for (o, x) in obj.iter_mut().zip(&tab.t[r]) {
                    if !x.is_zero() {
                        *o -= &f * x;
                    }
                }
            }
        }
        tab.obj = obj;
        if !tab.run(n) {
            return Optimum::Unbounded;
        }
    }
    let mut x = vec![Q::zero(); n];
    for r in 0..m {
        if tab.basis[r] < n {
            x[tab.basis[r]] = tab.t[r][rhs].clone();
        }
    }
    let value = cost.map_or_else(Q::zero, |c| dot(c, &x));
    Optimum::Optimal { x, value }
}

/// Finds some `x >= 0` with `A x = b`, or a Farkas certificate.
pub fn feasible(a: &[Vec<Q>], b: &[Q]) -> Feasibility {
    match solve(a, b, None) {
        Optimum::Optimal { x, .. } => Feasibility::Feasible(x),
        Optimum::Infeasible(z) => Feasibility::Infeasible(z),
        Optimum::Unbounded => unreachable!("phase 1 is bounded"),
    }
}

/// Minimizes `c . x` over `A x = b, x >= 0`.
pub fn minimize(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> Optimum {
    solve(a, b, Some(c))
}

pub fn is_farkas_certificate(a: &[Vec<Q>], b: &[Q], z: &[Q]) -> bool {
    let n = a.first().map_or(0, |r| r.len());
    let cols_ok = (0..n).all(|j| {
        let s = a.iter().zip(z).fold(Q::zero(), |acc, (row, zi)| acc + &row[j] * zi);
        !s.is_negative()
    });
    cols_ok && dot(b, z).is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect()
    }

    fn check_solution(a: &[Vec<Q>], b: &[Q], x: &[Q]) {
        assert!(x.iter().all(|v| !v.is_negative()));
        for (row, bi) in a.iter().zip(b) {
            assert_eq!(&dot(row, x), bi);
        }
    }

    #[test]
    fn feasible_system() {
        let a = mat(&[&[1, 1, 1], &[1, -1, 0]]);
        let b = vec![qi(1), q(1, 3)];
        match feasible(&a, &b) {
            Feasibility::Feasible(x) => check_solution(&a, &b, &x),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_system_has_certificate() {
        let a = mat(&[&[1, 1], &[1, 1]]);
        let b = vec![qi(1), qi(2)];
        match feasible(&a, &b) {
            Feasibility::Infeasible(z) => assert!(is_farkas_certificate(&a, &b, &z)),
            other => panic!("{other:?}"),
        }
        let a = mat(&[&[1, 2]]);
        let b = vec![qi(-1)];
        match feasible(&a, &b) {
            Feasibility::Infeasible(z) => assert!(is_farkas_certificate(&a, &b, &z)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn small_optimization() {
        // min -x - y  s.t. x + 2y + s = 4, 3x + y + t = 6
        let a = mat(&[&[1, 2, 1, 0], &[3, 1, 0, 1]]);
        let b = vec![qi(4), qi(6)];
        let c = vec![qi(-1), qi(-1), qi(0), qi(0)];
        match minimize(&a, &b, &c) {
            Optimum::Optimal { x, value } => {
                check_solution(&a, &b, &x);
                assert_eq!(value, q(-14, 5));
            }
            other => panic!("{other:?}"),
        }
        let a = mat(&[&[1, -1]]);
        assert_eq!(minimize(&a, &[qi(0)], &[qi(-1), qi(0)]), Optimum::Unbounded);
    }

    #[test]
    fn redundant_rows_are_fine() {
        let a = mat(&[&[1, 1, 0], &[2, 2, 0], &[0, 1, 1]]);
        let b = vec![qi(1), qi(2), qi(1)];
        match minimize(&a, &b, &[qi(0), qi(1), qi(0)]) {
            Optimum::Optimal { x, value } => {
                check_solution(&a, &b, &x);
                assert_eq!(value, qi(0));
            }
            other => panic!("{other:?}"),
        }
    }
}
