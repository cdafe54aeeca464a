//! Smith normal form over the integers with unimodular transforms.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// `u * a * v = s` with `s` diagonal, `s[i][i] | s[i+1][i+1]` and nonnegative.
#[derive(Clone, Debug)]
pub struct Snf {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s[i][i].clone()).collect()
    }
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn from_i64(a: &[Vec<i64>]) -> IntMatrix {
    a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix, inner: usize) -> IntMatrix {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += &row[k] * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &IntMatrix, x: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(BigInt::zero(), |acc, (p, q)| acc + p * q))
        .collect()
}

struct Work {
    m: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
    rows: usize,
    cols: usize,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.m.swap(i, j);
        self.u.swap(i, j);
        for r in self.u_inv.iter_mut() {
            r.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in self.m.iter_mut() {
            r.swap(i, j);
        }
        for r in self.v.iter_mut() {
            r.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        for c in 0..self.cols {
            let t = &self.m[j][c] * k;
            self.m[i][c] += t;
        }
        for c in 0..self.rows {
            let t = &self.u[j][c] * k;
            self.u[i][c] += t;
        }
        for r in 0..self.rows {
            let t = &self.u_inv[r][i] * k;
            self.u_inv[r][j] -= t;
        }
    }

    /// col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        for r in 0..self.rows {
            let t = &self.m[r][j] * k;
            self.m[r][i] += t;
        }
        for r in 0..self.cols {
            let t = &self.v[r][j] * k;
            self.v[r][i] += t;
        }
        for c in 0..self.cols {
            let t = &self.v_inv[i][c] * k;
            self.v_inv[j][c] -= t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.m[i].iter_mut() {
            *x = -x.clone();
        }
        for x in self.u[i].iter_mut() {
            *x = -x.clone();
        }
        for r in self.u_inv.iter_mut() {
            r[i] = -r[i].clone();
        }
    }
}

/// Smith normal form of a `rows x cols` matrix.
pub fn smith(a: &IntMatrix, rows: usize, cols: usize) -> Snf {
    let mut w = Work {
        m: a.clone(),
        u: identity(rows),
        u_inv: identity(rows),
        v: identity(cols),
        v_inv: identity(cols),
        rows,
        cols,
    };
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !w.m[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| w.m[i][j].abs() < w.m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        loop {
            // bring the smallest entry of row t / column t to the pivot
            let mut pi = t;
            let mut pj = t;
            for i in t..rows {
                if !w.m[i][t].is_zero() && w.m[i][t].abs() < w.m[pi][pj].abs() {
                    (pi, pj) = (i, t);
                }
            }
            for j in t..cols {
                if !w.m[t][j].is_zero() && w.m[t][j].abs() < w.m[pi][pj].abs() {
                    (pi, pj) = (t, j);
                }
            }
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let p = w.m[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if !w.m[i][t].is_zero() {
                    let q = -(&w.m[i][t] / &p);
                    w.add_row(i, t, &q);
                    dirty |= !w.m[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !w.m[t][j].is_zero() {
                    let q = -(&w.m[t][j] / &p);
                    w.add_col(j, t, &q);
                    dirty |= !w.m[t][j].is_zero();
                }
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.m[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.m[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    Snf { s: w.m, u: w.u, u_inv: w.u_inv, v: w.v, v_inv: w.v_inv, rank: t, rows, cols }
}
