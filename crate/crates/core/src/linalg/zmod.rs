//! Linear systems over `Z_d`, solved through the Smith normal form.

use num::bigint::BigInt;
use num::integer::{gcd, Integer};
use num::{ToPrimitive, Zero};

use super::snf::{mat_vec, smith, IntMatrix, Snf};

pub fn modulo(x: &BigInt, d: u64) -> u64 {
    x.mod_floor(&BigInt::from(d)).to_u64().expect("reduced value fits")
}

fn inverse_mod(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m as i128) as u64
}

/// All solutions of `A x = b (mod d)`: `x = V z` with each `z_j` running over
/// `offset_j + k * step_j` for `k < count_j`.
#[derive(Clone, Debug)]
pub struct ZmodSolutions {
    d: u64,
    v: IntMatrix,
    offsets: Vec<u64>,
    steps: Vec<u64>,
    counts: Vec<u64>,
}

impl ZmodSolutions {
    pub fn count(&self) -> u128 {
        self.counts.iter().fold(1u128, |acc, &c| acc.saturating_mul(c as u128))
    }

    pub fn vars(&self) -> usize {
        self.offsets.len()
    }

    fn x_of(&self, z: &[u64]) -> Vec<u32> {
        let zb: Vec<BigInt> = z.iter().map(|&t| BigInt::from(t)).collect();
        mat_vec(&self.v, &zb).iter().map(|x| modulo(x, self.d) as u32).collect()
    }

    /// Some solution.
    pub fn particular(&self) -> Vec<u32> {
        self.x_of(&self.offsets)
    }

    /// Every solution, sorted lexicographically.
    pub fn enumerate(&self) -> Vec<Vec<u32>> {
        let n = self.vars();
        let mut out = Vec::with_capacity(self.count().min(1 << 20) as usize);
        let mut k = vec![0u64; n];
        loop {
            let z: Vec<u64> = (0..n).map(|j| (self.offsets[j] + k[j] * self.steps[j]) % self.d).collect();
            out.push(self.x_of(&z));
            let mut j = n;
            loop {
                if j == 0 {
                    out.sort();
                    return out;
                }
                j -= 1;
                k[j] += 1;
                if k[j] < self.counts[j] {
                    break;
                }
                k[j] = 0;
            }
        }
    }
}

/// Solves `A x = b (mod d)` for an `rows x cols` integer matrix.
pub fn solve_mod(a: &IntMatrix, b: &[BigInt], rows: usize, cols: usize, d: u64) -> Option<ZmodSolutions> {
    assert!(d >= 1);
    let f: Snf = smith(a, rows, cols);
    let c = mat_vec(&f.u, b);
    let mut offsets = vec![0u64; cols];
    let mut steps = vec![1u64; cols];
    let mut counts = vec![d; cols];
    for i in 0..rows {
        let ci = modulo(&c[i], d);
        if i < f.rank && i < cols {
            let si = modulo(&f.s[i][i], d);
            let g = gcd(si, d);
            if ci % g != 0 {
                return None;
            }
            let m = d / g;
            offsets[i] = ((ci / g) as u128 * inverse_mod((si / g) % m.max(1), m) as u128 % m.max(1) as u128) as u64;
            steps[i] = m;
            counts[i] = g;
        } else if ci != 0 {
            return None;
        }
    }
    if d == 1 {
        counts.iter_mut().for_each(|c| *c = 1);
    }
    Some(ZmodSolutions { d, v: f.v, offsets, steps, counts })
}

/// Whether `b` lies in the image of `A` modulo `d`, with a preimage.
pub fn preimage_mod(a: &IntMatrix, b: &[BigInt], rows: usize, cols: usize, d: u64) -> Option<Vec<u32>> {
    solve_mod(a, b, rows, cols, d).map(|s| s.particular())
}

pub fn is_zero_mod(xs: &[BigInt], d: u64) -> bool {
    xs.iter().all(|x| (x % BigInt::from(d)).is_zero())
}
