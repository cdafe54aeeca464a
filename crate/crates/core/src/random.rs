//! Random exact distributions for property tests and benches.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use crate::outcomes::{Distribution, OutcomeSpace, RationalDistribution, SimplicialDistribution};
use crate::rational::NonNegRational;
use crate::sset::{builtin, PresentedSSet, SimplexId, SpaceMap, Subspace};

fn r(n: u64, d: u64) -> NonNegRational {
    NonNegRational::from_ratio(n, d)
}

/// The square `Q` with its triangles `(x_i, y_j)` as `[(i, j, triangle)]`.
pub fn square_q() -> (Arc<PresentedSSet>, Vec<(u32, u32, SimplexId)>) {
    let x = Arc::new(builtin("square_Q").expect("builtin"));
    let tris = [(0, 0, "012"), (0, 1, "013"), (1, 0, "0'12"), (1, 1, "0'13")]
        .into_iter()
        .map(|(i, j, l)| (i, j, x.find_label(l).expect("triangle")))
        .collect();
    (x, tris)
}

/// Triangle outcomes are `(a, b)` with `a` on `x_i` and `b` on `y_j`; the
/// `d_1` edge carries `a + b`.
fn square_from(tables: impl Fn(u32, u32) -> Distribution<NonNegRational>) -> RationalDistribution {
    let (x, tris) = square_q();
    let given: BTreeMap<SimplexId, Distribution<NonNegRational>> = tris.iter().map(|&(i, j, s)| (s, tables(i, j))).collect();
    SimplicialDistribution::from_partial(x, OutcomeSpace::Nerve(2), given).expect("consistent square")
}

/// The deterministic box `x_i -> a_i`, `y_j -> b_j`.
pub fn square_deterministic(a: [u32; 2], b: [u32; 2]) -> RationalDistribution {
    square_from(|i, j| Distribution::delta(vec![a[i as usize], b[j as usize]]))
}

/// The PR-type box with `a + b = ij + αi + βj + γ`, uniform marginals.
pub fn square_pr(alpha: u32, beta: u32, gamma: u32) -> RationalDistribution {
    square_from(|i, j| {
        let c = (i * j + alpha * i + beta * j + gamma) % 2;
        Distribution::from_pairs([(vec![0, c], r(1, 2)), (vec![1, 1 - c], r(1, 2))])
    })
}

/// The 16 deterministic boxes followed by the 8 PR-type boxes.
pub fn square_vertices() -> Vec<RationalDistribution> {
    let mut out = vec![];
    for m in 0..16u32 {
        out.push(square_deterministic([m & 1, m >> 1 & 1], [m >> 2 & 1, m >> 3 & 1]));
    }
    for m in 0..8u32 {
        out.push(square_pr(m & 1, m >> 1 & 1, m >> 2 & 1));
    }
    out
}

/// A random mixture of a few vertices of the nonsignaling square, weights in `1..=max_weight`.
pub fn random_square<R: Rng>(rng: &mut R, max_weight: u64) -> RationalDistribution {
    let vertices = square_vertices();
    let k = rng.gen_range(1..=4);
    let mut picks: Vec<(u64, usize)> = (0..k).map(|_| (rng.gen_range(1..=max_weight), rng.gen_range(0..vertices.len()))).collect();
    // bias towards PR boxes so both verdicts show up
    if rng.gen_bool(0.5) {
        picks.push((rng.gen_range(1..=max_weight), rng.gen_range(16..vertices.len())));
    }
    let total: u64 = picks.iter().map(|p| p.0).sum();
    let parts: Vec<(NonNegRational, &RationalDistribution)> = picks.iter().map(|&(w, v)| (r(w, total), &vertices[v])).collect();
    SimplicialDistribution::mixture(&parts).expect("mixture of distributions")
}

/// The punctured torus as the designated subspace of the torus.
#[derive(Clone, Debug)]
pub struct TorusPair {
    pub punctured: Arc<PresentedSSet>,
    pub inclusion: SpaceMap,
    pub torus: Arc<PresentedSSet>,
}

pub fn torus_pair() -> TorusPair {
    let torus = Arc::new(builtin("torus").expect("builtin"));
    let z = Subspace::designated(&torus, "punctured_torus").expect("designation");
    let (pres, inclusion) = z.presentation(&torus).expect("subspace");
    TorusPair { punctured: Arc::new(pres), inclusion, torus }
}

/// The same box on the punctured torus. Triangles `s_y0x0` and `s_y0x1`
/// list `y_0` first, so their outcome pairs are swapped.
pub fn square_to_punctured_torus(p: &RationalDistribution, t: &TorusPair) -> RationalDistribution {
    let (_, tris) = square_q();
    let mut given = BTreeMap::new();
    for (i, j, s) in tris {
        let (label, swap) = match (i, j) {
            (0, 0) => ("s_y0x0", true),
            (1, 0) => ("s_y0x1", true),
            (0, 1) => ("s_x0y1", false),
            _ => ("s_x1y1", false),
        };
        let d = if swap { p.get(s).pushforward(|t| vec![t[1], t[0]]) } else { p.get(s).clone() };
        given.insert(t.punctured.find_label(label).expect("triangle"), d);
    }
    SimplicialDistribution::from_partial(t.punctured.clone(), OutcomeSpace::Nerve(2), given).expect("consistent box")
}

/// Outcome pairs `(P, Q)` of a triangle where `P` maps to `0` under face `i`.
fn face_pairs(i: usize) -> ([Vec<u32>; 2], [Vec<u32>; 2]) {
    match i {
        0 => ([vec![0, 0], vec![1, 0]], [vec![0, 1], vec![1, 1]]),
        1 => ([vec![0, 0], vec![1, 1]], [vec![0, 1], vec![1, 0]]),
        _ => ([vec![0, 0], vec![0, 1]], [vec![1, 0], vec![1, 1]]),
    }
}

/// A random triangle distribution whose face `i` has `p^0 = c0 / den`.
pub fn random_triangle_with_face<R: Rng>(rng: &mut R, i: usize, c0: u64, den: u64) -> Distribution<NonNegRational> {
    let (p, q) = face_pairs(i);
    let a = rng.gen_range(0..=c0);
    let b = rng.gen_range(0..=den - c0);
    Distribution::from_pairs([
        (p[0].clone(), r(a, den)),
        (p[1].clone(), r(c0 - a, den)),
        (q[0].clone(), r(b, den)),
        (q[1].clone(), r(den - c0 - b, den)),
    ])
}

/// A random distribution on `diamond(a, b)` with probabilities in `Z / den`.
pub fn random_diamond<R: Rng>(rng: &mut R, a: usize, b: usize, den: u64) -> RationalDistribution {
    let x = Arc::new(builtin(&format!("diamond({a},{b})")).expect("builtin"));
    let c0 = rng.gen_range(0..=den);
    let s = x.find_label("s_x0y0").expect("triangle");
    let t = x.find_label("s_x1y1").expect("triangle");
    let given = [(s, random_triangle_with_face(rng, a, c0, den)), (t, random_triangle_with_face(rng, b, c0, den))].into();
    SimplicialDistribution::from_partial(x, OutcomeSpace::Nerve(2), given).expect("faces agree")
}

/// A random distribution on the 2-dimensional space `x` (nerve of `Z_2`),
/// built from random edge marginals in `Z / den`; triangles are determined by
/// their edges, so draws are rejected until every triangle is nonnegative.
pub fn random_from_edges<R: Rng>(rng: &mut R, x: &Arc<PresentedSSet>, den: u64, attempts: usize) -> Option<RationalDistribution> {
    if (3..=x.max_dim()).any(|n| x.count(n) > 0) {
        return None;
    }
    'outer: for _ in 0..attempts {
        let e: Vec<i64> = (0..x.count(1)).map(|_| rng.gen_range(0..=den) as i64).collect();
        let mut given = BTreeMap::new();
        for s in x.simplices(2) {
            let m = |i: usize| {
                let f = x.raw_face(s, i);
                if f.is_degenerate() {
                    den as i64
                } else {
                    e[f.base.id]
                }
            };
            let (p0, p1, p2) = (m(0), m(1), m(2));
            // p00 = (P2 + P0 + P1 - 1) / 2 in units of 1/den
            let twice = p0 + p1 + p2 - den as i64;
            if twice < 0 || twice % 2 != 0 {
                continue 'outer;
            }
            let p00 = twice / 2;
            let vals = [p00, p2 - p00, p0 - p00, p1 - p00];
            if vals.iter().any(|&v| v < 0) {
                continue 'outer;
            }
            let outs = [vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]];
            given.insert(s, Distribution::from_pairs(outs.into_iter().zip(vals.map(|v| r(v as u64, den)))));
        }
        if let Ok(p) = SimplicialDistribution::from_partial(x.clone(), OutcomeSpace::Nerve(2), given) {
            return Some(p);
        }
    }
    None
}
