use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use simpctx::cohomology::{coboundary, h1, Cochain};
use simpctx::contextuality::{
    chsh_check, is_logically_contextual, is_noncontextual, is_strongly_contextual, mixture_by_gluing,
    solve_extension,
};
use simpctx::limits::Limits;
use simpctx::outcomes::{OutcomeSpace, SimplicialDistribution};
use simpctx::quantum::{Cq, DensityMatrix, ObservableAssignment, Pauli, PauliObservable};
use simpctx::random::{random_diamond, random_square, square_to_punctured_torus, square_vertices, torus_pair};
use simpctx::rational::{qi, NonNegRational};
use simpctx::simpdist::enumerate_deterministic;
use simpctx::sset::{builtin, Subspace};

const SPACES: [&str; 6] = ["circle", "torus", "punctured_torus", "diamond", "boundary_delta(3)", "mermin_square_state_dep"];

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

fn pauli() -> impl Strategy<Value = Pauli> {
    prop_oneof![Just(Pauli::I), Just(Pauli::X), Just(Pauli::Y), Just(Pauli::Z)]
}

fn word(n: usize) -> impl Strategy<Value = PauliObservable> {
    (any::<bool>(), prop::collection::vec(pauli(), n)).prop_map(|(negative, word)| PauliObservable { negative, word })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn fine_chsh_and_torus_extension_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = torus_pair();
        let p = square_to_punctured_torus(&random_square(&mut rng, 9), &t);
        let limits = Limits::default();
        let lp = is_noncontextual(&p, &limits).unwrap().is_contextual();
        prop_assert_eq!(lp, !chsh_check(&p).unwrap().holds());
        prop_assert_eq!(lp, !solve_extension(&p, &t.inclusion, t.torus.clone()).unwrap().is_feasible());
    }

    #[test]
    fn contextuality_hierarchy(weights in prop::collection::vec(0u64..5, 24)) {
        prop_assume!(weights.iter().any(|&w| w > 0));
        let total: u64 = weights.iter().sum();
        let vs = square_vertices();
        let parts: Vec<_> = weights.iter().zip(&vs).filter(|(w, _)| **w > 0)
            .map(|(w, v)| (NonNegRational::from_ratio(*w, total), v)).collect();
        let p = SimplicialDistribution::mixture(&parts).unwrap();
        let limits = Limits::default();
        let v = is_noncontextual(&p, &limits).unwrap();
        prop_assert!(v.verify(&p, &limits).unwrap());
        let strong = is_strongly_contextual(&p, &limits).unwrap().strongly_contextual;
        let logical = is_logically_contextual(&p, &limits).unwrap();
        prop_assert!(!strong || logical);
        prop_assert!(!logical || v.is_contextual());
    }

    #[test]
    fn gluing_reproduces_diamond_distributions(seed in any::<u64>(), a in 0usize..3, b in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_diamond(&mut rng, a, b, 10);
        let x = p.space();
        let sa = Subspace::generated_by(x, &[x.find_label("s_x0y0").unwrap()]).unwrap();
        let sb = Subspace::generated_by(x, &[x.find_label("s_x1y1").unwrap()]).unwrap();
        let d = mixture_by_gluing(&p, &sa, &sb, &Limits::default()).unwrap().expect("diamond is noncontextual");
        prop_assert_eq!(d.theta(), p);
    }

    #[test]
    fn coboundary_squares_to_zero(k in 0usize..SPACES.len(), d in 2u32..6, seed in any::<u64>()) {
        let x = Arc::new(builtin(SPACES[k]).unwrap());
        let vals: Vec<u32> = (0..x.count(0)).map(|i| ((seed >> (3 * i % 60)) as u32) % d).collect();
        let f = Cochain::new(x.clone(), 0, d, vals).unwrap();
        prop_assert!(coboundary(&coboundary(&f).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn h1_matches_the_labeling_count(k in 0usize..SPACES.len(), d in 2u32..4) {
        let x = Arc::new(builtin(SPACES[k]).unwrap());
        let g = h1(&x, d).unwrap();
        let order: u128 = g.invariants.iter().map(|&s| s as u128).product();
        let dets = enumerate_deterministic(&x, OutcomeSpace::Nerve(d), &Limits::default()).unwrap().len() as u128;
        prop_assert_eq!(order * (d as u128).pow(x.count(0) as u32 - 1), dets);
    }

    #[test]
    fn pauli_products_match_matrices(a in word(2), b in word(2)) {
        match a.mul(&b) {
            Ok(c) => prop_assert_eq!(c.matrix(), a.matrix().mul(&b.matrix())),
            Err(_) => prop_assert!(!a.matrix().commutes_with(&b.matrix())),
        }
    }

    #[test]
    fn born_tables_are_simplicial(amps in prop::collection::vec((-2i64..3, -2i64..3), 4)) {
        prop_assume!(amps.iter().any(|&(r, i)| r != 0 || i != 0));
        let psi: Vec<Cq> = amps.iter().map(|&(r, i)| Cq::new(qi(r), qi(i))).collect();
        let rho = DensityMatrix::pure(&psi).unwrap();
        let x = Arc::new(builtin("mermin_square_state_dep").unwrap());
        let a = ObservableAssignment::from_edge_labels(x).unwrap();
        let p = a.born(&rho).unwrap();
        prop_assert!(p.check_simplicial().is_ok());
    }
}
