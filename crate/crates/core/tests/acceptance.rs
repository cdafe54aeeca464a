//! The ten acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use simpctx::cohomology::{cl_witness, connecting, h1, Cochain, WitnessVerdict};
use simpctx::contextuality::{
    chsh_check, classical_facets, discrete_embed, extend_boundary_delta3, is_logically_contextual,
    is_noncontextual, is_strongly_contextual, mixture_by_gluing, Extension, ExtensionProblem, FacetMethod,
    Verdict,
};
use simpctx::limits::Limits;
use simpctx::lp::{Relation, Row};
use simpctx::outcomes::{Distribution, OutcomeSpace, RationalDistribution, SimplicialDistribution};
use simpctx::quantum::{value_assignment_exists, Cq, DensityMatrix, ObservableAssignment};
use simpctx::random::{
    random_diamond, random_from_edges, random_square, square_pr, square_to_punctured_torus, torus_pair, TorusPair,
};
use simpctx::rational::{qi, NonNegRational, Q};
use simpctx::simpdist::{count_deterministic_nerve, enumerate_deterministic, restrict, ClassicalDistribution};
use simpctx::sset::{builtin, SimplexId, SpaceMap, Subspace};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn space(name: &str) -> Arc<simpctx::sset::PresentedSSet> {
    Arc::new(builtin(name).expect("builtin"))
}

/// Cross-checks collected from every instance the other criteria touch.
#[derive(Default)]
struct Audit {
    instances: usize,
    certificates: usize,
    failures: Vec<String>,
}

impl Audit {
    fn fail(&mut self, what: String) {
        self.failures.push(what);
    }

    /// Verdict certificate, strong => logical => contextual, and the witness on `z`.
    fn check(&mut self, tag: &str, p: &RationalDistribution, z: Option<&Subspace>, limits: &Limits) -> Option<Verdict> {
        self.instances += 1;
        let verdict = match is_noncontextual(p, limits) {
            Ok(v) => v,
            Err(e) => {
                self.fail(format!("{tag}: LP failed: {e}"));
                return None;
            }
        };
        match verdict.verify(p, limits) {
            Ok(true) => self.certificates += 1,
            _ => self.fail(format!("{tag}: verdict certificate does not re-verify")),
        }
        let strong = is_strongly_contextual(p, limits).map(|r| r.strongly_contextual);
        let logical = is_logically_contextual(p, limits);
        match (strong, logical) {
            (Ok(s), Ok(l)) => {
                if s && !l {
                    self.fail(format!("{tag}: strong but not logical"));
                }
                if l && !verdict.is_contextual() {
                    self.fail(format!("{tag}: logical but LP says noncontextual"));
                }
                if let Some(z) = z {
                    match cl_witness(p, z, limits) {
                        Ok(w) if w.verdict == WitnessVerdict::StronglyContextual && !(s && verdict.is_contextual()) => {
                            self.fail(format!("{tag}: witness contradicts the LP"))
                        }
                        Ok(_) => {}
                        Err(e) => self.fail(format!("{tag}: witness failed: {e}")),
                    }
                }
            }
            _ => self.fail(format!("{tag}: support computation failed")),
        }
        Some(verdict)
    }

    /// Feasible extensions restrict back to `p`; infeasible ones carry a valid certificate.
    fn extension(&mut self, tag: &str, p: &RationalDistribution, f: &SpaceMap, x: &Arc<simpctx::sset::PresentedSSet>) -> Option<bool> {
        let prob = match ExtensionProblem::new(p, f, x.clone()) {
            Ok(prob) => prob,
            Err(e) => {
                self.fail(format!("{tag}: extension setup failed: {e}"));
                return None;
            }
        };
        match prob.solve() {
            Ok(Extension::Feasible(q)) => {
                let back = restrict(&q, f, p.space().clone());
                if !q.check_simplicial().is_ok() || back.as_ref() != Ok(p) {
                    self.fail(format!("{tag}: extension does not restrict to p"));
                }
                self.certificates += 1;
                Some(true)
            }
            Ok(Extension::Infeasible(cert)) => {
                if prob.check_certificate(&cert) {
                    self.certificates += 1;
                } else {
                    self.fail(format!("{tag}: Farkas certificate does not re-verify"));
                }
                Some(false)
            }
            Err(e) => {
                self.fail(format!("{tag}: extension failed: {e}"));
                None
            }
        }
    }
}

fn pr_box(t: &TorusPair) -> RationalDistribution {
    square_to_punctured_torus(&square_pr(0, 0, 0), t)
}

fn c1_pr_box(audit: &mut Audit, limits: &Limits) -> Outcome {
    let start = Instant::now();
    let t = torus_pair();
    let p = pr_box(&t);
    let strong = is_strongly_contextual(&p, limits).map_err(|e| e.to_string())?;
    ensure(strong.strongly_contextual, || "PR box has a global section".into())?;
    let v = audit.check("pr box", &p, None, limits).ok_or("LP failed")?;
    ensure(v.is_contextual(), || "LP calls the PR box noncontextual".into())?;
    let chsh = chsh_check(&p).map_err(|e| e.to_string())?;
    ensure(chsh.max == qi(3), || format!("CHSH value {} instead of 3", chsh.max))?;
    let ext = audit.extension("pr box", &p, &t.inclusion, &t.torus).ok_or("extension failed")?;
    ensure(!ext, || "PR box extends to the torus".into())?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), || format!("took {took:?}"))?;
    Ok(format!("strong, CHSH = {}, no torus extension, {took:.2?}", chsh.max))
}

fn c2_fine(audit: &mut Audit, limits: &Limits) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let t = torus_pair();
    let h = space("space_H");
    let q = space("square_Q");
    let into_h = SpaceMap::by_labels(&q, &h).map_err(|e| e.to_string())?;
    let n = 500;
    let mut contextual = 0;
    let mut disagreements = vec![];
    for k in 0..n {
        let p = random_square(&mut rng, 12);
        let tag = format!("square #{k}");
        let lp = audit.check(&tag, &p, None, limits).ok_or("LP failed")?.is_contextual();
        let chsh = chsh_check(&p).map_err(|e| e.to_string())?.holds();
        let to_h = audit.extension(&tag, &p, &into_h, &h).ok_or("extension failed")?;
        let pt = square_to_punctured_torus(&p, &t);
        let lp_t = audit.check(&tag, &pt, None, limits).ok_or("LP failed")?.is_contextual();
        let to_t = audit.extension(&tag, &pt, &t.inclusion, &t.torus).ok_or("extension failed")?;
        contextual += lp as usize;
        if !(chsh != lp && to_h != lp && lp_t == lp && to_t != lp) {
            disagreements.push(k);
        }
    }
    let took = start.elapsed();
    ensure(disagreements.is_empty(), || format!("disagreements at {disagreements:?}"))?;
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!("{n} boxes ({contextual} contextual), LP = CHSH = extension to H and to T, {took:.2?}"))
}

fn c3_counts(limits: &Limits) -> Outcome {
    let count = |name: &str, d: u32| -> Result<usize, String> {
        let x = space(name);
        let all = enumerate_deterministic(&x, OutcomeSpace::Nerve(d), limits).map_err(|e| e.to_string())?;
        let formula = count_deterministic_nerve(&x, d).map_err(|e| e.to_string())?;
        ensure(formula == all.len() as u128, || format!("{name}: {formula} by formula, {} enumerated", all.len()))?;
        Ok(all.len())
    };
    let t = count("punctured_torus", 2)?;
    ensure(t == 16, || format!("punctured torus has {t}"))?;
    for d in [2, 3, 5] {
        let c = count("circle", d)?;
        ensure(c == d as usize, || format!("circle with nerve({d}) has {c}"))?;
    }
    let g = count("glued_triangle", 2)?;
    ensure(g == 2, || format!("glued triangle has {g}"))?;
    let s = discrete_embed(
        &["x0", "x1", "y0", "y1"],
        &[vec!["x0", "y0"], vec!["x0", "y1"], vec!["x1", "y0"], vec!["x1", "y1"]],
        2,
    )
    .map_err(|e| e.to_string())?;
    let c = enumerate_deterministic(&s.space, s.outcome(), limits).map_err(|e| e.to_string())?.len();
    ensure(c == 16, || format!("discrete CHSH has {c}"))?;
    Ok("punctured torus 16, circle d for d = 2, 3, 5, glued triangle 2, discrete CHSH 16".into())
}

fn c4_diamond(audit: &mut Audit, limits: &Limits) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let n = 200;
    for k in 0..n {
        let (a, b) = (k % 3, k / 3 % 3);
        let p = random_diamond(&mut rng, a, b, 12);
        let tag = format!("diamond({a},{b}) #{k}");
        let v = audit.check(&tag, &p, Some(&Subspace::designated(p.space(), "boundary").unwrap()), limits);
        ensure(matches!(v, Some(Verdict::Noncontextual(_))), || format!("{tag} is contextual"))?;
        let x = p.space();
        let sa = Subspace::generated_by(x, &[x.find_label("s_x0y0").unwrap()]).unwrap();
        let sb = Subspace::generated_by(x, &[x.find_label("s_x1y1").unwrap()]).unwrap();
        let d = mixture_by_gluing(&p, &sa, &sb, limits).map_err(|e| format!("{tag}: {e}"))?;
        let d = d.ok_or_else(|| format!("{tag}: gluing found no mixture"))?;
        ensure(d.theta() == p, || format!("{tag}: glued mixture misses p"))?;
    }
    Ok(format!("{n} distributions over all nine face pairings, glued mixtures reproduce p"))
}

fn c5_boundary_delta3(audit: &mut Audit, limits: &Limits) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let x = space("boundary_delta(3)");
    let full = space("delta(3)");
    let f = SpaceMap::by_labels(&x, &full).map_err(|e| e.to_string())?;
    let n = 200;
    for k in 0..n {
        let p = random_from_edges(&mut rng, &x, 12, 100_000).ok_or("no draw found")?;
        let tag = format!("boundary #{k}");
        audit.check(&tag, &p, None, limits);
        let ext = audit.extension(&tag, &p, &f, &full).ok_or("extension failed")?;
        ensure(ext, || format!("{tag} does not extend"))?;
        let q = extend_boundary_delta3(&p).map_err(|e| format!("{tag}: min-construction failed: {e}"))?;
        // plug the construction into the extension system
        let prob = ExtensionProblem::new(&p, &f, full.clone()).map_err(|e| e.to_string())?;
        let v: Vec<Q> = prob.vars.iter().map(|(s, t)| q.get(*s).get(t).into_value()).collect();
        let rows_hold = prob.a.iter().zip(&prob.b).all(|(row, b)| {
            row.iter().zip(&v).fold(Q::zero(), |acc, (a, x)| acc + a * x) == *b
        });
        ensure(rows_hold && v.iter().all(|x| !x.is_negative()), || format!("{tag}: min-construction rejected"))?;
    }
    Ok(format!("{n} distributions extend, min-construction accepted"))
}

fn c6_facets(limits: &Limits) -> Outcome {
    let x = space("diamond");
    let coords: Vec<SimplexId> = x.designation("boundary").ok_or("no boundary")?.to_vec();
    let sys = classical_facets(&x, OutcomeSpace::Nerve(2), &coords, FacetMethod::Auto, limits).map_err(|e| e.to_string())?;
    let idx = |label: &str| sys.var(&format!("p_{label}^0")).ok_or_else(|| format!("no coordinate for {label}"));
    // p01, p12 on the first triangle and q01, q12 on the second
    let order = [idx("x0")?, idx("y0")?, idx("x1")?, idx("y1")?];
    let row = |signs: [i64; 4], rel: Relation, rhs: i64| {
        let mut c = vec![Q::zero(); 4];
        for (k, s) in signs.iter().enumerate() {
            c[order[k]] = qi(*s);
        }
        Row::new(c, rel, qi(rhs)).normalized()
    };
    let mut expected = BTreeSet::new();
    for signs in [[1, 1, 1, -1], [1, 1, -1, 1], [1, -1, 1, 1], [-1, 1, 1, 1]] {
        expected.insert(row(signs, Relation::Ge, 0));
        expected.insert(row(signs, Relation::Le, 2));
    }
    let chsh = expected.len();
    for k in 0..4 {
        let mut e = [0; 4];
        e[k] = 1;
        expected.insert(row(e, Relation::Ge, 0));
        expected.insert(row(e, Relation::Le, 1));
    }
    let got: BTreeSet<Row> = sys.rows.iter().map(|r| r.normalized()).collect();
    ensure(got.len() == sys.rows.len(), || "duplicate facets".into())?;
    ensure(got == expected, || format!("facets differ:\n{sys}"))?;
    let fm = classical_facets(&x, OutcomeSpace::Nerve(2), &coords, FacetMethod::FourierMotzkin, limits).map_err(|e| e.to_string())?;
    ensure(fm == sys, || "double description and elimination disagree".into())?;
    Ok(format!("{chsh} CHSH facets plus {} trivial bounds", expected.len() - chsh))
}

fn bell_states() -> Vec<(&'static str, DensityMatrix)> {
    let c = |v: [i64; 4]| v.map(|x| Cq::real(qi(x))).to_vec();
    vec![
        ("phi+", DensityMatrix::pure(&c([1, 0, 0, 1])).unwrap()),
        ("phi-", DensityMatrix::pure(&c([1, 0, 0, -1])).unwrap()),
        ("psi+", DensityMatrix::pure(&c([0, 1, 1, 0])).unwrap()),
        ("psi-", DensityMatrix::pure(&c([0, 1, -1, 0])).unwrap()),
    ]
}

fn boundary_triple(p: &RationalDistribution) -> Option<[u32; 3]> {
    let mut out = [0; 3];
    for (k, label) in ["XX", "YY", "ZZ"].iter().enumerate() {
        let d = p.get(p.space().find_label(label)?);
        out[k] = (0..2).find(|&v| d == &Distribution::delta(vec![v]))?;
    }
    Some(out)
}

fn c7_cohomology(audit: &mut Audit, limits: &Limits) -> Outcome {
    let circle = space("circle");
    for d in [2, 3, 4] {
        let g = h1(&circle, d).map_err(|e| e.to_string())?;
        ensure(g.invariants == vec![d as u64], || format!("H1(S1; Z_{d}) has invariants {:?}", g.invariants))?;
    }
    let x = space("mermin_square_state_dep");
    let z = Subspace::designated(&x, "boundary").map_err(|e| e.to_string())?;
    let (pres, _) = z.presentation(&x).map_err(|e| e.to_string())?;
    let pres = Arc::new(pres);
    for bits in 0..8u32 {
        let v = [bits & 1, bits >> 1 & 1, bits >> 2 & 1];
        let f = Cochain::from_labels(pres.clone(), 1, 2, &[("XX", v[0]), ("YY", v[1]), ("ZZ", v[2])]).map_err(|e| e.to_string())?;
        let cls = connecting(&x, &z, &f).map_err(|e| e.to_string())?;
        let odd = v.iter().sum::<u32>() % 2 == 1;
        ensure(cls.is_zero != odd, || format!("class of {v:?} is zero: {}", cls.is_zero))?;
    }
    // the same through distributions: Bell states give the odd triples,
    // deterministic fillings the even ones
    let a = ObservableAssignment::from_edge_labels(x.clone()).map_err(|e| e.to_string())?;
    let mut seen = BTreeSet::new();
    for (name, rho) in bell_states() {
        let p = a.born(&rho).map_err(|e| e.to_string())?;
        let v = boundary_triple(&p).ok_or_else(|| format!("{name}: boundary is not deterministic"))?;
        let w = cl_witness(&p, &z, limits).map_err(|e| e.to_string())?;
        ensure(w.verdict == WitnessVerdict::StronglyContextual, || format!("{name} {v:?}: witness {:?}", w.verdict))?;
        audit.check(name, &p, Some(&z), limits);
        seen.insert(v);
    }
    let dets = enumerate_deterministic(&x, OutcomeSpace::Nerve(2), limits).map_err(|e| e.to_string())?;
    for r in dets {
        let p = ClassicalDistribution::delta(x.clone(), OutcomeSpace::Nerve(2), r).map_err(|e| e.to_string())?.theta();
        let v = boundary_triple(&p).ok_or("deterministic boundary is not a delta")?;
        if seen.contains(&v) {
            continue;
        }
        let w = cl_witness(&p, &z, limits).map_err(|e| e.to_string())?;
        ensure(w.verdict != WitnessVerdict::StronglyContextual, || format!("deterministic {v:?} flagged"))?;
        audit.check("mermin deterministic", &p, Some(&z), limits);
        seen.insert(v);
    }
    ensure(seen.len() == 8, || format!("only {} triples realized", seen.len()))?;
    let y = space("mermin_square_state_indep");
    let loop_ = Subspace::designated(&y, "loop").map_err(|e| e.to_string())?;
    let b = ObservableAssignment::from_edge_labels(y.clone()).map_err(|e| e.to_string())?;
    let p = b.born(&DensityMatrix::maximally_mixed(2)).map_err(|e| e.to_string())?;
    let w = cl_witness(&p, &loop_, limits).map_err(|e| e.to_string())?;
    ensure(
        w.verdict == WitnessVerdict::StronglyContextual && w.classes.iter().all(|c| !c.is_zero),
        || format!("state-independent class: {:?}", w.verdict),
    )?;
    audit.check("state-independent", &p, Some(&loop_), limits);
    Ok("H1(S1) = Z_d for d = 2, 3, 4; Mermin class nonzero iff odd parity (8 triples); state-independent class nonzero".into())
}

fn c8_quantum(audit: &mut Audit, limits: &Limits) -> Outcome {
    let start = Instant::now();
    let x = space("mermin_square_state_dep");
    let a = ObservableAssignment::from_edge_labels(x.clone()).map_err(|e| e.to_string())?;
    let p = a.born(&DensityMatrix::bell_phi_plus()).map_err(|e| e.to_string())?;
    let z = Subspace::designated(&x, "boundary").map_err(|e| e.to_string())?;
    let (pres, inc) = z.presentation(&x).map_err(|e| e.to_string())?;
    let on_z = restrict(&p, &inc, Arc::new(pres)).map_err(|e| e.to_string())?;
    for (label, v) in [("XX", 0), ("YY", 1), ("ZZ", 0)] {
        let e = on_z.space().find_label(label).ok_or("missing boundary edge")?;
        ensure(on_z.get(e) == &Distribution::delta(vec![v]), || format!("{label} is not delta {v}"))?;
    }
    let strong = is_strongly_contextual(&p, limits).map_err(|e| e.to_string())?;
    ensure(strong.strongly_contextual, || "Born table has a global section".into())?;
    let y = space("mermin_square_state_indep");
    let b = ObservableAssignment::from_edge_labels(y).map_err(|e| e.to_string())?;
    let pinned = value_assignment_exists(&b, &[("-II", 1)], limits).map_err(|e| e.to_string())?;
    ensure(pinned.is_none(), || "found a value assignment with the loop pinned to 1".into())?;
    let took = start.elapsed();
    audit.check("bell born", &p, Some(&z), limits);
    ensure(took < Duration::from_secs(1), || format!("took {took:?}"))?;
    Ok(format!("boundary (δ0, δ1, δ0), strongly contextual, no value assignment, {took:.2?}"))
}

fn c9_glued_grid(audit: &mut Audit, limits: &Limits) -> Outcome {
    let x = space("glued_triangle");
    let s = x.find_label("s").ok_or("no triangle")?;
    let den = 20u64;
    let (mut checked, mut skipped) = (0, 0);
    let mut bad = vec![];
    for i in 0..=den {
        for j in 0..=den {
            if i + j > den {
                skipped += 1;
                continue;
            }
            let rest = NonNegRational::from_ratio(den - i - j, 2 * den);
            let d = Distribution::from_pairs([
                (vec![0, 0], NonNegRational::from_ratio(i, den)),
                (vec![0, 1], NonNegRational::from_ratio(j, den)),
                (vec![1, 0], rest.clone()),
                (vec![1, 1], rest),
            ]);
            let p = SimplicialDistribution::from_partial(x.clone(), OutcomeSpace::Nerve(2), [(s, d)].into())
                .map_err(|e| format!("({i}, {j}): {e}"))?;
            let v = audit.check(&format!("glued ({i}, {j})"), &p, None, limits).ok_or("LP failed")?;
            if v.is_contextual() != (i + j < den) {
                bad.push((i, j));
            }
            checked += 1;
        }
    }
    ensure(bad.is_empty(), || format!("disagreements at {bad:?}"))?;
    Ok(format!("{checked} grid points agree ({skipped} outside the simplex skipped)"))
}

fn c10_soundness(audit: &Audit) -> Outcome {
    ensure(audit.failures.is_empty(), || audit.failures.join("; "))?;
    ensure(audit.instances > 0, || "nothing audited".into())?;
    Ok(format!("{} instances, {} certificates re-verified", audit.instances, audit.certificates))
}

fn main() -> ExitCode {
    let limits = Limits::default();
    let mut audit = Audit::default();
    let mut results: Vec<(&str, Outcome)> = vec![
        ("PR box", c1_pr_box(&mut audit, &limits)),
        ("Fine round trip", c2_fine(&mut audit, &limits)),
        ("deterministic counts", c3_counts(&limits)),
        ("diamond universality", c4_diamond(&mut audit, &limits)),
        ("boundary of the 3-simplex", c5_boundary_delta3(&mut audit, &limits)),
        ("diamond facets", c6_facets(&limits)),
        ("cohomology", c7_cohomology(&mut audit, &limits)),
        ("quantum fixtures", c8_quantum(&mut audit, &limits)),
        ("glued triangle grid", c9_glued_grid(&mut audit, &limits)),
    ];
    results.push(("soundness", c10_soundness(&audit)));
    let mut failed = 0;
    for (k, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", k + 1)
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
