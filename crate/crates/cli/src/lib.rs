//! Command-line front end: every command reads a scenario file and prints a
//! JSON report on standard output.
//!
//! Exit codes: 0 noncontextual, feasible or valid; 1 contextual or infeasible;
//! 2 usage or input error; 3 enumeration cap reached.

pub mod scenario;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use simpctx::cohomology::{cl_witness, cohomology, CohoError, WitnessVerdict};
use simpctx::contextuality::{
    chsh_check, classical_facets, is_logically_contextual, is_noncontextual, is_strongly_contextual,
    mixture_by_gluing, CtxError, Extension, ExtensionProblem, FacetMethod, Verdict, XOR_LABELS,
};
use simpctx::limits::Limits;
use simpctx::outcomes::{OutcomeSpace, RationalDistribution, SimplicialDistribution};
use simpctx::quantum::{DensityMatrix, QuantumError};
use simpctx::rational::{format_q, NonNegRational};
use simpctx::simpdist::{enumerate_deterministic, ClassicalDistribution, DeterministicAssignment, SimpError};
use simpctx::sset::{PresentedSSet, SimplexId, SpaceMap, Subspace};

use scenario::{explicit_of, tables_of, Scenario, ScenarioError, ScenarioFile, SpaceSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "simpctx", version, about = "Contextuality of simplicial distributions, decided exactly")]
pub struct Cli {
    /// Cap on enumerated deterministic assignments (default from SIMPCTX_MAX_VERTICES, else 1000000).
    #[arg(long, global = true)]
    pub max_vertices: Option<u128>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the space, the distribution and the observables.
    Validate { file: String },
    /// List the deterministic distributions.
    Deterministics {
        file: String,
        #[arg(long)]
        count_only: bool,
    },
    /// Noncontextuality with a certificate, plus strong and logical contextuality.
    Check { file: String },
    /// The CHSH inequalities on the four XOR edges.
    Chsh { file: String },
    /// Extend the distribution along the label-preserving map into another space.
    Extend {
        file: String,
        /// A builtin name or a scenario file.
        #[arg(long)]
        into: String,
    },
    /// Glue classical decompositions of two pieces.
    Glue {
        file: String,
        /// Designation naming the first piece; defaults to the first generating simplex.
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
    /// Cohomological witness for strong contextuality on a designated subspace.
    Witness {
        file: String,
        #[arg(long)]
        subspace: String,
    },
    /// Cohomology with Z_d coefficients.
    H1 {
        file: String,
        /// Defaults to the modulus of the outcome space.
        #[arg(long)]
        d: Option<u32>,
        #[arg(long, default_value_t = 1)]
        dim: usize,
    },
    /// Born-rule distribution of the observables in a named state.
    Born {
        file: String,
        /// bell_phi_plus, ghz3 or maximally_mixed(n).
        #[arg(long)]
        state: String,
    },
    /// Facets of the classical polytope.
    Facets {
        file: String,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Coordinates on the generators of this designation.
        #[arg(long)]
        subspace: Option<String>,
        /// Coordinates on these simplices, by label.
        #[arg(long, num_args = 1..)]
        simplices: Vec<String>,
    },
    /// Embed a discrete scenario and compare both noncontextuality tests.
    DiscreteEmbed { file: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Method {
    Auto,
    Dd,
    Fm,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Cap(String),
}

impl From<ScenarioError> for Failure {
    fn from(e: ScenarioError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn simp_failure(e: &SimpError) -> Option<Failure> {
    matches!(e, SimpError::ResourceLimit { .. }).then(|| Failure::Cap(e.to_string()))
}

impl From<SimpError> for Failure {
    fn from(e: SimpError) -> Self {
        simp_failure(&e).unwrap_or_else(|| Failure::Usage(e.to_string()))
    }
}

impl From<CtxError> for Failure {
    fn from(e: CtxError) -> Self {
        match &e {
            CtxError::Simp(s) => simp_failure(s),
            _ => None,
        }
        .unwrap_or_else(|| Failure::Usage(e.to_string()))
    }
}

impl From<CohoError> for Failure {
    fn from(e: CohoError) -> Self {
        match e {
            CohoError::Simp(s) => s.into(),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<QuantumError> for Failure {
    fn from(e: QuantumError) -> Self {
        match e {
            QuantumError::Ctx(c) => c.into(),
            QuantumError::Coho(c) => c.into(),
            QuantumError::Simp(s) => s.into(),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<simpctx::sset::SsetError> for Failure {
    fn from(e: simpctx::sset::SsetError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(i32, Value), Failure>;

/// Parses `args` (program name first), runs the command and writes the report.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let limits = cli.max_vertices.map(Limits::with_max_vertices).unwrap_or_else(Limits::from_env);
    match dispatch(&cli.command, &limits) {
        Ok((code, report)) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Cap(msg)) => {
            let _ = writeln!(err, "resource cap: {msg}");
            EXIT_CAP
        }
    }
}

fn load(file: &str) -> Result<Scenario, Failure> {
    Ok(ScenarioFile::read(file)?.resolve()?)
}

fn verdict_code(negative: bool) -> i32 {
    if negative {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    }
}

fn dispatch(cmd: &Command, limits: &Limits) -> Outcome {
    match cmd {
        Command::Validate { file } => validate(file),
        Command::Deterministics { file, count_only } => deterministics(file, *count_only, limits),
        Command::Check { file } => check(file, limits),
        Command::Chsh { file } => chsh(file),
        Command::Extend { file, into } => extend(file, into),
        Command::Glue { file, a, b } => glue_cmd(file, a.as_deref(), b.as_deref(), limits),
        Command::Witness { file, subspace } => witness(file, subspace, limits),
        Command::H1 { file, d, dim } => h1_cmd(file, *d, *dim),
        Command::Born { file, state } => born(file, state, limits),
        Command::Facets { file, method, subspace, simplices } => facets(file, *method, subspace.as_deref(), simplices, limits),
        Command::DiscreteEmbed { file } => discrete(file, limits),
    }
}

fn space_summary(x: &PresentedSSet) -> Value {
    json!({
        "counts": (0..=x.max_dim()).map(|n| x.count(n)).collect::<Vec<_>>(),
        "designations": x.designations().keys().collect::<Vec<_>>(),
        "fingerprint": x.fingerprint(),
    })
}

fn assignment_json(x: &PresentedSSet, y: OutcomeSpace, r: &DeterministicAssignment) -> Value {
    if y.is_nerve_like() {
        return json!(r.edge_map(x));
    }
    let m: BTreeMap<String, String> = x.all_simplices().map(|s| (x.label(s).to_string(), y.format_outcome(r.get(s)))).collect();
    json!(m)
}

fn decomposition_json(d: &ClassicalDistribution<NonNegRational>) -> Value {
    let x = d.space();
    let y = d.outcome();
    Value::Array(
        d.weights()
            .iter()
            .filter(|(_, w)| **w != NonNegRational::default())
            .map(|(r, w)| json!({ "weight": format_q(w.value()), "assignment": assignment_json(x, y, r) }))
            .collect(),
    )
}

fn verdict_json(p: &RationalDistribution, v: &Verdict) -> Value {
    let x = p.space();
    match v {
        Verdict::Noncontextual(d) => json!({ "decomposition": decomposition_json(d) }),
        Verdict::Contextual(f) => {
            let coefficients: Vec<Value> = f
                .coefficients
                .iter()
                .map(|((s, t), c)| json!({ "simplex": x.label(*s), "outcome": p.outcome().format_outcome(t), "coefficient": format_q(c) }))
                .collect();
            json!({
                "separating_functional": {
                    "coefficients": coefficients,
                    "bound": format_q(&f.bound),
                    "value_at_p": format_q(&f.value(p)),
                }
            })
        }
    }
}

fn validate(file: &str) -> Outcome {
    let s = load(file)?;
    let structure = s.space.validate().err().map(|e| e.to_string());
    let distribution = match &s.distribution {
        None => json!("absent"),
        Some(Ok(_)) => json!("ok"),
        Some(Err(e)) => json!({ "error": e }),
    };
    let observables = match s.observables.is_some() {
        false => json!("absent"),
        true => match s.observables() {
            Ok(a) => {
                let v = a.validate();
                if v.is_empty() {
                    json!("ok")
                } else {
                    json!({ "violations": v })
                }
            }
            Err(e) => json!({ "error": e.to_string() }),
        },
    };
    let valid = structure.is_none() && !matches!(s.distribution, Some(Err(_))) && (observables == json!("ok") || observables == json!("absent"));
    let report = json!({
        "command": "validate",
        "valid": valid,
        "space": space_summary(&s.space),
        "structure": structure.unwrap_or_else(|| "ok".into()),
        "outcome": s.outcome.to_string(),
        "distribution": distribution,
        "observables": observables,
    });
    Ok((verdict_code(!valid), report))
}

fn deterministics(file: &str, count_only: bool, limits: &Limits) -> Outcome {
    let s = load(file)?;
    let all = enumerate_deterministic(&s.space, s.outcome, limits)?;
    let mut report = json!({ "command": "deterministics", "outcome": s.outcome.to_string(), "count": all.len() });
    if !count_only {
        report["assignments"] = all.iter().map(|r| assignment_json(&s.space, s.outcome, r)).collect();
    }
    Ok((EXIT_OK, report))
}

fn check(file: &str, limits: &Limits) -> Outcome {
    let s = load(file)?;
    let p = s.distribution()?;
    let v = is_noncontextual(p, limits)?;
    let verified = v.verify(p, limits)?;
    let strong = is_strongly_contextual(p, limits)?;
    let logical = is_logically_contextual(p, limits)?;
    let report = json!({
        "command": "check",
        "noncontextual": !v.is_contextual(),
        "strongly_contextual": strong.strongly_contextual,
        "logically_contextual": logical,
        "support_size": strong.support.len(),
        "certificate": verdict_json(p, &v),
        "certificate_verified": verified,
    });
    Ok((verdict_code(v.is_contextual()), report))
}

fn chsh(file: &str) -> Outcome {
    let s = load(file)?;
    let r = chsh_check(s.distribution()?)?;
    let report = json!({
        "command": "chsh",
        "contexts": XOR_LABELS,
        "marginals": r.marginals.iter().map(format_q).collect::<Vec<_>>(),
        "sums": r.sums.iter().map(format_q).collect::<Vec<_>>(),
        "violated": r.violated.iter().map(|&k| XOR_LABELS[k]).collect::<Vec<_>>(),
        "max": format_q(&r.max),
        "min": format_q(&r.min),
        "holds": r.holds(),
    });
    Ok((verdict_code(!r.holds()), report))
}

fn target_space(into: &str) -> Result<Arc<PresentedSSet>, Failure> {
    if into.ends_with(".json") {
        return Ok(load(into)?.space);
    }
    simpctx::sset::builtin(into).map(Arc::new).map_err(|e| Failure::Usage(format!("--into: {e}")))
}

fn extend(file: &str, into: &str) -> Outcome {
    let s = load(file)?;
    let p = s.distribution()?;
    let target = target_space(into)?;
    let f = SpaceMap::by_labels(p.space(), &target)?;
    let transported = !f.is_injective();
    let (p, f) = if transported { onto_image(p, &f, &target)? } else { (p.clone(), f) };
    let prob = ExtensionProblem::new(&p, &f, target.clone())?;
    let mut report = match prob.solve()? {
        Extension::Feasible(q) => json!({
            "command": "extend",
            "feasible": true,
            "extension": tables_of(&q),
        }),
        Extension::Infeasible(cert) => json!({
            "command": "extend",
            "feasible": false,
            "certificate": {
                "multipliers": cert.multipliers.iter().map(format_q).collect::<Vec<_>>(),
                "verified": prob.check_certificate(&cert),
            },
        }),
    };
    report["transported_to_image"] = json!(transported);
    let feasible = report["feasible"] == json!(true);
    Ok((verdict_code(!feasible), report))
}

/// When the label map collapses vertices, `p` is moved onto the image of its
/// generating simplices, which is then a genuine subspace of `target`.
fn onto_image(p: &RationalDistribution, f: &SpaceMap, target: &PresentedSSet) -> Result<(RationalDistribution, SpaceMap), Failure> {
    let z = p.space();
    let gens = z.generating();
    let imgs: Vec<SimplexId> = gens.iter().map(|&g| f.image(g).base).collect();
    if gens.iter().zip(&imgs).any(|(g, i)| f.image(*g).is_degenerate() || imgs.iter().filter(|j| *j == i).count() > 1) {
        return Err(Failure::Usage("the label map is not injective on generating simplices".into()));
    }
    let (pres, inclusion) = Subspace::generated_by(target, &imgs)?.presentation(target)?;
    let pres = Arc::new(pres);
    let given = gens
        .iter()
        .zip(&imgs)
        .map(|(&g, &i)| (pres.find_label(target.label(i)).expect("generator in its image"), p.get(g).clone()))
        .collect();
    let q = SimplicialDistribution::from_partial(pres, p.outcome(), given).map_err(|e| Failure::Usage(format!("on the image: {e}")))?;
    Ok((q, inclusion))
}

fn piece(x: &PresentedSSet, name: Option<&str>, fallback: usize) -> Result<Subspace, Failure> {
    match name {
        Some(n) => Ok(Subspace::designated(x, n)?),
        None => {
            let gens = x.generating();
            if gens.len() != 2 {
                return Err(Failure::Usage(format!("{} generating simplices; name the pieces with --a and --b", gens.len())));
            }
            Ok(Subspace::generated_by(x, &[gens[fallback]])?)
        }
    }
}

fn glue_cmd(file: &str, a: Option<&str>, b: Option<&str>, limits: &Limits) -> Outcome {
    let s = load(file)?;
    let p = s.distribution()?;
    let (sa, sb) = (piece(&s.space, a, 0)?, piece(&s.space, b, 1)?);
    let report = match mixture_by_gluing(p, &sa, &sb, limits)? {
        Some(d) => json!({
            "command": "glue",
            "glued": true,
            "reproduces_p": d.theta() == *p,
            "decomposition": decomposition_json(&d),
        }),
        None => json!({ "command": "glue", "glued": false, "reason": "a piece is contextual" }),
    };
    let glued = report["glued"] == json!(true);
    Ok((verdict_code(!glued), report))
}

fn witness(file: &str, subspace: &str, limits: &Limits) -> Outcome {
    let s = load(file)?;
    let z = Subspace::designated(&s.space, subspace)?;
    let w = cl_witness(s.distribution()?, &z, limits)?;
    let report = json!({ "command": "witness", "subspace": subspace, "witness": w.report() });
    Ok((verdict_code(w.verdict == WitnessVerdict::StronglyContextual), report))
}

fn h1_cmd(file: &str, d: Option<u32>, dim: usize) -> Outcome {
    let s = load(file)?;
    let d = d.unwrap_or_else(|| s.outcome.modulus());
    let g = cohomology(&s.space, dim, d)?;
    let report = json!({
        "command": "h1",
        "dim": g.dim,
        "d": g.d,
        "invariants": g.invariants,
        "order": g.order().to_string(),
        "generators": g.generators.iter().map(|c| c.report()).collect::<Vec<_>>(),
    });
    Ok((EXIT_OK, report))
}

fn born(file: &str, state: &str, limits: &Limits) -> Outcome {
    let file_spec = ScenarioFile::read(file)?;
    let s = file_spec.resolve()?;
    let rho = DensityMatrix::named(state)?;
    let a = s.observables()?;
    let p = a.born(&rho)?;
    let strong = is_strongly_contextual(&p, limits)?;
    let scenario = ScenarioFile {
        outcome: Some(p.outcome().into()),
        distribution: Some(tables_of(&p)),
        ..file_spec
    };
    let report = json!({
        "command": "born",
        "state": state,
        "strongly_contextual": strong.strongly_contextual,
        "scenario": scenario,
    });
    Ok((EXIT_OK, report))
}

fn facets(file: &str, method: Method, subspace: Option<&str>, simplices: &[String], limits: &Limits) -> Outcome {
    let s = load(file)?;
    let x = &s.space;
    let coords: Vec<SimplexId> = if !simplices.is_empty() {
        simplices
            .iter()
            .map(|l| x.find_label(l).ok_or_else(|| Failure::Usage(format!("no simplex labelled {l:?}"))))
            .collect::<Result<_, _>>()?
    } else if let Some(name) = subspace {
        x.designation(name).ok_or_else(|| Failure::Usage(format!("no designation {name:?}")))?.to_vec()
    } else {
        x.generating()
    };
    let method = match method {
        Method::Auto => FacetMethod::Auto,
        Method::Dd => FacetMethod::DoubleDescription,
        Method::Fm => FacetMethod::FourierMotzkin,
    };
    let sys = classical_facets(x, s.outcome, &coords, method, limits)?;
    let (eqs, ineqs): (Vec<_>, Vec<_>) = sys.rows.iter().partition(|r| r.rel == simpctx::lp::Relation::Eq);
    let report = json!({
        "command": "facets",
        "variables": sys.vars,
        "equations": eqs.iter().map(|r| sys.format_row(r)).collect::<Vec<_>>(),
        "inequalities": ineqs.iter().map(|r| sys.format_row(r)).collect::<Vec<_>>(),
        "rows": sys.rows,
    });
    Ok((EXIT_OK, report))
}

fn discrete(file: &str, limits: &Limits) -> Outcome {
    let spec = ScenarioFile::read(file)?;
    if !matches!(spec.space, SpaceSpec::Discrete(_)) {
        return Err(Failure::Usage("discrete-embed needs a space of the form {\"discrete\": ...}".into()));
    }
    let s = spec.resolve()?;
    let ds = s.discrete.as_ref().expect("discrete space");
    let mut scenario = ScenarioFile {
        space: SpaceSpec::Explicit(explicit_of(&s.space)?),
        outcome: Some(s.outcome.into()),
        distribution: None,
        observables: None,
        designations: BTreeMap::new(),
    };
    let mut report = json!({
        "command": "discrete-embed",
        "space": space_summary(&s.space),
        "contexts": ds.tops.iter().map(|&t| s.space.label(t)).collect::<Vec<_>>(),
    });
    let mut code = EXIT_OK;
    if s.distribution.is_some() {
        let p = s.distribution()?;
        let v = is_noncontextual(p, limits)?;
        let sheaf = ds.sheaf_noncontextual(&ds.to_table(p));
        scenario.distribution = Some(tables_of(p));
        report["simplicial_noncontextual"] = json!(!v.is_contextual());
        report["sheaf_noncontextual"] = json!(sheaf);
        report["agree"] = json!(sheaf != v.is_contextual());
        code = verdict_code(v.is_contextual());
    }
    report["scenario"] = serde_json::to_value(&scenario).expect("scenario serializes");
    Ok((code, report))
}
