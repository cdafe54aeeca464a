//! The JSON scenario format. Rationals are `"a/b"` strings; maps are key-sorted,
//! so parsing then writing a file gives its canonical form.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use simpctx::contextuality::{discrete_embed, DiscreteScenario};
use simpctx::outcomes::{Distribution, OutcomeSpace, RationalDistribution, SimplicialDistribution};
use simpctx::quantum::{ObservableAssignment, PauliObservable};
use simpctx::rational::NonNegRational;
use simpctx::sset::{builtin, glue, PresentedSSet, SimplexId, SimplexRef, DEFAULT_MAX_DIM};

/// Outcome keys to probabilities.
pub type Table = BTreeMap<String, NonNegRational>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub space: SpaceSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcome: Option<OutcomeSpec>,
    /// Simplex label to its distribution; faces are filled in as marginals.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distribution: Option<BTreeMap<String, Table>>,
    /// Edge label to Pauli word. Without it, edge labels are read as words.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observables: Option<BTreeMap<String, PauliObservable>>,
    /// Named subspaces by the labels of their generating simplices.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub designations: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceSpec {
    Builtin(String),
    Explicit(ExplicitSpace),
    Discrete(DiscreteSpec),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitSpace {
    pub vertices: Vec<String>,
    /// In order of increasing dimension; faces name earlier simplices.
    #[serde(default)]
    pub simplices: Vec<ExplicitSimplex>,
    /// Pairs of simplices to glue, closed under faces.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identify: Vec<[FaceRef; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_dim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitSimplex {
    pub label: String,
    pub faces: Vec<FaceRef>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FaceRef {
    Label(String),
    /// `s_{j1} .. s_{jk}` applied to `of`, indices strictly decreasing.
    Degenerate { of: String, degeneracies: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscreteSpec {
    pub measurements: Vec<String>,
    pub contexts: Vec<Vec<String>>,
    pub d: u32,
    /// One table per context; outcome digits follow the order of `measurements`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Table>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum OutcomeSpec {
    Nerve(u32),
    Circle(u32),
    Discrete(u32),
}

impl From<OutcomeSpec> for OutcomeSpace {
    fn from(o: OutcomeSpec) -> Self {
        match o {
            OutcomeSpec::Nerve(d) => OutcomeSpace::Nerve(d),
            OutcomeSpec::Circle(d) => OutcomeSpace::Circle(d),
            OutcomeSpec::Discrete(d) => OutcomeSpace::Discrete(d),
        }
    }
}

impl From<OutcomeSpace> for OutcomeSpec {
    fn from(o: OutcomeSpace) -> Self {
        match o {
            OutcomeSpace::Nerve(d) => OutcomeSpec::Nerve(d),
            OutcomeSpace::Circle(d) => OutcomeSpec::Circle(d),
            OutcomeSpace::Discrete(d) => OutcomeSpec::Discrete(d),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl std::fmt::Display) -> ScenarioError {
    ScenarioError::Invalid(msg.to_string())
}

/// A resolved scenario.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub space: Arc<PresentedSSet>,
    pub outcome: OutcomeSpace,
    pub distribution: Option<Result<RationalDistribution, String>>,
    pub observables: Option<BTreeMap<String, PauliObservable>>,
    pub discrete: Option<DiscreteScenario>,
}

impl ScenarioFile {
    pub fn read(path: &str) -> Result<Self, ScenarioError> {
        let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io { path: path.into(), source })?;
        Self::parse(&text).map_err(|e| match e {
            ScenarioError::Json { source, .. } => ScenarioError::Json { path: path.into(), source },
            e => e,
        })
    }

    pub fn parse(text: &str) -> Result<Self, ScenarioError> {
        serde_json::from_str(text).map_err(|source| ScenarioError::Json { path: "<input>".into(), source })
    }

    pub fn to_canonical(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes") + "\n"
    }

    /// Builds the space and reads the tables. A table that breaks the
    /// simplicial conditions is kept as an error so `validate` can report it.
    pub fn resolve(&self) -> Result<Scenario, ScenarioError> {
        let (mut space, discrete) = match &self.space {
            SpaceSpec::Builtin(name) => (builtin(name).map_err(invalid)?, None),
            SpaceSpec::Explicit(e) => (build_explicit(e)?, None),
            SpaceSpec::Discrete(d) => {
                let ms: Vec<&str> = d.measurements.iter().map(String::as_str).collect();
                let cs: Vec<Vec<&str>> = d.contexts.iter().map(|c| c.iter().map(String::as_str).collect()).collect();
                let s = discrete_embed(&ms, &cs, d.d).map_err(invalid)?;
                ((*s.space).clone(), Some(s))
            }
        };
        for (name, labels) in &self.designations {
            let ids = labels.iter().map(|l| find(&space, l)).collect::<Result<Vec<_>, _>>()?;
            space.designate(name.clone(), ids);
        }
        let space = Arc::new(space);
        // designations only add names, so the embedding's ids stay valid
        let discrete = discrete.map(|mut s| {
            s.space = space.clone();
            s
        });
        let outcome = match (&discrete, self.outcome) {
            (Some(s), None) => s.outcome(),
            (Some(s), Some(o)) if OutcomeSpace::from(o) == s.outcome() => s.outcome(),
            (Some(s), Some(o)) => return Err(invalid(format!("discrete scenarios use {}, not {}", s.outcome(), OutcomeSpace::from(o)))),
            (None, o) => o.map(OutcomeSpace::from).unwrap_or(OutcomeSpace::Nerve(2)),
        };
        outcome.check().map_err(invalid)?;
        let distribution = match (&self.space, &self.distribution) {
            (SpaceSpec::Discrete(d), None) => d.table.as_ref().map(|t| discrete_table(discrete.as_ref().expect("embedded above"), t)),
            (SpaceSpec::Discrete(_), Some(_)) => return Err(invalid("discrete scenarios give their tables under space.discrete.table")),
            (_, Some(t)) => Some(read_table(&space, outcome, t)?),
            (_, None) => None,
        };
        Ok(Scenario { space, outcome, distribution, observables: self.observables.clone(), discrete })
    }
}

fn find(x: &PresentedSSet, label: &str) -> Result<SimplexId, ScenarioError> {
    x.find_label(label).ok_or_else(|| invalid(format!("no simplex labelled {label:?}")))
}

fn build_explicit(e: &ExplicitSpace) -> Result<PresentedSSet, ScenarioError> {
    let top = e.simplices.iter().map(|s| s.faces.len().saturating_sub(1)).max().unwrap_or(0);
    let mut x = PresentedSSet::empty(e.max_dim.unwrap_or(DEFAULT_MAX_DIM).max(top));
    let mut seen: BTreeMap<&str, SimplexId> = BTreeMap::new();
    let face = |seen: &BTreeMap<&str, SimplexId>, f: &FaceRef| -> Result<SimplexRef, ScenarioError> {
        match f {
            FaceRef::Label(l) => seen.get(l.as_str()).map(|&s| s.into()).ok_or_else(|| invalid(format!("unknown face {l:?}"))),
            FaceRef::Degenerate { of, degeneracies } => {
                let base = *seen.get(of.as_str()).ok_or_else(|| invalid(format!("unknown face {of:?}")))?;
                SimplexRef::degenerate(base, degeneracies.clone()).map_err(|err| invalid(format!("{of:?}: {err}")))
            }
        }
    };
    for v in &e.vertices {
        if seen.insert(v, x.add_vertex(v.clone())).is_some() {
            return Err(invalid(format!("label {v:?} is used twice")));
        }
    }
    for s in &e.simplices {
        let faces = s.faces.iter().map(|f| face(&seen, f)).collect::<Result<Vec<_>, _>>()?;
        let id = x.add_simplex(s.label.clone(), faces).map_err(|err| invalid(format!("simplex {:?}: {err}", s.label)))?;
        if seen.insert(&s.label, id).is_some() {
            return Err(invalid(format!("label {:?} is used twice", s.label)));
        }
    }
    if e.identify.is_empty() {
        return Ok(x);
    }
    let pairs = e
        .identify
        .iter()
        .map(|[a, b]| Ok((face(&seen, a)?, face(&seen, b)?)))
        .collect::<Result<Vec<_>, ScenarioError>>()?;
    glue(&x, &pairs).map_err(invalid)
}

fn parse_dist(outcome: OutcomeSpace, dim: usize, t: &Table) -> Result<Distribution<NonNegRational>, ScenarioError> {
    let pairs = t
        .iter()
        .map(|(k, v)| Ok((outcome.parse_outcome(dim, k).map_err(invalid)?, v.clone())))
        .collect::<Result<Vec<_>, ScenarioError>>()?;
    Ok(Distribution::from_pairs(pairs))
}

fn read_table(
    space: &Arc<PresentedSSet>,
    outcome: OutcomeSpace,
    tables: &BTreeMap<String, Table>,
) -> Result<Result<RationalDistribution, String>, ScenarioError> {
    let mut given = BTreeMap::new();
    for (label, t) in tables {
        let s = find(space, label)?;
        given.insert(s, parse_dist(outcome, s.dim, t)?);
    }
    Ok(SimplicialDistribution::from_partial(space.clone(), outcome, given).map_err(|e| e.to_string()))
}

fn discrete_table(s: &DiscreteScenario, tables: &[Table]) -> Result<RationalDistribution, String> {
    if tables.len() != s.contexts.len() {
        return Err(format!("{} tables for {} contexts", tables.len(), s.contexts.len()));
    }
    let parsed = tables
        .iter()
        .zip(&s.contexts)
        .map(|(t, c)| parse_dist(s.outcome(), c.len() - 1, t).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    s.to_simplicial(&parsed).map_err(|e| e.to_string())
}

impl Scenario {
    pub fn distribution(&self) -> Result<&RationalDistribution, ScenarioError> {
        match &self.distribution {
            Some(Ok(p)) => Ok(p),
            Some(Err(e)) => Err(invalid(e)),
            None => Err(invalid("the scenario has no distribution")),
        }
    }

    pub fn observables(&self) -> Result<ObservableAssignment, ScenarioError> {
        match &self.observables {
            None => ObservableAssignment::from_edge_labels(self.space.clone()).map_err(invalid),
            Some(words) => {
                let edges = words
                    .iter()
                    .map(|(l, w)| Ok((find(&self.space, l)?, w.clone())))
                    .collect::<Result<BTreeMap<_, _>, ScenarioError>>()?;
                ObservableAssignment::from_edges(self.space.clone(), &edges).map_err(invalid)
            }
        }
    }
}

/// Tables on the generating simplices, enough to rebuild `p`.
pub fn tables_of(p: &RationalDistribution) -> BTreeMap<String, Table> {
    let x = p.space();
    let y = p.outcome();
    x.generating()
        .into_iter()
        .filter(|s| s.dim > 0)
        .map(|s| {
            let t = p.get(s).iter().map(|(k, v)| (y.format_outcome(k), v.clone())).collect();
            (x.label(s).to_string(), t)
        })
        .collect()
}

/// An explicit description of `x`, with faces named by label.
pub fn explicit_of(x: &PresentedSSet) -> Result<ExplicitSpace, ScenarioError> {
    let mut labels = std::collections::BTreeSet::new();
    for s in x.all_simplices() {
        if !labels.insert(x.label(s)) {
            return Err(invalid(format!("label {:?} is not unique", x.label(s))));
        }
    }
    let vertices = x.simplices(0).map(|v| x.label(v).to_string()).collect();
    let simplices = (1..=x.max_dim())
        .flat_map(|n| x.simplices(n))
        .map(|s| ExplicitSimplex {
            label: x.label(s).to_string(),
            faces: x
                .raw_faces(s)
                .iter()
                .map(|f| {
                    let of = x.label(f.base).to_string();
                    if f.is_degenerate() {
                        FaceRef::Degenerate { of, degeneracies: f.degeneracies.clone() }
                    } else {
                        FaceRef::Label(of)
                    }
                })
                .collect(),
        })
        .collect();
    Ok(ExplicitSpace { vertices, simplices, identify: vec![], max_dim: Some(x.max_dim()) })
}
