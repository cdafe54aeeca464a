use std::path::{Path, PathBuf};

use serde_json::Value;

use simpctx::limits::Limits;
use simpctx::rational::{parse_q, Q};
use simpctx::simpdist::enumerate_deterministic;
use simpctx_cli::scenario::ScenarioFile;
use simpctx_cli::{run, EXIT_CAP, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn scenario(name: &str) -> String {
    root().join("scenarios").join(name).to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = vec![];
    let mut err = vec![];
    let argv = std::iter::once("simpctx").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn report(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = cli(args);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\nstdout: {out}\nstderr: {err}"));
    (code, v)
}

fn shipped() -> Vec<PathBuf> {
    let mut files: Vec<_> = std::fs::read_dir(root().join("scenarios"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
}

#[test]
fn every_shipped_scenario_validates() {
    let files = shipped();
    assert!(files.len() >= 9);
    for f in files {
        let path = f.to_string_lossy();
        let (code, v) = report(&["validate", &path]);
        assert_eq!(code, EXIT_OK, "{path}: {v}");
        assert_eq!(v["valid"], true);
    }
}

#[test]
fn shipped_scenarios_are_canonical_fixed_points() {
    for f in shipped() {
        let once = ScenarioFile::read(&f.to_string_lossy()).unwrap().to_canonical();
        assert_eq!(ScenarioFile::parse(&once).unwrap().to_canonical(), once, "{}", f.display());
    }
}

/// Lines of the form `simpctx <args>  # exit <n>` inside the README's code blocks.
fn documented_commands() -> Vec<(Vec<String>, i32)> {
    let text = std::fs::read_to_string(root().join("README.md")).unwrap();
    text.lines()
        .filter_map(|l| l.trim().strip_prefix("simpctx "))
        .filter_map(|l| {
            let (cmd, code) = l.split_once("# exit ")?;
            let args = cmd
                .split_whitespace()
                .map(|a| {
                    let a = a.trim_matches('\'');
                    if a.starts_with("scenarios/") {
                        root().join(a).to_string_lossy().into_owned()
                    } else {
                        a.to_string()
                    }
                })
                .collect();
            Some((args, code.trim().parse().unwrap()))
        })
        .collect()
}

#[test]
fn readme_commands_exit_as_documented() {
    let cmds = documented_commands();
    assert!(cmds.len() >= 12, "found {} documented commands", cmds.len());
    for (args, expected) in cmds {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, _, err) = cli(&refs);
        assert_eq!(code, expected, "{args:?}: {err}");
    }
}

#[test]
fn pr_box_report_carries_a_checkable_functional() {
    let path = scenario("pr_box.json");
    let (code, v) = report(&["check", &path]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(v["strongly_contextual"], true);
    let f = &v["certificate"]["separating_functional"];
    let s = ScenarioFile::read(&path).unwrap().resolve().unwrap();
    let p = s.distribution().unwrap();
    let x = p.space();
    let y = p.outcome();
    let coeffs: Vec<_> = f["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            let sigma = x.find_label(c["simplex"].as_str().unwrap()).unwrap();
            let theta = y.parse_outcome(sigma.dim, c["outcome"].as_str().unwrap()).unwrap();
            (sigma, theta, parse_q(c["coefficient"].as_str().unwrap()).unwrap())
        })
        .collect();
    let bound = parse_q(f["bound"].as_str().unwrap()).unwrap();
    let at_p: Q = coeffs.iter().map(|(s, t, c)| c * p.get(*s).get(t).value()).sum();
    assert!(at_p > bound);
    for r in enumerate_deterministic(x, y, &Limits::default()).unwrap() {
        let at_r: Q = coeffs.iter().filter(|(s, t, _)| r.get(*s) == t).map(|(_, _, c)| c.clone()).sum();
        assert!(at_r <= bound);
    }
}

#[test]
fn noncontextual_reports_carry_a_convex_decomposition() {
    for name in ["noisy_pr_1_4.json", "diamond.json", "glued_triangle.json"] {
        let (code, v) = report(&["check", &scenario(name)]);
        assert_eq!(code, EXIT_OK, "{name}");
        let total: Q = v["certificate"]["decomposition"]
            .as_array()
            .unwrap()
            .iter()
            .map(|w| parse_q(w["weight"].as_str().unwrap()).unwrap())
            .sum();
        assert_eq!(total, parse_q("1").unwrap(), "{name}");
        assert_eq!(v["certificate_verified"], true);
    }
}

#[test]
fn chsh_lists_sixteen_assignments() {
    let (code, v) = report(&["deterministics", &scenario("chsh.json")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["count"], 16);
    assert_eq!(v["assignments"].as_array().unwrap().len(), 16);
}

#[test]
fn bell_mermin_witness_is_nonzero() {
    let (code, v) = report(&["witness", &scenario("mermin_state_dep_bell.json"), "--subspace", "boundary"]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(v["witness"]["verdict"], "strongly_contextual");
    assert_eq!(v["witness"]["classes"][0]["is_zero"], false);
}

#[test]
fn born_output_is_a_valid_scenario() {
    let dir = tempfile::tempdir().unwrap();
    // three qubits against two-qubit observables
    let (code, _, err) = cli(&["born", &scenario("mermin_state_indep.json"), "--state", "ghz3"]);
    assert_eq!(code, EXIT_USAGE, "{err}");
    let (code, v) = report(&["born", &scenario("mermin_state_dep_bell.json"), "--state", "bell_phi_plus"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["strongly_contextual"], true);
    let out = dir.path().join("born.json");
    std::fs::write(&out, serde_json::to_string(&v["scenario"]).unwrap()).unwrap();
    let (code, _) = report(&["validate", &out.to_string_lossy()]);
    assert_eq!(code, EXIT_OK);
    let shipped = ScenarioFile::read(&scenario("mermin_state_dep_bell.json")).unwrap();
    assert_eq!(ScenarioFile::read(&out.to_string_lossy()).unwrap(), shipped);
}

#[test]
fn malformed_files_exit_two_with_a_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"space\": {\"builtin\": \"torus\"},\n  \"outcome\": {\"nerve\": 2},\n  \"distribution\": [}").unwrap();
    let (code, out, err) = cli(&["validate", &bad.to_string_lossy()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert!(err.contains("line 3"), "{err}");

    let neg = dir.path().join("neg.json");
    std::fs::write(&neg, r#"{"space": {"builtin": "delta(2)"}, "distribution": {"012": {"00": "-1/2", "11": "3/2"}}}"#).unwrap();
    assert_eq!(cli(&["check", &neg.to_string_lossy()]).0, EXIT_USAGE);
    assert_eq!(cli(&["check", &dir.path().join("missing.json").to_string_lossy()]).0, EXIT_USAGE);
}

#[test]
fn invalid_distributions_fail_validation() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("nonsimplicial.json");
    // the shared edge c gets different marginals from the two triangles
    std::fs::write(
        &f,
        r#"{"space": {"builtin": "diamond"}, "distribution": {
            "s_x0y0": {"00": "1"},
            "s_x1y1": {"01": "1"}
        }}"#,
    )
    .unwrap();
    let (code, v) = report(&["validate", &f.to_string_lossy()]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(v["valid"], false);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cli(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(cli(&["check"]).0, EXIT_USAGE);
    assert_eq!(cli(&["facets", &scenario("diamond.json"), "--method", "simplex"]).0, EXIT_USAGE);
    assert_eq!(cli(&["witness", &scenario("pr_box.json"), "--subspace", "nowhere"]).0, EXIT_USAGE);
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("discrete-embed"));
}

#[test]
fn the_vertex_cap_exits_three() {
    for args in [
        vec!["--max-vertices", "1", "deterministics", "chsh.json"],
        vec!["check", "pr_box.json", "--max-vertices", "15"],
        vec!["--max-vertices", "2", "facets", "diamond.json"],
    ] {
        let args: Vec<String> = args.iter().map(|a| if a.ends_with(".json") { scenario(a) } else { a.to_string() }).collect();
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, out, err) = cli(&refs);
        assert_eq!(code, EXIT_CAP, "{args:?}: {out}");
        assert!(err.contains("cap"), "{err}");
    }
    assert_eq!(cli(&["--max-vertices", "16", "deterministics", &scenario("chsh.json")]).0, EXIT_OK);
}

#[test]
fn facets_of_the_diamond_boundary() {
    let (code, v) = report(&["facets", &scenario("diamond.json"), "--method", "dd", "--simplices", "x0", "y0", "x1", "y1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["inequalities"].as_array().unwrap().len(), 16);
    let (_, fm) = report(&["facets", &scenario("diamond.json"), "--method", "fm", "--simplices", "x0", "y0", "x1", "y1"]);
    assert_eq!(v["rows"], fm["rows"]);
}

#[test]
fn discrete_embedding_agrees_with_the_sheaf_test() {
    let (code, v) = report(&["discrete-embed", &scenario("discrete_chsh.json")]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(v["agree"], true);
    assert_eq!(v["sheaf_noncontextual"], false);
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("embedded.json");
    std::fs::write(&f, serde_json::to_string(&v["scenario"]).unwrap()).unwrap();
    let (code, c) = report(&["check", &f.to_string_lossy()]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(c["strongly_contextual"], true);
    let (code, d) = report(&["deterministics", &f.to_string_lossy(), "--count-only"]);
    assert_eq!((code, d["count"].as_u64()), (EXIT_OK, Some(16)));
}
