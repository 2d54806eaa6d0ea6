use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn plectic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plectic"))
        .args(args)
        .env("PLECTIC_NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn thesis_core_exits_zero() {
    let o = plectic(&["run", "--manifest", "bundled:thesis-core"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&o);
    assert_eq!(r["schema"], "plectic-report/1");
    assert_eq!(r["summary"]["failed"], 0);
    let ids: Vec<&str> = r["cases"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn negative_controls_exit_one() {
    let o = plectic(&["run", "--manifest", "bundled:negative-controls"]);
    assert_eq!(o.status.code(), Some(1));
    let r = json(&o);
    assert_eq!(r["summary"]["failed"], 3);
    let stderr = String::from_utf8_lossy(&o.stderr);
    assert!(stderr.contains("corrupt-phi"), "{stderr}");
    assert!(!stderr.contains('\x1b'));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let dangling = r#"{"name": "m", "seed": 1, "fixtures": {},
        "suites": [{"id": "a", "identity": "gen_jacobi", "fixture": "nowhere"}]}"#;
    let cases = [
        ("dangling.json", dangling.to_string()),
        ("broken.json", "{ not json".to_string()),
        ("unknown.json", dangling.replace("gen_jacobi", "no_such_identity")),
        (
            "duplicate.json",
            r#"{"name": "m", "seed": 1, "suites": [
                {"id": "a", "identity": "section_phase"}, {"id": "a", "identity": "section_phase"}]}"#
                .to_string(),
        ),
        (
            "wrong-type.json",
            r#"{"name": "m", "seed": 1, "fixtures": {"g": {"type": "lie_algebra", "builtin": "su2"}},
                "suites": [{"id": "a", "identity": "gen_jacobi", "fixture": "g"}]}"#
                .to_string(),
        ),
        (
            "bad-form.json",
            r#"{"name": "m", "seed": 1, "fixtures": {"p": {"type": "plectic", "coordinates": ["x"], "omega": "dq", "n": 0}},
                "suites": []}"#
                .to_string(),
        ),
    ];
    for (name, text) in cases {
        let path = write(dir.path(), name, &text);
        let o = plectic(&["run", "--manifest", &path]);
        assert_eq!(o.status.code(), Some(2), "{name}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty());
    }
    let o = plectic(&["run", "--manifest", "/nonexistent/manifest.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = plectic(&["run", "--manifest", "bundled:nope"]);
    assert_eq!(o.status.code(), Some(2));
    let o = plectic(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    let o = plectic(&["run", "--manifest", "bundled:thesis-core", "--jobs", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out = |name: &str, jobs: &str| {
        let path = dir.path().join(name);
        let o = plectic(&["run", "--manifest", "bundled:thesis-core", "--jobs", jobs, "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        std::fs::read(path).unwrap()
    };
    let a = out("a.json", "4");
    let b = out("b.json", "4");
    let c = out("c.json", "1");
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn filter_and_seed() {
    let o = plectic(&["run", "--manifest", "bundled:thesis-core", "--filter", "section-*", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["seed"], 7);
    assert_eq!(r["summary"]["total"], 2);
    let o = plectic(&["run", "--manifest", "bundled:thesis-core", "--filter", "[", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn other_seeds_still_pass() {
    for seed in ["1", "99"] {
        let o = plectic(&["run", "--manifest", "bundled:thesis-core", "--filter", "*r3vol", "--seed", seed]);
        assert_eq!(o.status.code(), Some(0), "seed {seed}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn bracket_command() {
    let o = plectic(&["bracket", "--fixture", "r3vol", "--a", "x*dy", "--b", "y*dz"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["bracket"], "dy");
    let o = plectic(&["bracket", "--fixture", "r3vol", "--a", "x*", "--b", "y*dz"]);
    assert_eq!(o.status.code(), Some(2));
    let o = plectic(&["bracket", "--fixture", "nowhere", "--a", "dx", "--b", "dy"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn hamvf_command() {
    let o = plectic(&["hamvf", "--fixture", "r3vol", "--alpha", "x*dy"]);
    let v = json(&o);
    assert_eq!(v["hamiltonian"], true);
    assert_eq!(v["vector_field"], "-∂z");
}

#[test]
fn bs_command() {
    let o = plectic(&["bs", "--fixture", "sphere3", "--range", "0..2"]);
    assert_eq!(o.status.code(), Some(0));
    let radii: Vec<String> = json(&o)["leaves"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["radius"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(radii, ["1/2", "1", "3/2", "2"]);
    let o = plectic(&["bs", "--cocycle", "oscillator_polar", "--range", "0..2"]);
    let r2: Vec<String> = json(&o)["leaves"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["radius_squared"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(r2, ["2", "4"]);
    let o = plectic(&["bs", "--fixture", "sphere3", "--range", "2..1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = plectic(&["bs", "--fixture", "sphere3", "--range", "0-2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn holonomy_command() {
    let o = plectic(&["holonomy", "--cocycle", "oscillator_polar", "--radius", "sqrt(2)"]);
    let v = json(&o);
    assert_eq!(v["trivial"], true);
    assert!((v["exponent"].as_f64().unwrap() - 2.0 * std::f64::consts::PI).abs() < 1e-9);
    let o = plectic(&["holonomy", "--cocycle", "sphere_gerbe", "--radius-squared", "1/9"]);
    let v = json(&o);
    assert_eq!(v["trivial"], false);
    // ∫B = 4πR
    assert!((v["exponent"].as_f64().unwrap() - 4.0 * std::f64::consts::PI / 3.0).abs() < 1e-9);
    // a cochain without a global witness has no holonomy here
    let o = plectic(&["holonomy", "--cocycle", "two_patch_gerbe", "--radius", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn holonomy_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "osc.json",
        r#"{"n": 1, "chart": ["x", "y"], "forms": {"theta1": {"0": "(x*dy - y*dx)/2"}},
            "global_witness": "(x*dy - y*dx)/2"}"#,
    );
    let o = plectic(&["holonomy", "--cocycle", &path, "--radius", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["trivial"], true);
}

#[test]
fn rep_command() {
    let o = plectic(&["rep", "--state", "1:2,2:1"]);
    let v = json(&o);
    assert_eq!(v["dimension"], "7");
    assert_eq!(v["representation"], "2*Sym^1(C^2*) + Sym^2(C^2*)");
    let o = plectic(&["rep", "--state", "0:1"]);
    assert_ne!(o.status.code(), Some(0));
}
