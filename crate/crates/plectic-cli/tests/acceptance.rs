//! One line per acceptance criterion. Runs the bundled manifests through the
//! library and the negative controls through the binary as well.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use plectic_cli::{load_manifest, run, CaseReport, Report, RunOptions};
use serde_json::Value;

/// Quadrature tolerance for Bohr–Sommerfeld leaves.
const LEAF_TOL: f64 = 1e-9;
/// Tolerance of the numeric path identity.
const PATH_TOL: f64 = 1e-9;
const GEN_JACOBI_BUDGET: Duration = Duration::from_secs(60);
const MIN_TUPLES: u64 = 20;

struct Check {
    ok: bool,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check { ok: true, notes: Vec::new() }
    }

    fn require(&mut self, cond: bool, note: impl Into<String>) {
        if !cond {
            self.ok = false;
            self.notes.push(note.into());
        }
    }

    fn case<'a>(&mut self, r: &'a Report, id: &str) -> Option<&'a CaseReport> {
        let c = r.case(id);
        match c {
            None => self.require(false, format!("case `{id}` missing")),
            Some(c) => self.require(c.pass, format!("`{id}`: {}", c.residual)),
        }
        c
    }

    fn cases(&mut self, r: &Report, ids: &[&str]) {
        for id in ids {
            self.case(r, id);
        }
    }

    fn numeric(&mut self, r: &Report, id: &str, tol: f64) {
        if let Some(c) = self.case(r, id) {
            let bound = c.error_bound.unwrap_or(f64::INFINITY);
            self.require(bound <= tol, format!("`{id}`: error {bound:e} above {tol:e}"));
        }
    }

    fn trials(&mut self, r: &Report, id: &str, key: &str, min: u64) {
        let n = r.case(id).and_then(|c| c.details.get(key)).and_then(Value::as_u64).unwrap_or(0);
        self.require(n >= min, format!("`{id}`: {key} = {n} < {min}"));
    }
}

fn detail<'a>(r: &'a Report, id: &str, key: &str) -> Option<&'a Value> {
    r.case(id).and_then(|c| c.details.get(key))
}

fn timed_run(source: &str, filter: Option<&str>) -> (Report, Duration) {
    let m = load_manifest(source).expect("bundled manifests parse");
    let t = Instant::now();
    let r = run(
        &m,
        &RunOptions {
            filter: filter.map(str::to_string),
            ..Default::default()
        },
    )
    .expect("bundled manifests run");
    (r, t.elapsed())
}

fn main() -> ExitCode {
    let (gj, gj_time) = timed_run("bundled:thesis-core", Some("gen-jacobi-*"));
    let (core, _) = timed_run("bundled:thesis-core", None);
    let (neg, _) = timed_run("bundled:negative-controls", None);

    let mut lines: Vec<(u32, &str, Check)> = Vec::new();

    let mut c = Check::new();
    for (id, n) in [("gen-jacobi-r3vol", 2), ("gen-jacobi-sphere3", 2), ("gen-jacobi-hk4", 3)] {
        c.case(&gj, id);
        c.trials(&gj, id, "tuples_per_m", MIN_TUPLES);
        c.trials(&gj, id, "m_max", n + 2);
    }
    c.require(gj_time < GEN_JACOBI_BUDGET, format!("took {gj_time:?}"));
    lines.push((1, "generalized Jacobi identity, n = 2 and 3", c));

    let mut c = Check::new();
    c.cases(&core, &["jacobi-defect-r3vol", "jacobi-defect-sphere3"]);
    c.trials(&core, "jacobi-defect-r3vol", "trials", MIN_TUPLES);
    let explicit = detail(&core, "jacobi-defect-r3vol", "explicit_defect");
    c.require(explicit == Some(&Value::from("2*dx")), format!("explicit defect {explicit:?}"));
    lines.push((2, "Jacobi defect equals -d iota(v1^v2^v3) omega", c));

    let mut c = Check::new();
    c.cases(&core, &["big-identity-r3vol", "big-identity-hk4"]);
    let ms = detail(&core, "big-identity-hk4", "m");
    c.require(ms == Some(&serde_json::json!([2, 3, 4])), format!("m = {ms:?}"));
    lines.push((3, "multi-contraction identity, m = 2, 3, 4", c));

    let mut c = Check::new();
    for id in ["courant-axioms-r3vol", "courant-axioms-sphere3"] {
        c.case(&core, id);
        c.trials(&core, id, "trials", MIN_TUPLES);
        let axioms = detail(&core, id, "axioms").and_then(Value::as_array).map_or(0, Vec::len);
        c.require(axioms == 11, format!("`{id}`: {axioms} axiom residuals"));
    }
    lines.push((4, "Courant and Dorfman axioms, pairing of split sections", c));

    let mut c = Check::new();
    c.case(&core, "courant-embedding-r3vol");
    c.trials(&core, "courant-embedding-r3vol", "trials", MIN_TUPLES);
    c.trials(&core, "courant-embedding-r3vol", "splitting_trials", 50);
    lines.push((5, "observables embed into the Courant Lie 2-algebra", c));

    let mut c = Check::new();
    c.case(&core, "string-lie2-su2");
    let levels = detail(&core, "string-lie2-su2", "levels").and_then(Value::as_array).cloned().unwrap_or_default();
    let ks: Vec<&str> = levels.iter().filter_map(|l| l["k"].as_str()).collect();
    c.require(ks == ["1", "2", "-3"], format!("levels {ks:?}"));
    c.require(
        levels.iter().all(|l| l["jacobiator_sign"].is_i64()),
        "Jacobiator sign not recorded",
    );
    lines.push((6, "string Lie 2-algebra of su(2), k = 1, 2, -3", c));

    let mut c = Check::new();
    c.cases(
        &core,
        &[
            "deligne-d-squared",
            "deligne-cocycle-oscillator",
            "deligne-cocycle-oscillator-reversed",
            "deligne-cocycle-sphere",
            "deligne-cocycle-two-patch",
        ],
    );
    lines.push((7, "Deligne d^2 = 0, cocycles and curvatures", c));

    let mut c = Check::new();
    c.numeric(&core, "bs-oscillator-cartesian", LEAF_TOL);
    c.numeric(&core, "bs-oscillator-polar", LEAF_TOL);
    c.cases(&core, &["section-phase-integer", "section-phase-half"]);
    lines.push((8, "oscillator Bohr-Sommerfeld leaves R^2 = 2n, n = 1..8", c));

    let mut c = Check::new();
    c.numeric(&core, "bs-sphere", LEAF_TOL);
    lines.push((9, "sphere Bohr-Sommerfeld radii 1/2, 1, ..., 3", c));

    let mut c = Check::new();
    c.case(&core, "rep-dimension");
    c.trials(&core, "rep-dimension", "max_n", 10);
    lines.push((10, "representation dimensions against monomial counts", c));

    let mut c = Check::new();
    for id in ["dg-leibniz-r3vol", "dg-leibniz-hk4", "wl2a-hemi-r3vol", "wl2a-semi-r3vol", "weak-iso-r3vol"] {
        c.case(&core, id);
        c.trials(&core, id, "trials", MIN_TUPLES);
    }
    lines.push((11, "dg Leibniz algebra, weak Lie 2-algebras and their isomorphism", c));

    let mut c = Check::new();
    c.numeric(&core, "central-extension-r3vol", PATH_TOL);
    lines.push((12, "central extension cocycle and path identity", c));

    let mut c = Check::new();
    for id in ["corrupt-phi", "corrupt-cochain", "degenerate-r4"] {
        let flagged = neg.case(id).map_or(false, |k| !k.pass && !k.residual.starts_with("error"));
        c.require(flagged, format!("`{id}` not flagged"));
    }
    let status = Command::new(env!("CARGO_BIN_EXE_plectic"))
        .args(["run", "--manifest", "bundled:negative-controls", "--out"])
        .arg(std::env::temp_dir().join(format!("plectic-negative-{}.json", std::process::id())))
        .env("PLECTIC_NO_COLOR", "1")
        .stderr(std::process::Stdio::null())
        .status()
        .expect("binary runs");
    c.require(status.code() == Some(1), format!("exit status {status}"));
    lines.push((13, "negative controls are flagged, exit 1", c));

    let mut all = core.all_pass();
    for (n, what, c) in &lines {
        let verdict = if c.ok { "PASS" } else { "FAIL" };
        let notes = if c.notes.is_empty() {
            String::new()
        } else {
            format!(" [{}]", c.notes.join("; "))
        };
        println!("criterion {n:2}: {verdict}  {what}{notes}");
        all &= c.ok;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
