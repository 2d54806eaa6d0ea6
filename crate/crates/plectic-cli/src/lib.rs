//! Manifest-driven verification runs and thin command wrappers over `plectic`.

pub mod cases;
pub mod commands;
pub mod manifest;

use rayon::prelude::*;
use serde::Serialize;

pub use manifest::Manifest;

pub const SCHEMA: &str = "plectic-report/1";

#[derive(Debug)]
pub enum CliError {
    /// Malformed input: unreadable files, bad JSON, dangling references.
    Input(String),
    Module(plectic::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => f.write_str(m),
            CliError::Module(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<plectic::Error> for CliError {
    fn from(e: plectic::Error) -> Self {
        CliError::Module(e)
    }
}

impl CliError {
    /// 2 for anything the user typed wrong, 1 for a mathematical failure.
    pub fn exit_code(&self) -> i32 {
        use plectic::Error::*;
        match self {
            CliError::Input(_) => 2,
            CliError::Module(Syntax { .. } | UnknownIdentifier { .. } | BadExponent { .. } | InvalidChart(_)) => 2,
            CliError::Module(_) => 1,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub identity: String,
    pub residual: String,
    pub error_bound: Option<f64>,
    pub tolerance: Option<f64>,
    pub pass: bool,
    pub details: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub manifest: String,
    pub seed: u64,
    pub cases: Vec<CaseReport>,
    pub summary: Summary,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn case(&self, id: &str) -> Option<&CaseReport> {
        self.cases.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Overrides the manifest seed.
    pub seed: Option<u64>,
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
    /// Glob over case ids.
    pub filter: Option<String>,
}

/// Runs every selected case. Output order is by case id, whatever the
/// scheduling.
pub fn run(m: &Manifest, opts: &RunOptions) -> Result<Report, CliError> {
    let seed = opts.seed.unwrap_or(m.seed);
    let pattern = opts
        .filter
        .as_deref()
        .map(glob::Pattern::new)
        .transpose()
        .map_err(|e| CliError::Input(format!("--filter: {e}")))?;
    let selected: Vec<_> = m
        .cases
        .iter()
        .filter(|(c, _)| pattern.as_ref().map_or(true, |p| p.matches(&c.id)))
        .collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = opts.jobs {
        if j == 0 {
            return Err(CliError::Input("--jobs must be at least 1".into()));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| CliError::Input(format!("thread pool: {e}")))?;
    let mut cases: Vec<CaseReport> = pool.install(|| {
        selected
            .par_iter()
            .map(|(c, identity)| {
                let o = cases::run_case(m, c, *identity, seed);
                CaseReport {
                    id: c.id.clone(),
                    identity: identity.name().into(),
                    residual: o.residual,
                    error_bound: o.error_bound,
                    tolerance: o.tolerance,
                    pass: o.pass,
                    details: o.details,
                }
            })
            .collect()
    });
    cases.sort_by(|a, b| a.id.cmp(&b.id));
    let passed = cases.iter().filter(|c| c.pass).count();
    Ok(Report {
        schema: SCHEMA,
        tool_version: env!("CARGO_PKG_VERSION"),
        manifest: m.name.clone(),
        seed,
        summary: Summary {
            total: cases.len(),
            passed,
            failed: cases.len() - passed,
        },
        cases,
    })
}

/// Reads `bundled:<name>` or a file path.
pub fn load_manifest(source: &str) -> Result<Manifest, CliError> {
    let text = match source.strip_prefix("bundled:") {
        Some(name) => manifest::bundled(name)
            .ok_or_else(|| CliError::Input(format!("no bundled manifest `{name}`")))?
            .to_string(),
        None => std::fs::read_to_string(source).map_err(|e| CliError::Input(format!("{source}: {e}")))?,
    };
    Manifest::parse(&text)
}
