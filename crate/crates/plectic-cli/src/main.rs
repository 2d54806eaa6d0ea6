use std::io::{IsTerminal, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use plectic_cli::{commands, load_manifest, run, CliError, RunOptions};

#[derive(Parser)]
#[command(name = "plectic", version, about = "Exact verification of n-plectic geometry identities")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every case of a manifest and write a JSON report.
    Run {
        /// A manifest file, or `bundled:thesis-core` / `bundled:negative-controls`.
        #[arg(long)]
        manifest: String,
        /// Report destination; standard output when absent.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Overrides the manifest seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Glob over case ids.
        #[arg(long)]
        filter: Option<String>,
    },
    /// The Hamiltonian bracket {a,b}.
    Bracket {
        #[arg(long)]
        fixture: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// The Hamiltonian vector field of a form.
    Hamvf {
        #[arg(long)]
        fixture: String,
        #[arg(long)]
        alpha: String,
    },
    /// Holonomy over the leaf of a given radius.
    Holonomy {
        /// Built-in cocycle name or cocycle JSON file.
        #[arg(long)]
        cocycle: String,
        /// Radius as `p/q` or `sqrt(p/q)`.
        #[arg(long, conflicts_with = "radius_squared", required_unless_present = "radius_squared")]
        radius: Option<String>,
        #[arg(long)]
        radius_squared: Option<String>,
    },
    /// Bohr–Sommerfeld leaves with radius in (LO, HI].
    Bs {
        #[arg(long, conflicts_with = "cocycle", required_unless_present = "cocycle")]
        fixture: Option<String>,
        #[arg(long)]
        cocycle: Option<String>,
        /// `LO..HI`
        #[arg(long)]
        range: String,
    },
    /// Representation and dimension of a quantum state `n:k,...`.
    Rep {
        #[arg(long)]
        state: String,
    },
}

fn diagnostic(msg: &str) {
    let styled = std::env::var_os("PLECTIC_NO_COLOR").is_none() && std::io::stderr().is_terminal();
    if styled {
        eprintln!("\x1b[1;31merror:\x1b[0m {msg}");
    } else {
        eprintln!("error: {msg}");
    }
}

fn emit(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn main_inner(cli: Cli) -> Result<i32, CliError> {
    match cli.cmd {
        Cmd::Run {
            manifest,
            out,
            seed,
            jobs,
            filter,
        } => {
            let m = load_manifest(&manifest)?;
            let report = run(&m, &RunOptions { seed, jobs, filter })?;
            let text = report.to_json();
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
                None => std::io::stdout()
                    .write_all(text.as_bytes())
                    .map_err(|e| CliError::Input(format!("stdout: {e}")))?,
            }
            for c in report.cases.iter().filter(|c| !c.pass) {
                diagnostic(&format!("case `{}` ({}) failed: {}", c.id, c.identity, c.residual));
            }
            Ok(if report.all_pass() { 0 } else { 1 })
        }
        Cmd::Bracket { fixture, a, b } => commands::bracket(&fixture, &a, &b).map(|v| {
            emit(&v);
            0
        }),
        Cmd::Hamvf { fixture, alpha } => commands::hamvf(&fixture, &alpha).map(|v| {
            emit(&v);
            0
        }),
        Cmd::Holonomy {
            cocycle,
            radius,
            radius_squared,
        } => {
            let v = match (radius, radius_squared) {
                (Some(r), _) => commands::holonomy_at(&cocycle, &r, false)?,
                (None, Some(r2)) => commands::holonomy_at(&cocycle, &r2, true)?,
                (None, None) => unreachable!("clap requires one"),
            };
            emit(&v);
            Ok(0)
        }
        Cmd::Bs { fixture, cocycle, range } => {
            emit(&commands::bs(fixture.as_deref(), cocycle.as_deref(), &range)?);
            Ok(0)
        }
        Cmd::Rep { state } => {
            emit(&commands::rep(&state)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match main_inner(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            diagnostic(&e.to_string());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
