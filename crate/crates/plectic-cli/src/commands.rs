//! One-shot commands. Each returns a JSON value for standard output.

use plectic::deligne::{holonomy, parse_radius_sq, CocycleSpec, Embedding};
use plectic::quantize::{bohr_sommerfeld, radius_text, QuantumState, RadialFoliation};
use plectic::scalar::parse_rational;
use plectic::PlecticStructure;
use serde_json::{json, Value};

use crate::manifest::builtin_cocycle;
use crate::CliError;

fn plectic_fixture(name: &str) -> Result<PlecticStructure, CliError> {
    plectic::fixtures::by_name(name).ok_or_else(|| {
        CliError::Input(format!(
            "unknown fixture `{name}` (one of {})",
            plectic::fixtures::NAMES.join(", ")
        ))
    })
}

/// `{α,β}` on a built-in structure.
pub fn bracket(fixture: &str, a: &str, b: &str) -> Result<Value, CliError> {
    let p = plectic_fixture(fixture)?;
    let (ha, hb) = (p.ham_str(a)?, p.ham_str(b)?);
    let br = p.ham_bracket(&ha, &hb)?;
    Ok(json!({"fixture": fixture, "a": a, "b": b, "bracket": br.to_string()}))
}

/// The Hamiltonian vector field of `α`, or `null` when there is none.
pub fn hamvf(fixture: &str, alpha: &str) -> Result<Value, CliError> {
    let p = plectic_fixture(fixture)?;
    let form = p.form(alpha)?;
    let vf = p.hamiltonian_vf(&form)?;
    Ok(json!({
        "fixture": fixture,
        "alpha": alpha,
        "hamiltonian": vf.is_some(),
        "vector_field": vf.map(|h| h.vf.to_string()),
    }))
}

/// A built-in cocycle name, or a path to a cocycle JSON file.
pub fn load_cocycle(source: &str) -> Result<CocycleSpec, CliError> {
    if let Some(c) = builtin_cocycle(source) {
        return Ok(c);
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| CliError::Input(format!("`{source}` is neither a built-in cocycle nor a readable file: {e}")))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{source}: {e}")))?;
    Ok(CocycleSpec::from_json(&v)?)
}

/// The radial foliation a cocycle's chart carries: polar circles on `(r,t)`,
/// Cartesian circles in the plane, spheres in space.
pub fn default_foliation(spec: &CocycleSpec, lo: plectic::Rational, hi: plectic::Rational) -> Result<RadialFoliation, CliError> {
    let chart = spec.cochain.chart();
    let names: Vec<&str> = chart.names().iter().map(String::as_str).collect();
    Ok(match names.len() {
        2 if names == ["r", "t"] => RadialFoliation::polar_circles(lo, hi),
        2 => RadialFoliation::circles(lo, hi),
        3 => RadialFoliation::spheres(lo, hi),
        d => return Err(CliError::Input(format!("no radial foliation on a {d}-dimensional chart"))),
    })
}

fn cocycle_for_fixture(fixture: &str) -> Result<CocycleSpec, CliError> {
    let name = match fixture {
        "sphere3" => "sphere_gerbe",
        "osc2" => "oscillator_cartesian",
        "osc2_polar" => "oscillator_polar",
        o => return Err(CliError::Input(format!("no prequantum cocycle for fixture `{o}`"))),
    };
    Ok(builtin_cocycle(name).expect("bundled"))
}

/// `exp(i∫θ)` over the leaf of the given radius.
pub fn holonomy_at(cocycle: &str, radius_sq: &str, squared: bool) -> Result<Value, CliError> {
    let spec = load_cocycle(cocycle)?;
    let r2 = if squared {
        parse_rational(radius_sq)?
    } else {
        parse_radius_sq(radius_sq)?
    };
    let fol = default_foliation(&spec, plectic::scalar::int(0), r2.clone())?;
    let leaf = fol.leaf(r2.clone(), spec.cochain.chart().dim());
    let h = holonomy(&spec, &leaf)?;
    Ok(json!({
        "cocycle": cocycle,
        "radius": radius_text(&r2),
        "radius_squared": r2.to_string(),
        "polar": fol.embedding == Embedding::Polar,
        "exponent": h.exponent,
        "error": h.error,
        "re": h.re,
        "im": h.im,
        "trivial": h.is_trivial(1e-9),
    }))
}

/// Parses `LO..HI`.
pub fn parse_range(s: &str) -> Result<(plectic::Rational, plectic::Rational), CliError> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| CliError::Input(format!("range `{s}` is not of the form LO..HI")))?;
    Ok((parse_rational(lo)?, parse_rational(hi)?))
}

/// Bohr–Sommerfeld leaves with radius in `(lo, hi]`.
pub fn bs(fixture: Option<&str>, cocycle: Option<&str>, range: &str) -> Result<Value, CliError> {
    let spec = match (fixture, cocycle) {
        (Some(f), None) => cocycle_for_fixture(f)?,
        (None, Some(c)) => load_cocycle(c)?,
        _ => return Err(CliError::Input("give exactly one of --fixture and --cocycle".into())),
    };
    let (lo, hi) = parse_range(range)?;
    let fol = default_foliation(&spec, lo, hi)?;
    let v = bohr_sommerfeld(&spec, &fol)?;
    Ok(serde_json::to_value(v).expect("varieties serialize"))
}

/// Representation and dimension of a state `n:k,…`.
pub fn rep(state: &str) -> Result<Value, CliError> {
    let s = QuantumState::parse(state)?;
    Ok(json!({
        "state": s.to_string(),
        "representation": s.to_rep(),
        "dimension": s.dimension().to_string(),
    }))
}
