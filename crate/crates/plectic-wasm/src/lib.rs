//! Three operations exported to the browser demo in `www/`. Every function
//! returns a JSON string, or an error message.

use plectic::deligne::{holonomy_of_form, sphere_gerbe};
use plectic::quantize::{bohr_sommerfeld, RadialFoliation};
use plectic::scalar::{parse_rational, rat};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn msg(e: plectic::Error) -> String {
    e.to_string()
}

/// `{α,β}` on a built-in structure.
#[wasm_bindgen]
pub fn bracket(fixture: &str, a: &str, b: &str) -> Result<String, String> {
    let p = plectic::fixtures::by_name(fixture).ok_or_else(|| format!("unknown fixture `{fixture}`"))?;
    let (ha, hb) = (p.ham_str(a).map_err(msg)?, p.ham_str(b).map_err(msg)?);
    let br = p.ham_bracket(&ha, &hb).map_err(msg)?;
    Ok(json!({
        "bracket": br.to_string(),
        "v_a": ha.vf.to_string(),
        "v_b": hb.vf.to_string(),
    })
    .to_string())
}

/// Bohr–Sommerfeld spheres of the gerbe `(1,0,B)` with radius in `(0, hi]`.
#[wasm_bindgen]
pub fn sphere_radii(hi: &str) -> Result<String, String> {
    let (_, spec) = sphere_gerbe();
    let v = bohr_sommerfeld(&spec, &RadialFoliation::spheres(rat(0, 1), parse_rational(hi).map_err(msg)?)).map_err(msg)?;
    Ok(serde_json::to_string(&v).expect("varieties serialize"))
}

/// Holonomy `exp(i∫)` of the oscillator (`dim = 2`) or sphere (`dim = 3`)
/// primitive on `samples` leaves with radius in `(0, r_max]`.
#[wasm_bindgen]
pub fn holonomy_sweep(dim: u32, r_max: f64, samples: u32) -> Result<String, String> {
    if !(r_max > 0.0 && r_max <= 100.0) || samples == 0 || samples > 2000 {
        return Err("need 0 < r_max ≤ 100 and 1 ≤ samples ≤ 2000".into());
    }
    let (spec, fol) = match dim {
        2 => (
            plectic::deligne::oscillator_cartesian().1,
            RadialFoliation::circles(rat(0, 1), rat(1, 1)),
        ),
        3 => (sphere_gerbe().1, RadialFoliation::spheres(rat(0, 1), rat(1, 1))),
        _ => return Err("dim is 2 (oscillator) or 3 (sphere)".into()),
    };
    let theta = spec.witness.as_ref().expect("built-in cocycles carry a witness");
    let mut points = Vec::with_capacity(samples as usize);
    for i in 1..=samples {
        // radii on a grid of 1/1000 keep the leaves exact
        let milli = ((r_max * i as f64 / samples as f64) * 1000.0).round().max(1.0) as i64;
        let r = rat(milli, 1000);
        let h = holonomy_of_form(theta, &fol.leaf(&r * &r, dim as usize)).map_err(msg)?;
        points.push(json!({"r": milli as f64 / 1000.0, "exponent": h.exponent, "re": h.re, "im": h.im}));
    }
    Ok(serde_json::Value::Array(points).to_string())
}
