use std::f64::consts::PI;

use plectic_wasm::{bracket, holonomy_sweep, sphere_radii};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn bracket_on_r3() {
    let v = parse(&bracket("r3vol", "x*dy", "y*dz").unwrap());
    assert_eq!(v["bracket"], "dy");
    assert!(bracket("r3vol", "x*", "dy").is_err());
    assert!(bracket("nowhere", "dx", "dy").is_err());
}

#[test]
fn sphere_sweep() {
    let v = parse(&sphere_radii("2").unwrap());
    let radii: Vec<&str> = v["leaves"].as_array().unwrap().iter().map(|l| l["radius"].as_str().unwrap()).collect();
    assert_eq!(radii, ["1/2", "1", "3/2", "2"]);
    assert!(sphere_radii("-1").is_err());
}

#[test]
fn holonomy_curves() {
    // the oscillator exponent is πR², the sphere exponent 4πR
    let osc = parse(&holonomy_sweep(2, 2.0, 4).unwrap());
    for p in osc.as_array().unwrap() {
        let r = p["r"].as_f64().unwrap();
        assert!((p["exponent"].as_f64().unwrap() - PI * r * r).abs() < 1e-9);
    }
    let sph = parse(&holonomy_sweep(3, 1.0, 2).unwrap());
    let last = &sph.as_array().unwrap()[1];
    assert!((last["exponent"].as_f64().unwrap() - 4.0 * PI).abs() < 1e-9);
    assert!(holonomy_sweep(4, 1.0, 2).is_err());
    assert!(holonomy_sweep(2, -1.0, 2).is_err());
}
