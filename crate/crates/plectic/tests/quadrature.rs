use std::f64::consts::PI;

use plectic::quadrature::{integrate, integrate_2d};
use proptest::prelude::*;

#[test]
fn known_integrals() {
    let q = integrate(|x| x.sin(), 0.0, PI, 1e-12);
    assert!((q.value - 2.0).abs() < 1e-12, "{}", q.value);
    let q = integrate(|x| (-x * x).exp(), -8.0, 8.0, 1e-12);
    assert!((q.value - PI.sqrt()).abs() < 1e-12);
    // a sharp peak forces subdivision
    let q = integrate(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-10);
    let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
    assert!((q.value - exact).abs() < 1e-8 * exact, "{} vs {exact}", q.value);
    assert!(q.error <= 1e-10 * exact.max(1.0));
}

#[test]
fn reversed_and_empty_intervals() {
    let fwd = integrate(|x| x * x, 0.0, 3.0, 1e-12).value;
    let back = integrate(|x| x * x, 3.0, 0.0, 1e-12).value;
    assert!((fwd - 9.0).abs() < 1e-12);
    assert!((fwd + back).abs() < 1e-12);
    assert_eq!(integrate(|x| x, 1.0, 1.0, 1e-12).value, 0.0);
}

#[test]
fn sphere_area() {
    // ∫∫ sin φ dφ dt over [0,π]×[0,2π]
    let q = integrate_2d(|phi, _t| phi.sin(), (0.0, PI), (0.0, 2.0 * PI), 1e-11);
    assert!((q.value - 4.0 * PI).abs() < 1e-10);
}

proptest! {
    #[test]
    fn polynomials_are_exact(c in proptest::collection::vec(-5.0f64..5.0, 1..8), b in 0.1f64..3.0) {
        // Kronrod has degree 22, so one panel integrates these exactly
        let f = |x: f64| c.iter().rev().fold(0.0, |acc, k| acc * x + k);
        let exact: f64 = c.iter().enumerate().map(|(i, k)| k * b.powi(i as i32 + 1) / (i as f64 + 1.0)).sum();
        let q = integrate(f, 0.0, b, 1e-12);
        prop_assert!((q.value - exact).abs() < 1e-9 * exact.abs().max(1.0));
    }
}
