//! Adaptive Gauss–Kronrod quadrature (7-point Gauss, 15-point Kronrod).
//!
//! The integrand is split by bisection until each piece's Kronrod/Gauss
//! discrepancy meets its share of the tolerance.

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Estimate and error bound of one Kronrod panel on `[a, b]`.
fn kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += WGK[j] * s;
        // odd Kronrod nodes are the Gauss nodes
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Result of an adaptive integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quad {
    pub value: f64,
    pub error: f64,
    pub panels: usize,
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Quad {
    const MAX_PANELS: usize = 4096;
    let (v, e) = kronrod(&mut f, a, b);
    let mut panels = vec![(a, b, v, e)];
    let mut done = 1;
    loop {
        let (total, err): (f64, f64) = panels
            .iter()
            .fold((0.0, 0.0), |(s, t), p| (s + p.2, t + p.3));
        if err <= tol || done >= MAX_PANELS {
            return Quad {
                value: total,
                error: err,
                panels: done,
            };
        }
        // bisect the worst panel
        let (i, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .unwrap();
        let (pa, pb, _, _) = panels.swap_remove(i);
        let m = 0.5 * (pa + pb);
        let (v1, e1) = kronrod(&mut f, pa, m);
        let (v2, e2) = kronrod(&mut f, m, pb);
        panels.push((pa, m, v1, e1));
        panels.push((m, pb, v2, e2));
        done += 1;
    }
}

/// Iterated integral over `[a,b] × [c,d]`; the inner tolerance is tightened
/// so that inner errors cannot dominate the outer estimate.
pub fn integrate_2d<F: Fn(f64, f64) -> f64>(f: F, (a, b): (f64, f64), (c, d): (f64, f64), tol: f64) -> Quad {
    let inner_tol = tol / (10.0 * (b - a).abs().max(1.0));
    let mut inner_err: f64 = 0.0;
    let mut q = integrate(
        |u| {
            let r = integrate(|v| f(u, v), c, d, inner_tol);
            inner_err = inner_err.max(r.error);
            r.value
        },
        a,
        b,
        tol / 2.0,
    );
    q.error += inner_err * (b - a).abs();
    q
}
