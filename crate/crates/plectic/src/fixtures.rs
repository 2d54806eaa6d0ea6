//! Built-in charts and plectic structures.

use std::sync::Arc;

use rand::Rng;

use crate::cartan::{Form, MultiVector};
use crate::error::Result;
use crate::plectic::{increasing_tuples, HamiltonianPair, PlecticStructure};
use crate::random::{random_polynomial_expr, random_rational_expr, CaseRng, PolyShape};
use crate::scalar::{int, rat, Chart, Rational};

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &["r3vol", "sphere3", "hk4", "dpdq6", "osc2", "osc2_polar"];

fn chart(names: &[&str]) -> Arc<Chart> {
    Arc::new(Chart::new(names).expect("built-in chart"))
}

fn points(raw: &[&[(i64, i64)]]) -> Vec<Vec<Rational>> {
    raw.iter()
        .map(|p| p.iter().map(|&(n, d)| rat(n, d)).collect())
        .collect()
}

fn r3_samples() -> Vec<Vec<Rational>> {
    points(&[
        &[(1, 1), (1, 1), (1, 1)],
        &[(1, 2), (-2, 1), (3, 1)],
        &[(-1, 3), (0, 1), (2, 1)],
    ])
}

pub fn r3_chart() -> Arc<Chart> {
    chart(&["x", "y", "z"])
}

/// ℝ³ with its volume form, a 2-plectic manifold.
pub fn r3vol() -> PlecticStructure {
    let c = r3_chart();
    let omega = Form::parse("dx*dy*dz", &c).unwrap();
    PlecticStructure::new(&c, omega, 2, &r3_samples()).expect("volume form is 2-plectic")
}

pub fn punctured_r3_chart() -> Arc<Chart> {
    Arc::new(
        Chart::new(&["x", "y", "z"])
            .unwrap()
            .with_excluded_locus("x^2+y^2+z^2=0"),
    )
}

/// ℝ³∖{0} with `ω = r⁻² dx∧dy∧dz`.
pub fn sphere3() -> PlecticStructure {
    let c = punctured_r3_chart();
    let omega = Form::parse("1/(x^2+y^2+z^2)*dx*dy*dz", &c).unwrap();
    PlecticStructure::new(&c, omega, 2, &r3_samples()).expect("r⁻² vol is 2-plectic")
}

/// The primitive `B = r⁻²(x dy∧dz + y dz∧dx + z dx∧dy)` of the sphere form.
pub fn sphere3_b(c: &Arc<Chart>) -> Form {
    Form::parse("(x*dy*dz + y*dz*dx + z*dx*dy)/(x^2+y^2+z^2)", c).unwrap()
}

pub fn r4_chart() -> Arc<Chart> {
    chart(&["x0", "x1", "x2", "x3"])
}

/// The flat hyper-Kähler triple on ℝ⁴.
pub fn hk_thetas(c: &Arc<Chart>) -> [Form; 3] {
    [
        Form::parse("dx0*dx1 + dx2*dx3", c).unwrap(),
        Form::parse("dx0*dx2 - dx1*dx3", c).unwrap(),
        Form::parse("dx0*dx3 + dx1*dx2", c).unwrap(),
    ]
}

/// ℝ⁴ with `ω = θ₁∧θ₁ + θ₂∧θ₂ + θ₃∧θ₃`, a 3-plectic manifold.
pub fn hk4() -> PlecticStructure {
    let c = r4_chart();
    let [t1, t2, t3] = hk_thetas(&c);
    let omega = t1
        .wedge(&t1)
        .unwrap()
        .add(&t2.wedge(&t2).unwrap())
        .add(&t3.wedge(&t3).unwrap());
    let samples = points(&[&[(1, 1), (0, 1), (2, 1), (-1, 1)], &[(1, 2), (1, 3), (1, 5), (1, 7)]]);
    PlecticStructure::new(&c, omega, 3, &samples).expect("hyper-Kähler 4-form is 3-plectic")
}

/// `Λ²T*ℝ³` with `ω = dp_I ∧ dq^I`, a 2-plectic manifold of dimension 6.
pub fn dpdq6() -> PlecticStructure {
    let c = chart(&["q1", "q2", "q3", "p12", "p13", "p23"]);
    let omega = Form::parse("dp12*dq1*dq2 + dp13*dq1*dq3 + dp23*dq2*dq3", &c).unwrap();
    let samples = points(&[&[(0, 1); 6], &[(1, 1), (2, 1), (3, 1), (-1, 1), (1, 2), (5, 1)]]);
    PlecticStructure::new(&c, omega, 2, &samples).expect("dp_I∧dq^I is 2-plectic")
}

pub fn r2_chart() -> Arc<Chart> {
    chart(&["x", "y"])
}

/// The plane with `dx∧dy` (the harmonic oscillator phase space).
pub fn osc2() -> PlecticStructure {
    let c = r2_chart();
    let omega = Form::parse("dx*dy", &c).unwrap();
    let samples = points(&[&[(0, 1), (0, 1)], &[(1, 1), (-3, 2)]]);
    PlecticStructure::new(&c, omega, 1, &samples).expect("dx∧dy is symplectic")
}

/// Polar coordinates `(r, t)` on the punctured plane.
pub fn polar_chart() -> Arc<Chart> {
    Arc::new(Chart::new(&["r", "t"]).unwrap().with_excluded_locus("r<=0"))
}

/// The punctured plane with `ω = r dr∧dt` in polar coordinates.
pub fn osc2_polar() -> PlecticStructure {
    let c = polar_chart();
    let omega = Form::parse("r*dr*dt", &c).unwrap();
    let samples = points(&[&[(1, 1), (0, 1)], &[(3, 2), (1, 3)]]);
    PlecticStructure::new(&c, omega, 1, &samples).expect("r dr∧dt is symplectic for r > 0")
}

/// `dx∧dy∧dz` on a four-dimensional chart: closed but degenerate.
pub fn degenerate4() -> (Arc<Chart>, Form) {
    let c = chart(&["x", "y", "z", "w"]);
    let omega = Form::parse("dx*dy*dz", &c).unwrap();
    (c, omega)
}

pub fn by_name(name: &str) -> Option<PlecticStructure> {
    Some(match name {
        "r3vol" => r3vol(),
        "sphere3" => sphere3(),
        "hk4" => hk4(),
        "dpdq6" => dpdq6(),
        "osc2" => osc2(),
        "osc2_polar" => osc2_polar(),
        _ => return None,
    })
}

/// A random form of the given degree with at most `max_terms` terms and
/// polynomial coefficients.
pub fn random_form(rng: &mut CaseRng, chart: &Arc<Chart>, degree: usize, max_terms: usize, shape: PolyShape) -> Form {
    random_form_with(rng, chart, degree, max_terms, |r| {
        random_polynomial_expr(r, chart.dim(), shape)
    })
}

/// Like [`random_form`] but with rational-function coefficients whose
/// denominators never vanish on real points.
pub fn random_rational_form(
    rng: &mut CaseRng,
    chart: &Arc<Chart>,
    degree: usize,
    max_terms: usize,
    shape: PolyShape,
) -> Form {
    random_form_with(rng, chart, degree, max_terms, |r| {
        random_rational_expr(r, chart.dim(), shape)
    })
}

fn random_form_with(
    rng: &mut CaseRng,
    chart: &Arc<Chart>,
    degree: usize,
    max_terms: usize,
    mut coeff: impl FnMut(&mut CaseRng) -> crate::ScalarExpr,
) -> Form {
    let tuples = increasing_tuples(chart.dim(), degree);
    let mut f = Form::zero(chart, degree);
    if tuples.is_empty() {
        return f;
    }
    let k = rng.gen_range(1..=max_terms.max(1));
    for _ in 0..k {
        let idx = tuples[rng.gen_range(0..tuples.len())].clone();
        let c = coeff(rng);
        f = f.add(&Form::from_terms(chart, degree, [(idx, c)]).unwrap());
    }
    f
}

/// A random multivector field of the given degree.
pub fn random_multivector(
    rng: &mut CaseRng,
    chart: &Arc<Chart>,
    degree: usize,
    max_terms: usize,
    shape: PolyShape,
) -> MultiVector {
    let tuples = increasing_tuples(chart.dim(), degree);
    let mut v = MultiVector::zero(chart, degree);
    if tuples.is_empty() {
        return v;
    }
    let k = rng.gen_range(1..=max_terms.max(1));
    for _ in 0..k {
        let idx = tuples[rng.gen_range(0..tuples.len())].clone();
        let c = random_polynomial_expr(rng, chart.dim(), shape);
        v = v.add(&MultiVector::from_terms(chart, degree, [(idx, c)]).unwrap());
    }
    v
}

/// A random Hamiltonian pair; on the shipped fixtures with `dim = n+1`
/// every `(n−1)`-form is Hamiltonian, elsewhere draws are retried.
pub fn random_hamiltonian(rng: &mut CaseRng, p: &PlecticStructure, shape: PolyShape) -> Result<HamiltonianPair> {
    for _ in 0..64 {
        let alpha = random_form(rng, p.chart(), p.n() - 1, 3, shape);
        if let Some(pair) = p.hamiltonian_vf(&alpha)? {
            return Ok(pair);
        }
    }
    Ok(HamiltonianPair::zero(p))
}

/// A random rational point avoiding the origin.
pub fn random_point(rng: &mut CaseRng, dim: usize) -> Vec<Rational> {
    loop {
        let p: Vec<Rational> = (0..dim)
            .map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
            .collect();
        if p.iter().any(|q| q != &int(0)) {
            return p;
        }
    }
}

/// A random element of degree `degree` of the Lie n-algebra complex.
pub fn random_graded(
    rng: &mut CaseRng,
    p: &PlecticStructure,
    degree: usize,
    shape: PolyShape,
) -> Result<crate::linfty::GradedElement> {
    use crate::linfty::GradedElement;
    if degree == 0 {
        Ok(GradedElement::from_pair(random_hamiltonian(rng, p, shape)?))
    } else {
        GradedElement::from_form(p, random_form(rng, p.chart(), p.n() - 1 - degree, 2, shape))
    }
}

/// A random section `v + α` of `TM ⊕ T*M`.
pub fn random_section(rng: &mut CaseRng, p: &PlecticStructure, shape: PolyShape) -> crate::courant::CourantSection {
    crate::courant::CourantSection::new(
        random_multivector(rng, p.chart(), 1, 2, shape),
        random_form(rng, p.chart(), 1, 2, shape),
    )
    .expect("components share the chart")
}

/// A random Deligne cochain of level `n` and total degree `t`.
pub fn random_deligne_cochain(
    rng: &mut CaseRng,
    n: usize,
    t: usize,
    chart: &Arc<Chart>,
    cover: &Arc<crate::deligne::Cover>,
    shape: PolyShape,
) -> Result<crate::deligne::DeligneCochain> {
    use crate::deligne::{DeligneCochain, Phase};
    let mut c = DeligneCochain::zero(n, t, chart, cover);
    let tuples: Vec<Vec<usize>> = cover.tuples(t).cloned().collect();
    for tu in &tuples {
        let h = Phase {
            expr: random_polynomial_expr(rng, chart.dim(), shape),
            pi: rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)),
        };
        c.set_phase(tu, h)?;
    }
    for k in 1..=n.min(t) {
        let tuples: Vec<Vec<usize>> = cover.tuples(t - k).cloned().collect();
        for tu in &tuples {
            c.set_form(k, tu, random_form(rng, chart, k, 2, shape))?;
        }
    }
    Ok(c)
}
