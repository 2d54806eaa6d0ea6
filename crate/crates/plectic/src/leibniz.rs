//! The dg Leibniz algebra `⟦α,β⟧ = L_{v_α}β` of an n-plectic manifold and,
//! for `n = 2`, its comparison with the semistrict Lie 2-algebra.

use serde::Serialize;

use crate::cartan::{interior, lie_derivative, Form, MultiVector};
use crate::error::{Error, Result};
use crate::linfty::{
    check_morphism, check_weak_lie2, GradedElement, HomotopyDirection, Morphism2, Residual,
    SemistrictLie2, WeakLie2,
};
use crate::plectic::{HamiltonianPair, PlecticStructure};

/// `⟦a,b⟧`: `L_{v_a}b` when `deg a = 0`, zero otherwise. `None` stands for
/// the zero of a degree above `n−1`.
pub fn dg_bracket(p: &PlecticStructure, a: &GradedElement, b: &GradedElement) -> Result<Option<GradedElement>> {
    let deg = a.degree() + b.degree();
    if deg + 1 > p.n() {
        return Ok(None);
    }
    let Some(va) = a.vf().filter(|_| a.degree() == 0) else {
        return Ok(Some(GradedElement::zero(p, deg)));
    };
    let form = lie_derivative(va, b.form())?;
    // zero forms do not keep their degree
    if form.is_zero() && b.vf().is_none() {
        return Ok(Some(GradedElement::zero(p, deg)));
    }
    Ok(Some(match b.vf() {
        // v of ⟦α,β⟧ is [v_α, v_β]
        Some(vb) => GradedElement::from_pair(HamiltonianPair::new_unchecked(form, va.vf_bracket(vb)?)),
        None => GradedElement::from_form(p, form)?,
    }))
}

/// The bracket with a Hamiltonian first argument.
pub fn leibniz_bracket(p: &PlecticStructure, a: &HamiltonianPair, b: &GradedElement) -> Result<GradedElement> {
    Ok(dg_bracket(p, &GradedElement::from_pair(a.clone()), b)?
        .unwrap_or_else(|| unreachable!("a degree-0 first argument keeps the degree of b")))
}

/// `δa = da` in positive degree, zero on `L₀`.
pub fn delta(p: &PlecticStructure, a: &GradedElement) -> Option<GradedElement> {
    if a.degree() == 0 {
        return None;
    }
    let da = a.form().d();
    Some(if a.degree() == 1 {
        GradedElement::from_pair(HamiltonianPair::new_unchecked(da, MultiVector::zero(p.chart(), 1)))
    } else {
        GradedElement::from_form(p, da).expect("d raises form degree within the complex")
    })
}

fn bracket_opt(p: &PlecticStructure, a: Option<&GradedElement>, b: Option<&GradedElement>) -> Result<Option<GradedElement>> {
    match (a, b) {
        (Some(a), Some(b)) => dg_bracket(p, a, b),
        _ => Ok(None),
    }
}

/// Signed sum of optional terms as a form; absent terms are zero.
fn combine(p: &PlecticStructure, degree: usize, terms: &[(i32, Option<GradedElement>)]) -> Form {
    let mut acc = Form::zero(p.chart(), p.n().saturating_sub(1 + degree));
    for (s, t) in terms {
        if let Some(t) = t {
            acc = if *s < 0 { acc.sub(t.form()) } else { acc.add(t.form()) };
        }
    }
    acc
}

fn sign(e: usize) -> i32 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Residuals of `δ² = 0`, the derivation rule
/// `δ⟦x,y⟧ = ⟦δx,y⟧ + (−1)^{|x|}⟦x,δy⟧` and the Leibniz rule
/// `⟦x,⟦y,z⟧⟧ = ⟦⟦x,y⟧,z⟧ + (−1)^{|x||y|}⟦y,⟦x,z⟧⟧`.
pub fn check_dg_leibniz(
    p: &PlecticStructure,
    x: &GradedElement,
    y: &GradedElement,
    z: &GradedElement,
) -> Result<Vec<Residual>> {
    let mut out = Vec::new();
    for (name, e) in [("delta_squared_x", x), ("delta_squared_y", y), ("delta_squared_z", z)] {
        let dd = delta(p, e).and_then(|d| delta(p, &d));
        let deg = e.degree().saturating_sub(2);
        out.push(Residual::of(name, &combine(p, deg, &[(1, dd)])));
    }

    let (dx, dy) = (delta(p, x), delta(p, y));
    let xy = dg_bracket(p, x, y)?;
    let lhs = xy.as_ref().and_then(|b| delta(p, b));
    let t1 = bracket_opt(p, dx.as_ref(), Some(y))?;
    let t2 = bracket_opt(p, Some(x), dy.as_ref())?;
    let deg = (x.degree() + y.degree()).saturating_sub(1);
    out.push(Residual::of(
        "derivation",
        &combine(p, deg, &[(1, lhs), (-1, t1), (-sign(x.degree()), t2)]),
    ));

    let yz = dg_bracket(p, y, z)?;
    let xz = dg_bracket(p, x, z)?;
    let lhs = bracket_opt(p, Some(x), yz.as_ref())?;
    let r1 = bracket_opt(p, xy.as_ref(), Some(z))?;
    let r2 = bracket_opt(p, Some(y), xz.as_ref())?;
    let deg = x.degree() + y.degree() + z.degree();
    out.push(Residual::of(
        "leibniz_jacobi",
        &combine(p, deg, &[(1, lhs), (-1, r1), (-sign(x.degree() * y.degree()), r2)]),
    ));
    Ok(out)
}

/// `⟦α,β⟧ + ⟦β,α⟧ − d(ι_{v_α}β + ι_{v_β}α)`.
pub fn symmetrization_identity(a: &HamiltonianPair, b: &HamiltonianPair) -> Result<Form> {
    let sum = lie_derivative(&a.vf, &b.alpha)?.add(&lie_derivative(&b.vf, &a.alpha)?);
    let s = interior(&a.vf, &b.alpha)?.add(&interior(&b.vf, &a.alpha)?);
    Ok(sum.sub(&s.d()))
}

/// `⟦α,β⟧ − {α,β} − dι_{v_α}β`.
pub fn derivation_lemma_residual(p: &PlecticStructure, a: &HamiltonianPair, b: &HamiltonianPair) -> Result<Form> {
    let leib = lie_derivative(&a.vf, &b.alpha)?;
    Ok(leib.sub(&p.ham_bracket(a, b)?).sub(&interior(&a.vf, &b.alpha)?.d()))
}

/// The hemistrict Lie 2-algebra `C^∞ → Ham¹` of a 2-plectic manifold:
/// `[α,β] = L_{v_α}β`, `[α,f] = v_α(f)`, `[f,α] = 0`,
/// `S(α,β) = ι_{v_α}β + ι_{v_β}α`, `J = 0`.
pub struct HemistrictLie2<'a> {
    pub p: &'a PlecticStructure,
}

impl<'a> HemistrictLie2<'a> {
    pub fn new(p: &'a PlecticStructure) -> Result<Self> {
        if p.n() != 2 {
            return Err(Error::Unsupported("the 2-term structure needs n = 2".into()));
        }
        Ok(HemistrictLie2 { p })
    }
}

impl WeakLie2 for HemistrictLie2<'_> {
    type C0 = HamiltonianPair;
    type C1 = Form;
    fn d(&self, f: &Form) -> Result<HamiltonianPair> {
        SemistrictLie2 { p: self.p }.d(f)
    }
    fn bracket(&self, x: &HamiltonianPair, y: &HamiltonianPair) -> Result<HamiltonianPair> {
        Ok(HamiltonianPair::new_unchecked(
            lie_derivative(&x.vf, &y.alpha)?,
            x.vf.vf_bracket(&y.vf)?,
        ))
    }
    fn bracket_01(&self, x: &HamiltonianPair, f: &Form) -> Result<Form> {
        lie_derivative(&x.vf, f)
    }
    fn bracket_10(&self, _f: &Form, _x: &HamiltonianPair) -> Result<Form> {
        Ok(self.zero1())
    }
    fn alternator(&self, x: &HamiltonianPair, y: &HamiltonianPair) -> Result<Form> {
        Ok(interior(&x.vf, &y.alpha)?.add(&interior(&y.vf, &x.alpha)?))
    }
    fn jacobiator(&self, _: &HamiltonianPair, _: &HamiltonianPair, _: &HamiltonianPair) -> Result<Form> {
        Ok(self.zero1())
    }
    fn zero0(&self) -> HamiltonianPair {
        HamiltonianPair::zero(self.p)
    }
    fn zero1(&self) -> Form {
        Form::zero(self.p.chart(), 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strictness {
    /// `S ≠ 0`, `J = 0`: the Leibniz bracket.
    Hemi,
    /// `S = 0`, `J ≠ 0`: the skew bracket of observables.
    Semi,
}

/// All weak Lie 2-algebra axioms for either structure.
pub fn check_weak_l2a(
    p: &PlecticStructure,
    s: Strictness,
    xs: [&HamiltonianPair; 4],
    f: &Form,
    g: &Form,
) -> Result<Vec<Residual>> {
    match s {
        Strictness::Hemi => check_weak_lie2(&HemistrictLie2::new(p)?, xs, f, g),
        Strictness::Semi => check_weak_lie2(&SemistrictLie2::new(p)?, xs, f, g),
    }
}

/// `Φ(α,β) = ι_{v_α}β`.
pub fn iso_homotopy(a: &HamiltonianPair, b: &HamiltonianPair) -> Result<Form> {
    interior(&a.vf, &b.alpha)
}

/// The identity chain map from the semistrict to the hemistrict structure
/// together with `Φ`. In this orientation `Φ` is a homotopy from
/// `[φx,φy]′` to `φ[x,y]`, matching the weak homomorphism convention.
pub fn weak_iso<'a>(
    _semi: &SemistrictLie2<'a>,
    _hemi: &HemistrictLie2<'a>,
) -> Morphism2<'a, SemistrictLie2<'a>, HemistrictLie2<'a>> {
    Morphism2 {
        phi0: Box::new(|x: &HamiltonianPair| Ok(x.clone())),
        phi1: Box::new(|f: &Form| Ok(f.clone())),
        big_phi: Box::new(iso_homotopy),
        direction: HomotopyDirection::BracketThenMap,
    }
}

/// Morphism residuals of the identity-plus-`Φ` isomorphism; `alternator`
/// and `coherence` are the two homomorphism equations.
pub fn weak_iso_check(p: &PlecticStructure, xs: [&HamiltonianPair; 3], f: &Form) -> Result<Vec<Residual>> {
    let semi = SemistrictLie2::new(p)?;
    let hemi = HemistrictLie2::new(p)?;
    let m = weak_iso(&semi, &hemi);
    check_morphism(&semi, &hemi, &m, xs, f)
}

/// The same map with `Φ` read in the opposite direction, which fails; used
/// as a control for the orientation choice.
pub fn weak_iso_check_reversed(p: &PlecticStructure, xs: [&HamiltonianPair; 3], f: &Form) -> Result<Vec<Residual>> {
    let semi = SemistrictLie2::new(p)?;
    let hemi = HemistrictLie2::new(p)?;
    let mut m = weak_iso(&semi, &hemi);
    m.direction = HomotopyDirection::MapThenBracket;
    check_morphism(&semi, &hemi, &m, xs, f)
}

/// The `S′ − φ₁S` side of the alternator equation, for reporting.
pub fn alternator_difference(p: &PlecticStructure, a: &HamiltonianPair, b: &HamiltonianPair) -> Result<Form> {
    let hemi = HemistrictLie2::new(p)?;
    Ok(hemi.alternator(a, b)?.sub(&SemistrictLie2::new(p)?.alternator(a, b)?))
}

/// Whether every residual vanishes.
pub fn holds(rs: &[Residual]) -> bool {
    rs.iter().all(|r| r.zero)
}
