//! The Lie n-algebra of observables, Lie 2-algebra axioms and morphisms, and
//! the Chevalley–Eilenberg coboundary on vector fields.

use std::sync::Arc;

use serde::Serialize;

use crate::cartan::{Form, FormKind, Graded, Kind, MultiVector};
use crate::error::{Error, Result};
use crate::linalg;
use crate::plectic::{HamiltonianPair, PlecticStructure};
use crate::scalar::{Chart, Rational, ScalarExpr};

pub use crate::perm::{koszul_sign, unshuffles, Permutation};

/// An element of the complex `L_i = Ω^{n−1−i}`; degree-0 elements carry
/// their Hamiltonian vector field.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedElement {
    degree: usize,
    form: Form,
    vf: Option<MultiVector>,
}

impl GradedElement {
    pub fn from_pair(pair: HamiltonianPair) -> Self {
        GradedElement {
            degree: 0,
            form: pair.alpha,
            vf: Some(pair.vf),
        }
    }

    /// A form of degree below `n−1`, placed in degree `n−1−deg`.
    pub fn from_form(p: &PlecticStructure, form: Form) -> Result<Self> {
        let n = p.n();
        if form.degree() + 1 == n {
            return Err(Error::Invalid(
                "degree-0 elements need a Hamiltonian certificate".into(),
            ));
        }
        if form.degree() + 1 > n {
            return Err(Error::DegreeMismatch(format!(
                "forms of degree {} do not belong to the complex of an {n}-plectic structure",
                form.degree()
            )));
        }
        Ok(GradedElement {
            degree: n - 1 - form.degree(),
            form,
            vf: None,
        })
    }

    /// Any element: `(n−1)`-forms are solved for their vector field.
    pub fn from_any(p: &PlecticStructure, form: Form) -> Result<Self> {
        if form.degree() + 1 == p.n() {
            Ok(Self::from_pair(p.ham(&form)?))
        } else {
            Self::from_form(p, form)
        }
    }

    pub fn zero(p: &PlecticStructure, degree: usize) -> Self {
        let form = Form::zero(p.chart(), p.n() - 1 - degree);
        GradedElement {
            degree,
            form,
            vf: (degree == 0).then(|| MultiVector::zero(p.chart(), 1)),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn vf(&self) -> Option<&MultiVector> {
        self.vf.as_ref()
    }

    pub fn pair(&self) -> Option<HamiltonianPair> {
        self.vf
            .as_ref()
            .map(|v| HamiltonianPair::new_unchecked(self.form.clone(), v.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero() && self.vf.as_ref().map_or(true, MultiVector::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        GradedElement {
            degree: self.degree,
            form: self.form.add(&o.form),
            vf: match (&self.vf, &o.vf) {
                (Some(a), Some(b)) => Some(a.add(b)),
                (a, b) => a.clone().or(b.clone()),
            },
        }
    }

    pub fn neg(&self) -> Self {
        GradedElement {
            degree: self.degree,
            form: self.form.neg(),
            vf: self.vf.as_ref().map(MultiVector::neg),
        }
    }

    fn scale_sign(&self, s: i32) -> Self {
        if s < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }
}

/// `l_k` of the Lie n-algebra. `None` means the output degree falls outside
/// the complex (`l₁` on degree 0, or total degree above `n−1`).
pub fn bracket_k(p: &PlecticStructure, inputs: &[GradedElement]) -> Result<Option<GradedElement>> {
    let k = inputs.len();
    let n = p.n();
    if k == 0 {
        return Err(Error::Invalid("l_k needs at least one input".into()));
    }
    if k == 1 {
        let x = &inputs[0];
        if x.degree == 0 {
            return Ok(None);
        }
        let form = x.form.d();
        let degree = x.degree - 1;
        return Ok(Some(GradedElement {
            degree,
            form,
            vf: (degree == 0).then(|| MultiVector::zero(p.chart(), 1)),
        }));
    }
    let total: usize = inputs.iter().map(|x| x.degree).sum::<usize>() + k - 2;
    if total > n - 1 {
        return Ok(None);
    }
    if inputs.iter().any(|x| x.degree > 0) {
        return Ok(Some(GradedElement::zero(p, total)));
    }
    let vfs: Vec<&MultiVector> = inputs
        .iter()
        .map(|x| {
            x.vf.as_ref()
                .ok_or_else(|| Error::Invalid("degree-0 input lacks a Hamiltonian vector field".into()))
        })
        .collect::<Result<_>>()?;
    let mut form = p.contract(&vfs)?;
    if lk_sign(k) < 0 {
        form = form.neg();
    }
    let vf = if k == 2 {
        Some(vfs[0].schouten(vfs[1])?)
    } else {
        None
    };
    let form = if form.is_zero() {
        Form::zero(p.chart(), n - 1 - total)
    } else {
        form
    };
    Ok(Some(GradedElement {
        degree: total,
        form,
        vf,
    }))
}

/// `(−1)^{k/2+1}` for even `k`, `(−1)^{(k−1)/2}` for odd `k`.
pub fn lk_sign(k: usize) -> i32 {
    let e = if k % 2 == 0 { k / 2 + 1 } else { (k - 1) / 2 };
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `l_k` with the documented preconditions enforced.
pub fn l_k(p: &PlecticStructure, inputs: &[GradedElement]) -> Result<GradedElement> {
    if inputs.len() == 1 && inputs[0].degree == 0 {
        return Err(Error::Invalid("l_1 = d is defined on positive degrees only".into()));
    }
    Ok(bracket_k(p, inputs)?.unwrap_or_else(|| {
        // out of range: the zero map into a vanishing degree
        GradedElement::zero(p, p.n() - 1)
    }))
}

/// Left side of the generalized Jacobi identity:
/// `Σ_{i+j=m+1} (−1)^{i(j−1)} Σ_{σ∈Sh(i,m−i)} (−1)^σ ε(σ) l_j(l_i(x_σ…), x_σ…)`.
pub fn check_gen_jacobi(p: &PlecticStructure, inputs: &[GradedElement]) -> Result<Form> {
    let m = inputs.len();
    let degrees: Vec<i64> = inputs.iter().map(|x| x.degree as i64).collect();
    let mut acc = Form::zero(p.chart(), 0);
    for i in 1..=m {
        let j = m + 1 - i;
        let outer = if (i * (j - 1)) % 2 == 0 { 1 } else { -1 };
        for sigma in unshuffles(i, m - i) {
            let sign = outer * sigma.sign() * koszul_sign(&sigma, &degrees)?;
            let ordered = sigma.apply(inputs);
            let Some(inner) = bracket_k(p, &ordered[..i])? else {
                continue;
            };
            let mut args = vec![inner];
            args.extend_from_slice(&ordered[i..]);
            let Some(out) = bracket_k(p, &args)? else {
                continue;
            };
            acc = acc.add(&out.scale_sign(sign).form);
        }
    }
    Ok(acc)
}

/// A value space of a 2-term complex.
pub trait Chain: Clone + Send + Sync {
    fn add(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn describe(&self) -> String;
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
}

impl<K: Kind> Chain for Graded<K> {
    fn add(&self, o: &Self) -> Self {
        Graded::add(self, o)
    }
    fn neg(&self) -> Self {
        Graded::neg(self)
    }
    fn is_zero(&self) -> bool {
        Graded::is_zero(self)
    }
    fn describe(&self) -> String {
        self.to_string()
    }
}

impl Chain for HamiltonianPair {
    fn add(&self, o: &Self) -> Self {
        HamiltonianPair::add(self, o)
    }
    fn neg(&self) -> Self {
        HamiltonianPair::neg(self)
    }
    fn is_zero(&self) -> bool {
        HamiltonianPair::is_zero(self)
    }
    fn describe(&self) -> String {
        if self.vf.is_zero() {
            self.alpha.to_string()
        } else {
            format!("{} (field {})", self.alpha, self.vf)
        }
    }
}

impl Chain for Rational {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn describe(&self) -> String {
        self.to_string()
    }
}

impl Chain for ScalarExpr {
    fn add(&self, o: &Self) -> Self {
        ScalarExpr::add(self, o)
    }
    fn neg(&self) -> Self {
        ScalarExpr::neg(self)
    }
    fn is_zero(&self) -> bool {
        ScalarExpr::is_zero(self)
    }
    fn describe(&self) -> String {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("x{i}")).collect();
        self.display_names(&names).to_string()
    }
}

impl Chain for f64 {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn describe(&self) -> String {
        format!("{self:e}")
    }
}

/// Vectors of rationals (elements of a finite-dimensional space).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RVec(pub Vec<Rational>);

impl Chain for RVec {
    fn add(&self, o: &Self) -> Self {
        RVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
    fn neg(&self) -> Self {
        RVec(self.0.iter().map(|a| -a).collect())
    }
    fn is_zero(&self) -> bool {
        self.0.iter().all(num_traits::Zero::is_zero)
    }
    fn describe(&self) -> String {
        let s: Vec<String> = self.0.iter().map(|q| q.to_string()).collect();
        format!("[{}]", s.join(", "))
    }
}

/// A weak Lie 2-algebra `L₁ → L₀`: bracket, alternator `S` and Jacobiator `J`.
///
/// Semistrict structures have `S = 0`, hemistrict ones `J = 0`.
pub trait WeakLie2: Sync {
    type C0: Chain;
    type C1: Chain;
    fn d(&self, f: &Self::C1) -> Result<Self::C0>;
    fn bracket(&self, x: &Self::C0, y: &Self::C0) -> Result<Self::C0>;
    /// `[x, f]` with `x` in degree 0.
    fn bracket_01(&self, x: &Self::C0, f: &Self::C1) -> Result<Self::C1>;
    /// `[f, x]`; skew-symmetric structures negate `[x, f]`.
    fn bracket_10(&self, f: &Self::C1, x: &Self::C0) -> Result<Self::C1> {
        Ok(self.bracket_01(x, f)?.neg())
    }
    fn alternator(&self, x: &Self::C0, y: &Self::C0) -> Result<Self::C1>;
    fn jacobiator(&self, x: &Self::C0, y: &Self::C0, z: &Self::C0) -> Result<Self::C1>;
    fn zero0(&self) -> Self::C0;
    fn zero1(&self) -> Self::C1;
}

/// A named residual of an identity check.
#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    pub name: String,
    pub value: String,
    pub zero: bool,
}

impl Residual {
    pub fn of<C: Chain>(name: impl Into<String>, c: &C) -> Self {
        Residual {
            name: name.into(),
            value: if c.is_zero() { "0".into() } else { c.describe() },
            zero: c.is_zero(),
        }
    }
}

pub fn all_zero(rs: &[Residual]) -> bool {
    rs.iter().all(|r| r.zero)
}

/// Every axiom of a weak Lie 2-algebra on test elements `x, y, z, w ∈ L₀`
/// and `f, g ∈ L₁`: chain-map properties of the bracket, the homotopy
/// properties of `S` and `J`, and the four coherence equations.
pub fn check_weak_lie2<L: WeakLie2>(
    l: &L,
    [x, y, z, w]: [&L::C0; 4],
    f: &L::C1,
    g: &L::C1,
) -> Result<Vec<Residual>> {
    let mut out = Vec::new();
    let b = |a: &L::C0, c: &L::C0| l.bracket(a, c);
    let df = l.d(f)?;
    let dg = l.d(g)?;

    // bracket is a chain map
    out.push(Residual::of("chain_map_x_f", &l.d(&l.bracket_01(x, f)?)?.sub(&b(x, &df)?)));
    out.push(Residual::of("chain_map_f_x", &l.d(&l.bracket_10(f, x)?)?.sub(&b(&df, x)?)));
    out.push(Residual::of(
        "chain_map_f_g",
        &l.bracket_10(f, &dg)?.sub(&l.bracket_01(&df, g)?),
    ));

    // alternator: [x,y] + [y,x] = dS(x,y), and in degree 1
    out.push(Residual::of(
        "alternator_homotopy",
        &b(x, y)?.add(&b(y, x)?).sub(&l.d(&l.alternator(x, y)?)?),
    ));
    out.push(Residual::of(
        "alternator_homotopy_x_f",
        &l.bracket_01(x, f)?
            .add(&l.bracket_10(f, x)?)
            .sub(&l.alternator(x, &df)?),
    ));
    out.push(Residual::of(
        "alternator_homotopy_f_x",
        &l.bracket_10(f, x)?
            .add(&l.bracket_01(x, f)?)
            .sub(&l.alternator(&df, x)?),
    ));

    // Jacobiator: [x,[y,z]] − [[x,y],z] − [y,[x,z]] = dJ(x,y,z), and in degree 1
    let jac0 = b(x, &b(y, z)?)?.sub(&b(&b(x, y)?, z)?).sub(&b(y, &b(x, z)?)?);
    out.push(Residual::of("jacobiator_homotopy", &jac0.sub(&l.d(&l.jacobiator(x, y, z)?)?)));
    // [x,[y,f]] − [[x,y],f] − [y,[x,f]] = J(x,y,df)
    let j_xyf = l
        .bracket_01(x, &l.bracket_01(y, f)?)?
        .sub(&l.bracket_01(&b(x, y)?, f)?)
        .sub(&l.bracket_01(y, &l.bracket_01(x, f)?)?);
    out.push(Residual::of(
        "jacobiator_homotopy_x_y_f",
        &j_xyf.sub(&l.jacobiator(x, y, &df)?),
    ));
    // [x,[f,z]] − [[x,f],z] − [f,[x,z]] = J(x,df,z)
    let j_xfz = l
        .bracket_01(x, &l.bracket_10(f, z)?)?
        .sub(&l.bracket_10(&l.bracket_01(x, f)?, z)?)
        .sub(&l.bracket_10(f, &b(x, z)?)?);
    out.push(Residual::of(
        "jacobiator_homotopy_x_f_z",
        &j_xfz.sub(&l.jacobiator(x, &df, z)?),
    ));
    // [f,[y,z]] − [[f,y],z] − [y,[f,z]] = J(df,y,z)
    let j_fyz = l
        .bracket_10(f, &b(y, z)?)?
        .sub(&l.bracket_10(&l.bracket_10(f, y)?, z)?)
        .sub(&l.bracket_01(y, &l.bracket_10(f, z)?)?);
    out.push(Residual::of(
        "jacobiator_homotopy_f_y_z",
        &j_fyz.sub(&l.jacobiator(&df, y, z)?),
    ));

    // five-term coherence law
    let j = |a: &L::C0, c: &L::C0, e: &L::C0| l.jacobiator(a, c, e);
    let lhs = l
        .bracket_01(x, &j(y, z, w)?)?
        .add(&j(x, &b(y, z)?, w)?)
        .add(&j(x, z, &b(y, w)?)?)
        .add(&l.bracket_10(&j(x, y, z)?, w)?)
        .add(&l.bracket_01(z, &j(x, y, w)?)?);
    let rhs = j(x, y, &b(z, w)?)?
        .add(&j(&b(x, y)?, z, w)?)
        .add(&l.bracket_01(y, &j(x, z, w)?)?)
        .add(&j(y, &b(x, z)?, w)?)
        .add(&j(y, z, &b(x, w)?)?);
    out.push(Residual::of("big_J", &lhs.sub(&rhs)));

    // J(x,y,z) + J(y,x,z) = −[S(x,y), z]
    out.push(Residual::of(
        "wl2a_eq2",
        &j(x, y, z)?
            .add(&j(y, x, z)?)
            .add(&l.bracket_10(&l.alternator(x, y)?, z)?),
    ));
    // J(x,y,z) + J(x,z,y) = [x,S(y,z)] − S([x,y],z) − S(y,[x,z])
    out.push(Residual::of(
        "wl2a_eq3",
        &j(x, y, z)?.add(&j(x, z, y)?).sub(
            &l.bracket_01(x, &l.alternator(y, z)?)?
                .sub(&l.alternator(&b(x, y)?, z)?)
                .sub(&l.alternator(y, &b(x, z)?)?),
        ),
    ));
    // S(x,[y,z]) = S([y,z],x)
    let yz = b(y, z)?;
    out.push(Residual::of(
        "wl2a_eq4",
        &l.alternator(x, &yz)?.sub(&l.alternator(&yz, x)?),
    ));
    Ok(out)
}

/// Which way the homotopy `Φ` of a morphism points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HomotopyDirection {
    /// `Φ` runs from `φ([x,y])` to `[φx, φy]′`.
    MapThenBracket,
    /// `Φ` runs from `[φx, φy]′` to `φ([x,y])` (weak homomorphisms).
    BracketThenMap,
}

impl HomotopyDirection {
    fn sign(self) -> i32 {
        match self {
            HomotopyDirection::MapThenBracket => -1,
            HomotopyDirection::BracketThenMap => 1,
        }
    }
}

type Map<'a, A, B> = Box<dyn Fn(&A) -> Result<B> + Send + Sync + 'a>;
type BiMap<'a, A, B> = Box<dyn Fn(&A, &A) -> Result<B> + Send + Sync + 'a>;

/// A morphism `(φ₀, φ₁, Φ)` of 2-term Lie algebras.
pub struct Morphism2<'a, S: WeakLie2, T: WeakLie2> {
    pub phi0: Map<'a, S::C0, T::C0>,
    pub phi1: Map<'a, S::C1, T::C1>,
    pub big_phi: BiMap<'a, S::C0, T::C1>,
    pub direction: HomotopyDirection,
}

fn signed<C: Chain>(c: C, s: i32) -> C {
    if s < 0 {
        c.neg()
    } else {
        c
    }
}

/// Residuals of the chain-map condition, the homotopy condition in both
/// degrees, the alternator condition and the Jacobiator coherence equation.
pub fn check_morphism<S: WeakLie2, T: WeakLie2>(
    src: &S,
    tgt: &T,
    m: &Morphism2<'_, S, T>,
    [x, y, z]: [&S::C0; 3],
    f: &S::C1,
) -> Result<Vec<Residual>> {
    let s = m.direction.sign();
    let (p0, p1, big) = (&m.phi0, &m.phi1, &m.big_phi);
    let mut out = Vec::new();
    let df = src.d(f)?;
    out.push(Residual::of("chain_map", &p0(&df)?.sub(&tgt.d(&p1(f)?)?)));

    // s([φx,φy]′ − φ[x,y]) = dΦ(x,y)
    let h0 = tgt.bracket(&p0(x)?, &p0(y)?)?.sub(&p0(&src.bracket(x, y)?)?);
    out.push(Residual::of(
        "homotopy",
        &signed(h0, s).sub(&tgt.d(&big(x, y)?)?),
    ));
    let h_xf = tgt.bracket_01(&p0(x)?, &p1(f)?)?.sub(&p1(&src.bracket_01(x, f)?)?);
    out.push(Residual::of("homotopy_x_f", &signed(h_xf, s).sub(&big(x, &df)?)));
    let h_fx = tgt.bracket_10(&p1(f)?, &p0(x)?)?.sub(&p1(&src.bracket_10(f, x)?)?);
    out.push(Residual::of("homotopy_f_x", &signed(h_fx, s).sub(&big(&df, x)?)));

    // S′(φx,φy) − φ₁S(x,y) = s(Φ(x,y) + Φ(y,x))
    let alt = tgt
        .alternator(&p0(x)?, &p0(y)?)?
        .sub(&p1(&src.alternator(x, y)?)?);
    out.push(Residual::of(
        "alternator",
        &alt.sub(&signed(big(x, y)?.add(&big(y, x)?), s)),
    ));

    // J′(φx,φy,φz) − φ₁J(x,y,z) = s·(six-term sum)
    let (fx, fy, fz) = (p0(x)?, p0(y)?, p0(z)?);
    let lhs = tgt.jacobiator(&fx, &fy, &fz)?.sub(&p1(&src.jacobiator(x, y, z)?)?);
    let rhs = big(x, &src.bracket(y, z)?)?
        .sub(&big(&src.bracket(x, y)?, z)?)
        .sub(&big(y, &src.bracket(x, z)?)?)
        .sub(&tgt.bracket_10(&big(x, y)?, &fz)?)
        .add(&tgt.bracket_01(&fx, &big(y, z)?)?)
        .sub(&tgt.bracket_01(&fy, &big(x, z)?)?);
    out.push(Residual::of("coherence", &lhs.sub(&signed(rhs, s))));
    Ok(out)
}

/// The semistrict Lie 2-algebra of a 2-plectic manifold: Hamiltonian 1-forms
/// and functions, `[α,f] = 0`, `S = 0`, `J(α,β,γ) = ι_{v_α}ι_{v_β}ι_{v_γ}ω`.
pub struct SemistrictLie2<'a> {
    pub p: &'a PlecticStructure,
}

impl<'a> SemistrictLie2<'a> {
    pub fn new(p: &'a PlecticStructure) -> Result<Self> {
        if p.n() != 2 {
            return Err(Error::Unsupported("the 2-term structure needs n = 2".into()));
        }
        Ok(SemistrictLie2 { p })
    }
}

impl WeakLie2 for SemistrictLie2<'_> {
    type C0 = HamiltonianPair;
    type C1 = Form;
    fn d(&self, f: &Form) -> Result<HamiltonianPair> {
        Ok(HamiltonianPair::new_unchecked(
            as_one_form(f.d(), self.p.chart()),
            MultiVector::zero(self.p.chart(), 1),
        ))
    }
    fn bracket(&self, x: &HamiltonianPair, y: &HamiltonianPair) -> Result<HamiltonianPair> {
        self.p.ham_bracket_pair(x, y)
    }
    fn bracket_01(&self, _x: &HamiltonianPair, _f: &Form) -> Result<Form> {
        Ok(self.zero1())
    }
    fn bracket_10(&self, _f: &Form, _x: &HamiltonianPair) -> Result<Form> {
        Ok(self.zero1())
    }
    fn alternator(&self, _x: &HamiltonianPair, _y: &HamiltonianPair) -> Result<Form> {
        Ok(self.zero1())
    }
    fn jacobiator(&self, x: &HamiltonianPair, y: &HamiltonianPair, z: &HamiltonianPair) -> Result<Form> {
        self.p.contract(&[&z.vf, &y.vf, &x.vf])
    }
    fn zero0(&self) -> HamiltonianPair {
        HamiltonianPair::zero(self.p)
    }
    fn zero1(&self) -> Form {
        Form::zero(self.p.chart(), 0)
    }
}

pub(crate) fn as_one_form(f: Form, chart: &Arc<Chart>) -> Form {
    if f.is_zero() {
        Graded::<FormKind>::zero(chart, 1)
    } else {
        f
    }
}

/// Chevalley–Eilenberg coboundary of a k-cochain on vector fields:
/// `(δc)(v₁…v_{k+1}) = Σ_{i<j} (−1)^{i+j} c([v_i,v_j], v₁…v̂_i…v̂_j…)`.
pub fn ce_delta<T, F>(c: F, vfs: &[MultiVector], zero: T) -> Result<T>
where
    T: Chain,
    F: Fn(&[MultiVector]) -> Result<T>,
{
    let m = vfs.len();
    let mut acc = zero;
    for i in 0..m {
        for j in i + 1..m {
            let mut args = vec![vfs[i].schouten(&vfs[j])?];
            args.extend((0..m).filter(|&k| k != i && k != j).map(|k| vfs[k].clone()));
            let v = c(&args)?;
            acc = if (i + j) % 2 == 0 { acc.add(&v) } else { acc.sub(&v) };
        }
    }
    Ok(acc)
}

/// Betti numbers `(b₀, b₁)` of a finite 2-term complex `d : C₁ → C₀`, with
/// `d` given as a `dim₀ × dim₁` matrix.
pub fn homology_finite(dim0: usize, dim1: usize, d: &[Vec<Rational>]) -> Result<(usize, usize)> {
    if d.len() != dim0 || d.iter().any(|r| r.len() != dim1) {
        return Err(Error::DimensionMismatch(format!(
            "differential must be {dim0}×{dim1}"
        )));
    }
    let r = linalg::rank_rational(d, dim1);
    Ok((dim0 - r, dim1 - r))
}

/// `J_x(v₁,v₂,v₃) = ι_{v₁}ι_{v₂}ι_{v₃}ω|_x`, the Jacobiator of the Lie
/// 2-algebra of Hamiltonian vector fields at the point `x`.
pub fn jacobiator_at<'a>(
    p: &'a PlecticStructure,
    x: &'a [Rational],
) -> impl Fn(&[MultiVector]) -> Result<Rational> + 'a {
    move |v: &[MultiVector]| {
        if v.len() != 3 {
            return Err(Error::Invalid("J_x takes three vector fields".into()));
        }
        p.contract(&[&v[2], &v[1], &v[0]])?.as_scalar().eval_at(x)
    }
}

/// `c(v,w) = ∫_Γ ω(v,w,·)` along the straight path `Γ` from `x` to `y`,
/// by adaptive quadrature to absolute tolerance `tol`.
pub fn path_cochain<'a>(
    p: &'a PlecticStructure,
    x: &'a [f64],
    y: &'a [f64],
    tol: f64,
) -> impl Fn(&[MultiVector]) -> Result<f64> + 'a {
    move |v: &[MultiVector]| {
        if v.len() != 2 {
            return Err(Error::Invalid("the path cochain takes two vector fields".into()));
        }
        let one_form = p.contract(&[&v[0], &v[1]])?;
        let dir: Vec<f64> = x.iter().zip(y).map(|(a, b)| b - a).collect();
        let comps: Vec<(usize, ScalarExpr)> = one_form
            .terms()
            .map(|(idx, c)| (idx[0], c.clone()))
            .collect();
        let q = crate::quadrature::integrate(
            |s| {
                let pt: Vec<f64> = x.iter().zip(&dir).map(|(a, d)| a + s * d).collect();
                comps.iter().map(|(i, c)| c.eval_f64(&pt) * dir[*i]).sum()
            },
            0.0,
            1.0,
            tol,
        );
        Ok(q.value)
    }
}
