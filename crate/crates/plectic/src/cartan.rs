//! Graded exterior calculus: differential forms, multivector fields, the
//! interior product, Lie derivatives and the Schouten bracket.
//!
//! Conventions: `ι(v₁∧⋯∧v_m) = ι_{v_m}∘⋯∘ι_{v_1}`,
//! `L_v = d ι(v) − (−1)^{deg v} ι(v) d`, and the Schouten bracket of
//! decomposables is `Σ (−1)^{i+j} [u_i, v_j] ∧ u_1…û_i… ∧ v_1…v̂_j…`.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{eval_scalar, parse_ast, Ast, Chart, Rational, ScalarExpr};

/// Marker distinguishing forms from multivector fields.
pub trait Kind: Clone + Send + Sync + 'static {
    const BASIS: &'static str;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormKind;
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorKind;

impl Kind for FormKind {
    const BASIS: &'static str = "d";
}
impl Kind for VectorKind {
    const BASIS: &'static str = "∂";
}

/// Homogeneous element of an exterior algebra over rational functions:
/// a sparse map from strictly increasing index tuples to coefficients.
#[derive(Clone)]
pub struct Graded<K: Kind> {
    chart: Arc<Chart>,
    degree: usize,
    terms: BTreeMap<Vec<usize>, ScalarExpr>,
    kind: PhantomData<K>,
}

pub type Form = Graded<FormKind>;
pub type MultiVector = Graded<VectorKind>;

impl<K: Kind> PartialEq for Graded<K> {
    fn eq(&self, other: &Self) -> bool {
        same_chart(&self.chart, &other.chart)
            && self.terms == other.terms
            && (self.degree == other.degree || self.terms.is_empty())
    }
}

impl<K: Kind> Eq for Graded<K> {}

pub(crate) fn same_chart(a: &Arc<Chart>, b: &Arc<Chart>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Sorts `idx` in place; returns the permutation sign, or `None` on a repeat.
pub(crate) fn sort_sign(idx: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && idx[j - 1] == idx[j] {
            return None;
        }
    }
    Some(sign)
}

fn signed(c: &ScalarExpr, sign: i32) -> ScalarExpr {
    if sign < 0 {
        c.neg()
    } else {
        c.clone()
    }
}

impl<K: Kind> Graded<K> {
    pub fn zero(chart: &Arc<Chart>, degree: usize) -> Self {
        Graded {
            chart: chart.clone(),
            degree,
            terms: BTreeMap::new(),
            kind: PhantomData,
        }
    }

    pub fn scalar(chart: &Arc<Chart>, f: ScalarExpr) -> Self {
        Self::from_terms(chart, 0, [(vec![], f)]).unwrap()
    }

    /// Basis element on the coordinate indices `idx` (any order).
    pub fn basis(chart: &Arc<Chart>, idx: &[usize]) -> Result<Self> {
        Self::from_terms(chart, idx.len(), [(idx.to_vec(), ScalarExpr::one())])
    }

    /// Builds an element from arbitrary (possibly unsorted) index tuples,
    /// applying the alternating sign rule.
    pub fn from_terms<I>(chart: &Arc<Chart>, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, ScalarExpr)>,
    {
        let mut out = Self::zero(chart, degree);
        for (mut idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::DegreeMismatch(format!(
                    "index tuple of length {} in an element of degree {degree}",
                    idx.len()
                )));
            }
            for &i in &idx {
                chart.check_index(i)?;
            }
            if let Some(s) = sort_sign(&mut idx) {
                out.add_term(idx, signed(&c, s));
            }
        }
        Ok(out)
    }

    fn add_term(&mut self, idx: Vec<usize>, c: ScalarExpr) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(idx) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &ScalarExpr)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, idx: &[usize]) -> ScalarExpr {
        self.terms.get(idx).cloned().unwrap_or_else(ScalarExpr::zero)
    }

    /// The coefficient of a degree-0 element.
    pub fn as_scalar(&self) -> ScalarExpr {
        self.coeff(&[])
    }

    pub fn check_chart(&self, other_chart: &Arc<Chart>) -> Result<()> {
        if same_chart(&self.chart, other_chart) {
            Ok(())
        } else {
            Err(Error::ChartMismatch)
        }
    }

    fn combine(&self, other: &Self, neg: bool) -> Self {
        assert!(
            same_chart(&self.chart, &other.chart),
            "adding elements over different charts"
        );
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if neg { other.neg() } else { other.clone() };
        }
        assert_eq!(self.degree, other.degree, "adding elements of different degree");
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), if neg { c.neg() } else { c.clone() });
        }
        out
    }

    /// Sum. A zero summand of any degree is absorbed.
    ///
    /// # Panics
    /// On a chart mismatch or when two nonzero summands differ in degree.
    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    pub fn neg(&self) -> Self {
        Graded {
            chart: self.chart.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect(),
            kind: PhantomData,
        }
    }

    pub fn scale(&self, f: &ScalarExpr) -> Self {
        let mut out = Self::zero(&self.chart, self.degree);
        if f.is_zero() {
            return out;
        }
        for (idx, c) in &self.terms {
            out.add_term(idx.clone(), c.mul(f));
        }
        out
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&ScalarExpr::from_rational(q))
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_chart(&other.chart)?;
        let degree = self.degree + other.degree;
        let mut out = Self::zero(&self.chart, degree);
        if degree > self.chart.dim() {
            return Ok(out);
        }
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut idx: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
                if let Some(s) = sort_sign(&mut idx) {
                    out.add_term(idx, signed(&ca.mul(cb), s));
                }
            }
        }
        Ok(out)
    }

    /// Pointwise components at a rational point.
    pub fn eval_at(&self, point: &[Rational]) -> Result<BTreeMap<Vec<usize>, Rational>> {
        let mut out = BTreeMap::new();
        for (idx, c) in &self.terms {
            let v = c.eval_at(point)?;
            if !v.is_zero() {
                out.insert(idx.clone(), v);
            }
        }
        Ok(out)
    }

    /// Total number of polynomial terms over all coefficients.
    pub fn complexity(&self) -> usize {
        self.terms
            .values()
            .map(|c| c.numerator().num_terms() + c.denominator().num_terms())
            .sum()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(idx, c)| json!({"idx": idx, "coeff": c.to_string_in(&self.chart)}))
            .collect();
        json!({"degree": self.degree, "terms": terms})
    }

    pub fn from_json(chart: &Arc<Chart>, v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Invalid(format!("malformed graded element JSON: {m}"));
        let degree = v
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing `degree`"))? as usize;
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `terms`"))?;
        let mut parsed = Vec::new();
        for t in terms {
            let idx = t
                .get("idx")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("missing `idx`"))?
                .iter()
                .map(|i| i.as_u64().map(|i| i as usize).ok_or_else(|| bad("bad index")))
                .collect::<Result<Vec<usize>>>()?;
            if idx.windows(2).any(|w| w[0] >= w[1]) {
                return Err(bad("index tuples must be strictly increasing"));
            }
            let coeff = t
                .get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("missing `coeff`"))?;
            parsed.push((idx, crate::scalar::parse_expr(coeff, chart)?));
        }
        Self::from_terms(chart, degree, parsed)
    }
}

fn coeff_prefix(c: &ScalarExpr, chart: &Chart) -> String {
    if c.is_one() {
        return String::new();
    }
    if c.neg().is_one() {
        return "-".into();
    }
    let s = c.to_string_in(chart);
    if c.numerator().num_terms() > 1 && c.denominator().is_one() {
        format!("({s})*")
    } else {
        format!("{s}*")
    }
}

impl<K: Kind> fmt::Display for Graded<K> {
    /// Terms sorted by index tuple, wedge written as `*`: `x*dy*dz+dx`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, (idx, c)) in self.terms.iter().enumerate() {
            let term = if idx.is_empty() {
                c.to_string_in(&self.chart)
            } else {
                let basis: Vec<String> = idx
                    .iter()
                    .map(|&i| format!("{}{}", K::BASIS, self.chart.name(i)))
                    .collect();
                format!("{}{}", coeff_prefix(c, &self.chart), basis.join("*"))
            };
            if k > 0 && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        f.write_str(&out)
    }
}

impl<K: Kind> fmt::Debug for Graded<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[deg {}]({})", std::any::type_name::<K>().rsplit("::").next().unwrap(), self.degree, self)
    }
}

impl Form {
    /// de Rham differential.
    pub fn d(&self) -> Form {
        let n = self.chart.dim();
        let mut out = Form::zero(&self.chart, self.degree + 1);
        if self.degree + 1 > n {
            return out;
        }
        for (idx, c) in &self.terms {
            for j in 0..n {
                if idx.contains(&j) {
                    continue;
                }
                let dc = c.partial(j);
                if dc.is_zero() {
                    continue;
                }
                let before = idx.iter().filter(|&&i| i < j).count();
                let mut new_idx = idx.clone();
                new_idx.insert(before, j);
                out.add_term(new_idx, signed(&dc, if before % 2 == 0 { 1 } else { -1 }));
            }
        }
        out
    }

    pub fn differential(chart: &Arc<Chart>, i: usize) -> Result<Form> {
        Form::basis(chart, &[i])
    }

    /// Parses form text: `d<coord>` denotes a differential and `*` the wedge
    /// product, e.g. `x*dy*dz - 2*dx`. Division and powers apply to scalars.
    pub fn parse(text: &str, chart: &Arc<Chart>) -> Result<Form> {
        let ast = parse_ast(text)?;
        eval_form(&ast, chart)
    }

    /// The value `a(w₁,…,w_p)` at a point on constant tangent vectors.
    pub fn evaluate_on(&self, point: &[Rational], vectors: &[Vec<Rational>]) -> Result<Rational> {
        if vectors.len() != self.degree {
            return Err(Error::DegreeMismatch(format!(
                "{} vectors supplied to a {}-form",
                vectors.len(),
                self.degree
            )));
        }
        let mut total = Rational::zero();
        for (idx, c) in &self.terms {
            let v = c.eval_at(point)?;
            total += v * det_minor(vectors, idx);
        }
        Ok(total)
    }
}

/// det[vectors[r][idx[c]]] by Leibniz expansion (small sizes only).
fn det_minor(vectors: &[Vec<Rational>], idx: &[usize]) -> Rational {
    let p = idx.len();
    if p == 0 {
        return Rational::from_integer(1.into());
    }
    let mut total = Rational::zero();
    for perm in crate::perm::Permutation::all(p) {
        let mut t = Rational::from_integer(perm.sign().into());
        for (r, &c) in perm.images().iter().enumerate() {
            t *= &vectors[r][idx[c - 1]];
        }
        total += t;
    }
    total
}

fn eval_form(ast: &Ast, chart: &Arc<Chart>) -> Result<Form> {
    Ok(match ast {
        Ast::Ident { name, pos } => {
            if let Some(i) = chart.index_of(name) {
                Form::scalar(chart, ScalarExpr::var(i))
            } else if let Some(i) = name.strip_prefix('d').and_then(|r| chart.index_of(r)) {
                Form::basis(chart, &[i])?
            } else {
                return Err(Error::UnknownIdentifier {
                    pos: *pos,
                    name: name.clone(),
                });
            }
        }
        Ast::Int(_) => Form::scalar(chart, eval_scalar(ast, chart)?),
        Ast::Neg(a) => eval_form(a, chart)?.neg(),
        Ast::Add(a, b) | Ast::Sub(a, b) => {
            let (x, y) = (eval_form(a, chart)?, eval_form(b, chart)?);
            if !x.is_zero() && !y.is_zero() && x.degree != y.degree {
                return Err(Error::DegreeMismatch(format!(
                    "adding a {}-form to a {}-form",
                    x.degree, y.degree
                )));
            }
            if matches!(ast, Ast::Add(..)) {
                x.add(&y)
            } else {
                x.sub(&y)
            }
        }
        Ast::Mul(a, b) => eval_form(a, chart)?.wedge(&eval_form(b, chart)?)?,
        Ast::Div(a, b, pos) => {
            let den = eval_form(b, chart)?;
            if den.degree != 0 && !den.is_zero() {
                return Err(Error::Syntax {
                    pos: *pos,
                    msg: "division by a form of positive degree".into(),
                });
            }
            let inv = den.as_scalar().recip()?;
            eval_form(a, chart)?.scale(&inv)
        }
        Ast::Pow(a, e) => {
            let base = eval_form(a, chart)?;
            if base.degree != 0 && !base.is_zero() {
                return Err(Error::DegreeMismatch("power of a form of positive degree".into()));
            }
            Form::scalar(chart, base.as_scalar().pow(*e))
        }
    })
}

impl MultiVector {
    /// The coordinate vector field `∂_i`.
    pub fn coordinate(chart: &Arc<Chart>, i: usize) -> Result<MultiVector> {
        MultiVector::basis(chart, &[i])
    }

    /// Vector field with the given components.
    pub fn vector_field(chart: &Arc<Chart>, comps: &[ScalarExpr]) -> Result<MultiVector> {
        if comps.len() != chart.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} components for a chart of dimension {}",
                comps.len(),
                chart.dim()
            )));
        }
        MultiVector::from_terms(
            chart,
            1,
            comps.iter().enumerate().map(|(i, c)| (vec![i], c.clone())),
        )
    }

    /// Components `v^i` of a vector field.
    pub fn components(&self) -> Vec<ScalarExpr> {
        (0..self.chart.dim()).map(|i| self.coeff(&[i])).collect()
    }

    /// Directional derivative `v(f)` for a vector field.
    pub fn apply(&self, f: &ScalarExpr) -> ScalarExpr {
        debug_assert!(self.degree == 1 || self.is_zero());
        let mut acc = ScalarExpr::zero();
        for (idx, c) in &self.terms {
            acc = acc.add(&c.mul(&f.partial(idx[0])));
        }
        acc
    }

    /// Lie bracket of vector fields by components: `[u,v]^k = u(v^k) − v(u^k)`.
    pub fn vf_bracket(&self, other: &MultiVector) -> Result<MultiVector> {
        self.check_chart(&other.chart)?;
        let u = self.components();
        let v = other.components();
        let comps: Vec<ScalarExpr> = (0..self.chart.dim())
            .map(|k| self.apply(&v[k]).sub(&other.apply(&u[k])))
            .collect();
        MultiVector::vector_field(&self.chart, &comps)
    }

    /// Schouten bracket, computed term by term on decomposables.
    pub fn schouten(&self, other: &MultiVector) -> Result<MultiVector> {
        self.check_chart(&other.chart)?;
        let (m, n) = (self.degree, other.degree);
        if m == 0 || n == 0 {
            if self.is_zero() || other.is_zero() {
                return Ok(MultiVector::zero(&self.chart, (m + n).saturating_sub(1)));
            }
            return Err(Error::Unsupported(
                "Schouten bracket with a degree-0 multivector".into(),
            ));
        }
        let chart = &self.chart;
        let mut out = MultiVector::zero(chart, m + n - 1);
        for (ui, fu) in &self.terms {
            for (vj, gv) in &other.terms {
                // u = (f ∂_{i1}) ∧ ∂_{i2} ∧ …, v = (g ∂_{j1}) ∧ ∂_{j2} ∧ …
                for a in 0..m {
                    for b in 0..n {
                        let cu = if a == 0 { fu.clone() } else { ScalarExpr::one() };
                        let cv = if b == 0 { gv.clone() } else { ScalarExpr::one() };
                        // [cu ∂_p, cv ∂_q] = cu ∂_p(cv) ∂_q − cv ∂_q(cu) ∂_p
                        let (p, q) = (ui[a], vj[b]);
                        let rest_coeff = {
                            let mut c = ScalarExpr::one();
                            if a != 0 {
                                c = c.mul(fu);
                            }
                            if b != 0 {
                                c = c.mul(gv);
                            }
                            c
                        };
                        let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
                        let rest: Vec<usize> = ui
                            .iter()
                            .enumerate()
                            .filter(|&(k, _)| k != a)
                            .map(|(_, &i)| i)
                            .chain(vj.iter().enumerate().filter(|&(k, _)| k != b).map(|(_, &j)| j))
                            .collect();
                        for (dir, coef) in [
                            (q, cu.mul(&cv.partial(p))),
                            (p, cv.mul(&cu.partial(q)).neg()),
                        ] {
                            if coef.is_zero() {
                                continue;
                            }
                            let mut idx = vec![dir];
                            idx.extend_from_slice(&rest);
                            if let Some(s) = sort_sign(&mut idx) {
                                out.add_term(idx, signed(&coef.mul(&rest_coeff), s * sign));
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// `ι_{∂_j}` applied to a basis tuple: the sign and the remaining tuple.
fn contract_index(idx: &[usize], j: usize) -> Option<(i32, Vec<usize>)> {
    let k = idx.iter().position(|&i| i == j)?;
    let mut rest = idx.to_vec();
    rest.remove(k);
    Some((if k % 2 == 0 { 1 } else { -1 }, rest))
}

/// Interior product `ι(v) a` with `ι(v₁∧⋯∧v_m) = ι_{v_m}⋯ι_{v_1}`.
pub fn interior(v: &MultiVector, a: &Form) -> Result<Form> {
    v.check_chart(&a.chart)?;
    if v.degree > a.degree {
        return Ok(Form::zero(&a.chart, 0));
    }
    let mut out = Form::zero(&a.chart, a.degree - v.degree);
    for (j, g) in &v.terms {
        for (i, f) in &a.terms {
            let mut idx = i.clone();
            let mut sign = 1;
            let mut ok = true;
            for &jj in j {
                match contract_index(&idx, jj) {
                    Some((s, rest)) => {
                        sign *= s;
                        idx = rest;
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                out.add_term(idx, signed(&g.mul(f), sign));
            }
        }
    }
    Ok(out)
}

/// Successive contractions `ι_{v_k}⋯ι_{v_1} a` by vector fields.
pub fn contract_all(vfs: &[&MultiVector], a: &Form) -> Result<Form> {
    let mut cur = a.clone();
    for v in vfs {
        cur = interior(v, &cur)?;
    }
    Ok(cur)
}

/// `L_v a = d ι(v) a − (−1)^{deg v} ι(v) d a`.
pub fn lie_derivative(v: &MultiVector, a: &Form) -> Result<Form> {
    let first = interior(v, a)?.d();
    let second = interior(v, &a.d())?;
    Ok(if v.degree % 2 == 0 {
        first.sub(&second)
    } else {
        first.add(&second)
    })
}

/// Wedge product of a list of multivectors (empty list gives the unit).
pub fn wedge_all(chart: &Arc<Chart>, vs: &[&MultiVector]) -> Result<MultiVector> {
    let mut acc = MultiVector::scalar(chart, ScalarExpr::one());
    for v in vs {
        acc = acc.wedge(v)?;
    }
    Ok(acc)
}
