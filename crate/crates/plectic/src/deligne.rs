//! Čech–Deligne cochains on finite covers: the total differential, cocycle
//! checks, curvature, holonomy along circles and spheres, and integrality.
//!
//! A `U(1)`-valued function `g = exp(i·h)` is stored through its phase `h`,
//! written as an exact expression plus a rational multiple of `π`. Constant
//! phases in `2πℤ` are exactly the ones with zero expression part and an
//! even `π` coefficient.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cartan::Form;
use crate::error::{Error, Result};
use crate::linfty::{as_one_form, Chain};
use crate::quadrature::{integrate, integrate_2d};
use crate::scalar::{int, parse_expr, parse_rational, rational_to_f64, Chart, Rational, ScalarExpr};

/// A phase `expr + pi·π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phase {
    pub expr: ScalarExpr,
    pub pi: Rational,
}

impl Phase {
    pub fn zero() -> Self {
        Phase {
            expr: ScalarExpr::zero(),
            pi: int(0),
        }
    }

    pub fn from_expr(expr: ScalarExpr) -> Self {
        Phase { expr, pi: int(0) }
    }

    /// `q·π`.
    pub fn pi_multiple(q: Rational) -> Self {
        Phase {
            expr: ScalarExpr::zero(),
            pi: q,
        }
    }

    /// Whether the phase is a constant in `2πℤ`, i.e. `exp(i·h) = 1`.
    pub fn is_trivial(&self) -> bool {
        self.expr.is_zero() && self.pi.is_integer() && self.pi.numer().is_even()
    }

    pub fn add(&self, o: &Self) -> Self {
        Phase {
            expr: self.expr.add(&o.expr),
            pi: &self.pi + &o.pi,
        }
    }

    pub fn neg(&self) -> Self {
        Phase {
            expr: self.expr.neg(),
            pi: -&self.pi,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.expr.is_zero() && num_traits::Zero::is_zero(&self.pi)
    }

    pub fn to_json(&self, chart: &Chart) -> Value {
        json!({"expr": self.expr.to_string_in(chart), "pi": self.pi.to_string()})
    }

    pub fn from_json(chart: &Chart, v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => Ok(Phase::from_expr(parse_expr(s, chart)?)),
            Value::Object(_) => Ok(Phase {
                expr: match v.get("expr").and_then(Value::as_str) {
                    Some(s) => parse_expr(s, chart)?,
                    None => ScalarExpr::zero(),
                },
                pi: match v.get("pi").and_then(Value::as_str) {
                    Some(s) => parse_rational(s)?,
                    None => int(0),
                },
            }),
            _ => Err(Error::Invalid("a phase is a string or {expr, pi}".into())),
        }
    }
}

/// A finite cover described by its nerve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    patches: Vec<String>,
    nerve: BTreeSet<Vec<usize>>,
    depth: usize,
}

impl Cover {
    /// `nerve` lists the nonempty intersections as strictly increasing
    /// patch-index tuples of length at most `depth`. Every singleton is
    /// implicitly present.
    pub fn new(patches: Vec<String>, nerve: impl IntoIterator<Item = Vec<usize>>, depth: usize) -> Result<Self> {
        if patches.is_empty() {
            return Err(Error::Invalid("a cover needs at least one patch".into()));
        }
        let mut set: BTreeSet<Vec<usize>> = (0..patches.len()).map(|i| vec![i]).collect();
        for t in nerve {
            if t.is_empty() || t.windows(2).any(|w| w[0] >= w[1]) || t.iter().any(|&i| i >= patches.len()) {
                return Err(Error::Invalid(format!("bad nerve tuple {t:?}")));
            }
            if t.len() > depth {
                return Err(Error::Invalid(format!("nerve tuple {t:?} is deeper than the declared depth {depth}")));
            }
            set.insert(t);
        }
        for t in &set {
            for skip in 0..t.len() {
                let mut face = t.clone();
                face.remove(skip);
                if !face.is_empty() && !set.contains(&face) {
                    return Err(Error::Invalid(format!("nerve is not closed: {face:?} ⊂ {t:?} is missing")));
                }
            }
        }
        Ok(Cover {
            patches,
            nerve: set,
            depth,
        })
    }

    /// One patch covering everything.
    pub fn single(name: &str) -> Self {
        Cover::new(vec![name.to_string()], [], usize::MAX).unwrap()
    }

    /// `k` patches with every intersection nonempty.
    pub fn complete(k: usize) -> Self {
        let tuples: Vec<Vec<usize>> = (1..(1usize << k))
            .map(|mask| (0..k).filter(|i| mask >> i & 1 == 1).collect())
            .collect();
        Cover::new((0..k).map(|i| format!("U{i}")).collect(), tuples, usize::MAX).unwrap()
    }

    pub fn patches(&self) -> &[String] {
        &self.patches
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// The recorded depth is the one the nerve is known to be complete to;
    /// with strictly increasing ids it never needs to exceed the patch count.
    fn known_depth(&self) -> usize {
        if self.depth >= self.patches.len() {
            usize::MAX
        } else {
            self.depth
        }
    }

    /// Tuples of the given Čech degree (length `p + 1`).
    pub fn tuples(&self, p: usize) -> impl Iterator<Item = &Vec<usize>> {
        self.nerve.iter().filter(move |t| t.len() == p + 1)
    }

    pub fn contains(&self, t: &[usize]) -> bool {
        self.nerve.contains(t)
    }

    pub fn to_json(&self) -> Value {
        let depth = if self.depth == usize::MAX { Value::Null } else { json!(self.depth) };
        json!({"patches": self.patches, "nerve": self.nerve.iter().filter(|t| t.len() > 1).collect::<Vec<_>>(), "depth": depth})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let patches: Vec<String> = v
            .get("patches")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Invalid("cover needs `patches`".into()))?
            .iter()
            .map(|p| p.as_str().map(str::to_string).ok_or_else(|| Error::Invalid("patch ids are strings".into())))
            .collect::<Result<_>>()?;
        let nerve: Vec<Vec<usize>> = match v.get("nerve") {
            None | Some(Value::Null) => Vec::new(),
            Some(n) => serde_json::from_value(n.clone()).map_err(|e| Error::Invalid(format!("bad nerve: {e}")))?,
        };
        let depth = v.get("depth").and_then(Value::as_u64).map(|d| d as usize).unwrap_or(usize::MAX);
        Cover::new(patches, nerve, depth)
    }
}

fn faces(t: &[usize]) -> impl Iterator<Item = (i32, Vec<usize>)> + '_ {
    (0..t.len()).map(move |j| {
        let mut f = t.to_vec();
        f.remove(j);
        (if j % 2 == 0 { 1 } else { -1 }, f)
    })
}

/// A cochain of total degree `t` in the Deligne complex truncated at level
/// `n`: form degree `k` sits in Čech degree `t − k`, with phases at `k = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeligneCochain {
    n: usize,
    t: usize,
    chart: Arc<Chart>,
    cover: Arc<Cover>,
    phases: BTreeMap<Vec<usize>, Phase>,
    forms: Vec<BTreeMap<Vec<usize>, Form>>,
}

impl DeligneCochain {
    pub fn zero(n: usize, t: usize, chart: &Arc<Chart>, cover: &Arc<Cover>) -> Self {
        DeligneCochain {
            n,
            t,
            chart: chart.clone(),
            cover: cover.clone(),
            phases: BTreeMap::new(),
            forms: vec![BTreeMap::new(); n.min(t)],
        }
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn total_degree(&self) -> usize {
        self.t
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn cover(&self) -> &Arc<Cover> {
        &self.cover
    }

    fn check_tuple(&self, tuple: &[usize], cech: usize) -> Result<()> {
        if tuple.len() != cech + 1 || !self.cover.contains(tuple) {
            return Err(Error::Invalid(format!(
                "{tuple:?} is not a nerve tuple of Čech degree {cech}"
            )));
        }
        Ok(())
    }

    pub fn set_phase(&mut self, tuple: &[usize], h: Phase) -> Result<()> {
        self.check_tuple(tuple, self.t)?;
        self.phases.insert(tuple.to_vec(), h);
        Ok(())
    }

    /// Sets the `k`-form component on a tuple of Čech degree `t − k`.
    pub fn set_form(&mut self, k: usize, tuple: &[usize], f: Form) -> Result<()> {
        if k == 0 || k > self.n.min(self.t) {
            return Err(Error::DegreeMismatch(format!("no {k}-form column in this cochain")));
        }
        if f.degree() != k {
            return Err(Error::DegreeMismatch(format!("column {k} holds {k}-forms, got degree {}", f.degree())));
        }
        f.check_chart(&self.chart)?;
        self.check_tuple(tuple, self.t - k)?;
        self.forms[k - 1].insert(tuple.to_vec(), f);
        Ok(())
    }

    pub fn phase(&self, tuple: &[usize]) -> Phase {
        self.phases.get(tuple).cloned().unwrap_or_else(Phase::zero)
    }

    pub fn form(&self, k: usize, tuple: &[usize]) -> Form {
        self.forms
            .get(k.wrapping_sub(1))
            .and_then(|m| m.get(tuple))
            .cloned()
            .unwrap_or_else(|| Form::zero(&self.chart, k))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.n != o.n || self.t != o.t || self.cover != o.cover || self.chart != o.chart {
            return Err(Error::Invalid("cochains live in different complexes".into()));
        }
        let mut out = self.clone();
        for (t, h) in &o.phases {
            let v = out.phase(t).add(h);
            out.phases.insert(t.clone(), v);
        }
        for (k, m) in o.forms.iter().enumerate() {
            for (t, f) in m {
                let v = out.form(k + 1, t).add(f);
                out.forms[k].insert(t.clone(), v);
            }
        }
        out.prune();
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for h in out.phases.values_mut() {
            *h = h.neg();
        }
        for m in &mut out.forms {
            for f in m.values_mut() {
                *f = f.neg();
            }
        }
        out
    }

    fn prune(&mut self) {
        self.phases.retain(|_, h| !h.is_zero());
        for m in &mut self.forms {
            m.retain(|_, f| !f.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.phases.values().all(Phase::is_zero) && self.forms.iter().all(|m| m.values().all(Form::is_zero))
    }

    /// Whether every component vanishes except for phases in `2πℤ`.
    pub fn is_trivial(&self) -> bool {
        self.phases.values().all(Phase::is_trivial) && self.forms.iter().all(|m| m.values().all(Form::is_zero))
    }

    /// The total differential: column `k` of `Dc` is
    /// `δc_k + (−1)^{t−k+1} d c_{k−1}`, with `d` acting on phases as `dh`.
    pub fn differential(&self) -> Result<Self> {
        let t1 = self.t + 1;
        let needed = t1 + 1;
        if needed > self.cover.known_depth() {
            return Err(Error::NerveDepth(format!(
                "the differential needs intersections of {needed} patches, the cover is described to depth {}",
                self.cover.depth
            )));
        }
        let mut out = DeligneCochain::zero(self.n, t1, &self.chart, &self.cover);
        // phases: δh on Čech degree t+1
        for tuple in self.cover.tuples(t1) {
            let mut acc = Phase::zero();
            for (s, f) in faces(tuple) {
                let h = self.phase(&f);
                acc = acc.add(&if s > 0 { h } else { h.neg() });
            }
            out.phases.insert(tuple.clone(), acc);
        }
        for k in 1..=self.n.min(t1) {
            let cech = t1 - k;
            let sign = if (self.t + 1 - k) % 2 == 0 { 1 } else { -1 };
            for tuple in self.cover.tuples(cech) {
                let mut acc = Form::zero(&self.chart, k);
                if k <= self.t {
                    for (s, f) in faces(tuple) {
                        let c = self.form(k, &f);
                        acc = acc.add(&if s > 0 { c } else { c.neg() });
                    }
                }
                let lower = if k == 1 {
                    Form::scalar(&self.chart, self.phase(tuple).expr).d()
                } else {
                    self.form(k - 1, tuple).d()
                };
                let lower = if k == 1 { as_one_form(lower, &self.chart) } else { lower };
                acc = if sign > 0 { acc.add(&lower) } else { acc.sub(&lower) };
                out.forms[k - 1].insert(tuple.clone(), acc);
            }
        }
        out.prune();
        Ok(out)
    }

    /// Per-condition residuals of `Dc = 0` modulo `2πℤ` in the phase column.
    pub fn cocycle_report(&self) -> Result<Vec<CocycleResidual>> {
        let dc = self.differential()?;
        let mut out = Vec::new();
        for tuple in self.cover.tuples(self.t + 1) {
            let h = dc.phase(tuple);
            out.push(CocycleResidual {
                condition: format!("phase δh on {}", self.tuple_name(tuple)),
                residual: self.describe_phase(&h),
                holds: h.is_trivial(),
            });
        }
        for k in 1..=self.n.min(self.t + 1) {
            for tuple in self.cover.tuples(self.t + 1 - k) {
                let f = dc.form(k, tuple);
                out.push(CocycleResidual {
                    condition: format!("{k}-form column on {}", self.tuple_name(tuple)),
                    residual: if f.is_zero() { "0".into() } else { f.to_string() },
                    holds: f.is_zero(),
                });
            }
        }
        Ok(out)
    }

    pub fn is_cocycle(&self) -> Result<bool> {
        Ok(self.cocycle_report()?.iter().all(|r| r.holds))
    }

    fn tuple_name(&self, t: &[usize]) -> String {
        let names: Vec<&str> = t.iter().map(|&i| self.cover.patches[i].as_str()).collect();
        names.join("∩")
    }

    fn describe_phase(&self, h: &Phase) -> String {
        match (h.expr.is_zero(), num_traits::Zero::is_zero(&h.pi)) {
            (true, true) => "0".into(),
            (true, false) => format!("{}*pi", h.pi),
            (false, true) => h.expr.to_string_in(&self.chart),
            (false, false) => format!("{} + {}*pi", h.expr.to_string_in(&self.chart), h.pi),
        }
    }

    /// The `n`-curvature `κ = (−1)ⁿ dθⁿ` of a cocycle of total degree `n`,
    /// after checking that the patchwise forms agree on every overlap.
    pub fn curvature(&self) -> Result<Form> {
        if self.t != self.n || self.n == 0 {
            return Err(Error::Invalid("curvature is defined for cocycles of total degree n ≥ 1".into()));
        }
        let local: Vec<Form> = (0..self.cover.patches.len())
            .map(|i| self.form(self.n, &[i]).d())
            .collect();
        for tuple in self.cover.tuples(1) {
            if !local[tuple[0]].sub(&local[tuple[1]]).is_zero() {
                return Err(Error::Invalid(format!(
                    "dθⁿ differs on {}",
                    self.tuple_name(tuple)
                )));
            }
        }
        let k = local[0].clone();
        Ok(if self.n % 2 == 0 { k } else { k.neg() })
    }

    /// `(1, 0, …, 0, α)` on every patch: the image of a global `n`-form.
    pub fn from_global(n: usize, alpha: &Form, cover: &Arc<Cover>) -> Result<Self> {
        if alpha.degree() != n || n == 0 {
            return Err(Error::DegreeMismatch(format!("a level-{n} global form has degree {n}")));
        }
        let mut c = DeligneCochain::zero(n, n, alpha.chart(), cover);
        for i in 0..cover.patches.len() {
            c.set_form(n, &[i], alpha.clone())?;
        }
        Ok(c)
    }

    /// Whether `self − ι(α) = D b` for the supplied comparison cochain `b`
    /// (or is trivial when `b` is absent).
    pub fn reduces_to(&self, alpha: &Form, comparison: Option<&DeligneCochain>) -> Result<bool> {
        let diff = self.add(&DeligneCochain::from_global(self.n, alpha, &self.cover)?.neg())?;
        match comparison {
            None => Ok(diff.is_trivial()),
            Some(b) => Ok(diff.add(&b.differential()?.neg())?.is_trivial()),
        }
    }

    pub fn to_json(&self) -> Value {
        let key = |t: &Vec<usize>| t.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let phases: serde_json::Map<String, Value> = self
            .phases
            .iter()
            .map(|(t, h)| (key(t), h.to_json(&self.chart)))
            .collect();
        let mut forms = serde_json::Map::new();
        for (k, m) in self.forms.iter().enumerate() {
            let col: serde_json::Map<String, Value> = m.iter().map(|(t, f)| (key(t), f.to_json())).collect();
            forms.insert(format!("theta{}", k + 1), Value::Object(col));
        }
        json!({
            "n": self.n,
            "t": self.t,
            "chart": self.chart.names(),
            "cover": self.cover.to_json(),
            "phases": phases,
            "forms": forms,
        })
    }
}

/// Parsed cocycle JSON together with its optional global witness.
pub struct CocycleSpec {
    pub cochain: DeligneCochain,
    pub witness: Option<Form>,
    pub comparison: Option<DeligneCochain>,
}

fn parse_tuple(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Invalid(format!("bad tuple key `{s}`"))))
        .collect()
}

/// Accepts a form either as a JSON object or as text.
pub fn form_from_value(chart: &Arc<Chart>, v: &Value) -> Result<Form> {
    match v {
        Value::String(s) => Form::parse(s, chart),
        _ => Form::from_json(chart, v),
    }
}

fn cochain_from_json(v: &Value, chart: &Arc<Chart>, cover: &Arc<Cover>, n: usize, t: usize) -> Result<DeligneCochain> {
    let mut c = DeligneCochain::zero(n, t, chart, cover);
    if let Some(ph) = v.get("phases").and_then(Value::as_object) {
        for (k, h) in ph {
            c.set_phase(&parse_tuple(k)?, Phase::from_json(chart, h)?)?;
        }
    }
    if let Some(fs) = v.get("forms").and_then(Value::as_object) {
        for (name, col) in fs {
            let k: usize = name
                .strip_prefix("theta")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Invalid(format!("form columns are named theta<k>, got `{name}`")))?;
            let col = col
                .as_object()
                .ok_or_else(|| Error::Invalid(format!("`{name}` must map tuples to forms")))?;
            for (tk, f) in col {
                c.set_form(k, &parse_tuple(tk)?, form_from_value(chart, f)?)?;
            }
        }
    }
    Ok(c)
}

impl CocycleSpec {
    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Invalid("cocycle needs `n`".into()))? as usize;
        let names: Vec<String> = serde_json::from_value(v.get("chart").cloned().unwrap_or(Value::Null))
            .map_err(|_| Error::Invalid("cocycle needs a `chart` list of coordinate names".into()))?;
        let chart = Arc::new(Chart::new(&names)?);
        let cover = Arc::new(match v.get("cover") {
            Some(c) => Cover::from_json(c)?,
            None => Cover::single("U"),
        });
        let cochain = cochain_from_json(v, &chart, &cover, n, n)?;
        let witness = match v.get("global_witness") {
            None | Some(Value::Null) => None,
            Some(w) => Some(form_from_value(&chart, w)?),
        };
        let comparison = match v.get("comparison") {
            None | Some(Value::Null) => None,
            Some(b) => Some(cochain_from_json(b, &chart, &cover, n, n - 1)?),
        };
        Ok(CocycleSpec {
            cochain,
            witness,
            comparison,
        })
    }
}

/// One line of a cocycle report.
#[derive(Clone, Debug, Serialize)]
pub struct CocycleResidual {
    pub condition: String,
    pub residual: String,
    pub holds: bool,
}

/// The coordinate system a leaf is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Embedding {
    Cartesian,
    /// `(r, t)` polar coordinates in the plane.
    Polar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LeafKind {
    Circle,
    Sphere,
}

/// A parametrized circle in a coordinate plane or a round sphere.
#[derive(Clone, Debug, PartialEq)]
pub struct LeafMap {
    pub kind: LeafKind,
    /// The squared radius, so that leaves such as `r = √2` stay exact.
    pub radius_sq: Rational,
    pub center: Vec<Rational>,
    pub embedding: Embedding,
    /// Absolute quadrature tolerance.
    pub tol: f64,
}

impl LeafMap {
    pub fn circle(radius: Rational, center: Vec<Rational>) -> Self {
        LeafMap {
            kind: LeafKind::Circle,
            radius_sq: &radius * &radius,
            center,
            embedding: Embedding::Cartesian,
            tol: 1e-11,
        }
    }

    /// The circle `r = R` in polar coordinates `(r, t)`.
    pub fn polar_circle(radius: Rational) -> Self {
        Self::polar_circle_sq(&radius * &radius)
    }

    /// The polar circle of squared radius `r2`.
    pub fn polar_circle_sq(radius_sq: Rational) -> Self {
        LeafMap {
            kind: LeafKind::Circle,
            radius_sq,
            center: vec![int(0), int(0)],
            embedding: Embedding::Polar,
            tol: 1e-11,
        }
    }

    pub fn sphere(radius: Rational, center: Vec<Rational>) -> Self {
        LeafMap {
            kind: LeafKind::Sphere,
            radius_sq: &radius * &radius,
            center,
            embedding: Embedding::Cartesian,
            tol: 1e-11,
        }
    }

    pub fn radius(&self) -> f64 {
        rational_to_f64(&self.radius_sq).sqrt()
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            LeafKind::Circle => 1,
            LeafKind::Sphere => 2,
        }
    }

    fn validate(&self, chart: &Chart) -> Result<()> {
        if self.radius_sq <= int(0) {
            return Err(Error::Invalid("leaf radius must be positive".into()));
        }
        if self.center.len() != chart.dim() {
            return Err(Error::DimensionMismatch("leaf center has the wrong length".into()));
        }
        match (self.kind, self.embedding) {
            (LeafKind::Circle, Embedding::Cartesian) if chart.dim() >= 2 => Ok(()),
            (LeafKind::Circle, Embedding::Polar) if chart.dim() == 2 => Ok(()),
            (LeafKind::Sphere, Embedding::Cartesian) if chart.dim() >= 3 => Ok(()),
            _ => Err(Error::Unsupported(format!(
                "{:?} leaf in {:?} coordinates on a {}-dimensional chart",
                self.kind,
                self.embedding,
                chart.dim()
            ))),
        }
    }

    /// The point and the tangent vectors at the given parameters.
    fn frame(&self, params: &[f64]) -> (Vec<f64>, Vec<Vec<f64>>) {
        let r = self.radius();
        let mut p: Vec<f64> = self.center.iter().map(rational_to_f64).collect();
        let d = p.len();
        let zero = vec![0.0; d];
        match (self.kind, self.embedding) {
            (LeafKind::Circle, Embedding::Polar) => {
                let mut t = zero;
                p[0] = r;
                p[1] = params[0];
                t[1] = 1.0;
                (p, vec![t])
            }
            (LeafKind::Circle, _) => {
                let s = params[0];
                let mut t = zero;
                p[0] += r * s.cos();
                p[1] += r * s.sin();
                t[0] = -r * s.sin();
                t[1] = r * s.cos();
                (p, vec![t])
            }
            (LeafKind::Sphere, _) => {
                let (th, ph) = (params[0], params[1]);
                let (mut a, mut b) = (zero.clone(), zero);
                p[0] += r * th.sin() * ph.cos();
                p[1] += r * th.sin() * ph.sin();
                p[2] += r * th.cos();
                a[0] = r * th.cos() * ph.cos();
                a[1] = r * th.cos() * ph.sin();
                a[2] = -r * th.sin();
                b[0] = -r * th.sin() * ph.sin();
                b[1] = r * th.sin() * ph.cos();
                (p, vec![a, b])
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind,
            "radius_squared": self.radius_sq.to_string(),
            "center": self.center.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
            "coordinates": self.embedding,
        })
    }

    pub fn from_json(v: &Value, dim: usize) -> Result<Self> {
        let radius_sq = match (v.get("radius"), v.get("radius_squared")) {
            (_, Some(r2)) => json_rational(r2)?,
            (Some(r), None) => parse_radius_sq(&match r {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            })?,
            _ => return Err(Error::Invalid("leaf needs a `radius` or `radius_squared`".into())),
        };
        let center = match v.get("center").and_then(Value::as_array) {
            Some(a) => a
                .iter()
                .map(json_rational)
                .collect::<Result<Vec<_>>>()?,
            None => vec![int(0); dim],
        };
        let embedding = match v.get("coordinates").and_then(Value::as_str) {
            None | Some("cartesian") => Embedding::Cartesian,
            Some("polar") => Embedding::Polar,
            Some(o) => return Err(Error::Invalid(format!("unknown coordinates `{o}`"))),
        };
        let kind = match v.get("kind").and_then(Value::as_str) {
            Some("circle") => LeafKind::Circle,
            Some("sphere") => LeafKind::Sphere,
            _ => return Err(Error::Invalid("leaf kind is `circle` or `sphere`".into())),
        };
        Ok(LeafMap {
            kind,
            radius_sq,
            center,
            embedding,
            tol: 1e-11,
        })
    }
}

fn json_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(Error::Invalid("expected a rational".into())),
    }
}

/// Parses `p/q` or `sqrt(p/q)` into a squared radius.
pub fn parse_radius_sq(s: &str) -> Result<Rational> {
    let s = s.trim();
    match s.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        Some(inner) => parse_rational(inner),
        None => {
            let r = parse_rational(s)?;
            Ok(&r * &r)
        }
    }
}

fn det(m: &mut [Vec<f64>]) -> f64 {
    match m.len() {
        0 => 1.0,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => unreachable!("leaves have dimension at most 2"),
    }
}

/// `α_p(v₁,…,v_k)` in floating point.
fn form_on_vectors(alpha: &Form, p: &[f64], vs: &[Vec<f64>]) -> f64 {
    let mut s = 0.0;
    for (idx, c) in alpha.terms() {
        let mut m: Vec<Vec<f64>> = idx.iter().map(|&i| vs.iter().map(|v| v[i]).collect()).collect();
        let dm = det(&mut m);
        if dm != 0.0 {
            s += c.eval_f64(p) * dm;
        }
    }
    s
}

/// Result of integrating a pulled-back form over a leaf.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LeafIntegral {
    pub value: f64,
    pub error: f64,
}

/// `∫_leaf σ*α` by adaptive quadrature.
pub fn integrate_over(alpha: &Form, leaf: &LeafMap) -> Result<LeafIntegral> {
    leaf.validate(alpha.chart())?;
    if alpha.degree() != leaf.dim() {
        return Err(Error::DegreeMismatch(format!(
            "a {}-form cannot be integrated over a {}-dimensional leaf",
            alpha.degree(),
            leaf.dim()
        )));
    }
    let singular = std::cell::Cell::new(None::<Vec<f64>>);
    let eval = |params: &[f64]| {
        let (p, vs) = leaf.frame(params);
        let v = form_on_vectors(alpha, &p, &vs);
        if !v.is_finite() {
            singular.set(Some(p));
            0.0
        } else {
            v
        }
    };
    let q = match leaf.kind {
        LeafKind::Circle => integrate(|s| eval(&[s]), 0.0, 2.0 * PI, leaf.tol),
        LeafKind::Sphere => integrate_2d(|th, ph| eval(&[th, ph]), (0.0, PI), (0.0, 2.0 * PI), leaf.tol),
    };
    if let Some(p) = singular.take() {
        return Err(Error::SingularPoint(format!("{p:?}")));
    }
    // a non-integrable singularity shows up as a stalled error estimate
    if !q.value.is_finite() || q.error > 1e-6 {
        return Err(Error::SingularPoint(format!(
            "quadrature did not converge on the leaf (error estimate {:e})",
            q.error
        )));
    }
    Ok(LeafIntegral {
        value: q.value,
        error: q.error,
    })
}

/// `exp(i∫α)` together with the exponent.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Holonomy {
    pub exponent: f64,
    pub error: f64,
    pub re: f64,
    pub im: f64,
}

impl Holonomy {
    /// Whether the exponent is within `tol` of `2πℤ`.
    pub fn is_trivial(&self, tol: f64) -> bool {
        let m = (self.exponent / (2.0 * PI)).round();
        (self.exponent - 2.0 * PI * m).abs() <= tol
    }
}

impl fmt::Display for Holonomy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp(i·{:.12}) = {:.12} {:+.12}i", self.exponent, self.re, self.im)
    }
}

/// Holonomy of a cocycle presented through a global reduction witness `α`.
pub fn holonomy(spec: &CocycleSpec, leaf: &LeafMap) -> Result<Holonomy> {
    let alpha = spec.witness.as_ref().ok_or(Error::MissingWitness)?;
    if !spec.cochain.reduces_to(alpha, spec.comparison.as_ref())? {
        return Err(Error::Invalid("the witness does not reduce the cocycle".into()));
    }
    holonomy_of_form(alpha, leaf)
}

/// `exp(i∫_leaf α)` for a global form.
pub fn holonomy_of_form(alpha: &Form, leaf: &LeafMap) -> Result<Holonomy> {
    let q = integrate_over(alpha, leaf)?;
    Ok(Holonomy {
        exponent: q.value,
        error: q.error,
        re: q.value.cos(),
        im: q.value.sin(),
    })
}

/// One cycle of an integrality check.
#[derive(Clone, Debug, Serialize)]
pub struct CycleIntegral {
    pub leaf: Value,
    pub integral: f64,
    pub multiple_of_2pi: i64,
    pub integral_class: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegralityReport {
    pub cycles: Vec<CycleIntegral>,
    pub integral: bool,
    pub scope: &'static str,
}

/// Acceptance tolerance for membership in `2πℤ`.
pub const INTEGRALITY_TOL: f64 = 1e-9;

/// Tests `∫_c α ∈ 2πℤ` on each supplied cycle; the verdict is only as
/// strong as the cycles the caller supplies.
pub fn integrality_check(alpha: &Form, cycles: &[LeafMap]) -> Result<IntegralityReport> {
    let mut out = Vec::new();
    for c in cycles {
        let q = integrate_over(alpha, c)?;
        let m = (q.value / (2.0 * PI)).round();
        out.push(CycleIntegral {
            leaf: c.to_json(),
            integral: q.value,
            multiple_of_2pi: m as i64,
            integral_class: (q.value - 2.0 * PI * m).abs() <= INTEGRALITY_TOL,
        });
    }
    Ok(IntegralityReport {
        integral: out.iter().all(|c| c.integral_class),
        cycles: out,
        scope: "relative to supplied cycles",
    })
}

impl Chain for DeligneCochain {
    fn add(&self, o: &Self) -> Self {
        DeligneCochain::add(self, o).expect("cochains in the same complex")
    }
    fn neg(&self) -> Self {
        DeligneCochain::neg(self)
    }
    fn is_zero(&self) -> bool {
        DeligneCochain::is_zero(self)
    }
    fn describe(&self) -> String {
        self.to_json().to_string()
    }
}

/// The oscillator on the punctured plane in polar coordinates `(r, t)`:
/// `θ = ½r² dt` on a single patch.
pub fn oscillator_polar() -> (Arc<Chart>, CocycleSpec) {
    let chart = crate::fixtures::polar_chart();
    let theta = Form::parse("r^2/2*dt", &chart).unwrap();
    single_patch(&chart, 1, theta)
}

/// The oscillator in Cartesian coordinates: `θ = ½(x dy − y dx)`.
pub fn oscillator_cartesian() -> (Arc<Chart>, CocycleSpec) {
    let chart = crate::fixtures::r2_chart();
    let theta = Form::parse("(x*dy - y*dx)/2", &chart).unwrap();
    single_patch(&chart, 1, theta)
}

/// `(1, 0, B)` on `ℝ³∖{0}`.
pub fn sphere_gerbe() -> (Arc<Chart>, CocycleSpec) {
    let chart = crate::fixtures::punctured_r3_chart();
    let b = crate::fixtures::sphere3_b(&chart);
    single_patch(&chart, 2, b)
}

fn single_patch(chart: &Arc<Chart>, n: usize, alpha: Form) -> (Arc<Chart>, CocycleSpec) {
    let cover = Arc::new(Cover::single("M"));
    let cochain = DeligneCochain::from_global(n, &alpha, &cover).unwrap();
    (
        chart.clone(),
        CocycleSpec {
            cochain,
            witness: Some(alpha),
            comparison: None,
        },
    )
}

/// `(1, A, B)` on a two-patch cover of `ℝ³∖{0}` with `B₀ = B`,
/// `B₁ = B + dA₀₁` and, when `corrupt`, an extra `dx∧dy` on `B₁` so that
/// `B₁ − B₀ ≠ dA₀₁`.
pub fn two_patch_gerbe(corrupt: bool) -> DeligneCochain {
    let chart = crate::fixtures::punctured_r3_chart();
    let cover = Arc::new(Cover::new(vec!["U0".into(), "U1".into()], [vec![0, 1]], 2).unwrap());
    let b = crate::fixtures::sphere3_b(&chart);
    let a = Form::parse("x*y*dz", &chart).unwrap();
    let mut b1 = b.add(&a.d());
    if corrupt {
        b1 = b1.add(&Form::parse("dx*dy", &chart).unwrap());
    }
    let mut c = DeligneCochain::zero(2, 2, &chart, &cover);
    c.set_form(2, &[0], b).unwrap();
    c.set_form(2, &[1], b1).unwrap();
    c.set_form(1, &[0, 1], a).unwrap();
    c
}
