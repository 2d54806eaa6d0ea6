//! Left-invariant structures on a compact simple Lie group, modelled on its
//! Lie algebra: the Cartan 3-form `ν_k`, the Lie 2-algebra of left-invariant
//! observables and the string Lie 2-algebra.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg;
use crate::linfty::{Chain, RVec, Residual, WeakLie2};
use crate::scalar::{int, parse_rational, Rational};

/// Structure constants `[e_i, e_j] = Σ_k c[i][j][k] e_k` and an invariant
/// inner product.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebraData {
    dim: usize,
    c: Vec<Vec<Vec<Rational>>>,
    ip: Vec<Vec<Rational>>,
}

impl LieAlgebraData {
    /// Validates antisymmetry, the Jacobi identity, symmetry and positive
    /// definiteness of the inner product, and ad-invariance.
    pub fn new(c: Vec<Vec<Vec<Rational>>>, ip: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = c.len();
        if dim == 0 {
            return Err(Error::Invalid("a Lie algebra needs a positive dimension".into()));
        }
        let shape_ok = c.iter().all(|r| r.len() == dim && r.iter().all(|s| s.len() == dim))
            && ip.len() == dim
            && ip.iter().all(|r| r.len() == dim);
        if !shape_ok {
            return Err(Error::DimensionMismatch("structure constants and inner product must be d×d×d and d×d".into()));
        }
        let g = LieAlgebraData { dim, c, ip };
        let basis: Vec<RVec> = (0..dim).map(|i| g.basis(i)).collect();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if g.c[i][j][k] != -g.c[j][i][k].clone() {
                        return Err(Error::Invalid(format!("c[{i}][{j}] is not antisymmetric")));
                    }
                }
                if g.ip[i][j] != g.ip[j][i] {
                    return Err(Error::Invalid("inner product is not symmetric".into()));
                }
            }
        }
        for x in &basis {
            for y in &basis {
                for z in &basis {
                    let jac = g
                        .bracket(x, &g.bracket(y, z))
                        .add(&g.bracket(y, &g.bracket(z, x)))
                        .add(&g.bracket(z, &g.bracket(x, y)));
                    if !jac.is_zero() {
                        return Err(Error::Invalid("structure constants violate the Jacobi identity".into()));
                    }
                    let inv = g.inner(&g.bracket(x, y), z) + g.inner(y, &g.bracket(x, z));
                    if !inv.is_zero() {
                        return Err(Error::Invalid("inner product is not ad-invariant".into()));
                    }
                }
            }
        }
        // Sylvester: leading principal minors positive
        for m in 1..=dim {
            let minor: Vec<Vec<Rational>> = g.ip[..m].iter().map(|r| r[..m].to_vec()).collect();
            if linalg::det_rational(&minor) <= int(0) {
                return Err(Error::Invalid("inner product is not positive definite".into()));
            }
        }
        Ok(g)
    }

    /// `su(2)` with `c_{ij}^k = ε_{ijk}` and the identity inner product.
    pub fn su2() -> Self {
        let mut c = vec![vec![vec![int(0); 3]; 3]; 3];
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            c[i][j][k] = int(1);
            c[j][i][k] = int(-1);
        }
        let ip = (0..3)
            .map(|i| (0..3).map(|j| if i == j { int(1) } else { int(0) }).collect())
            .collect();
        LieAlgebraData::new(c, ip).expect("su(2) is valid")
    }

    /// The abelian algebra of the given dimension (fails nondegeneracy).
    pub fn abelian(dim: usize) -> Self {
        let c = vec![vec![vec![int(0); dim]; dim]; dim];
        let ip = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { int(1) } else { int(0) }).collect())
            .collect();
        LieAlgebraData::new(c, ip).expect("abelian algebra is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self, i: usize) -> RVec {
        let mut v = vec![int(0); self.dim];
        v[i] = int(1);
        RVec(v)
    }

    pub fn bracket(&self, x: &RVec, y: &RVec) -> RVec {
        let mut out = vec![int(0); self.dim];
        for i in 0..self.dim {
            if x.0[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y.0[j].is_zero() {
                    continue;
                }
                let xy = &x.0[i] * &y.0[j];
                for (k, o) in out.iter_mut().enumerate() {
                    *o += &xy * &self.c[i][j][k];
                }
            }
        }
        RVec(out)
    }

    pub fn inner(&self, x: &RVec, y: &RVec) -> Rational {
        let mut s = int(0);
        for i in 0..self.dim {
            for j in 0..self.dim {
                s += &x.0[i] * &self.ip[i][j] * &y.0[j];
            }
        }
        s
    }

    /// `v ↦ k⟨v, ·⟩ ∈ 𝔤*`.
    pub fn flat(&self, k: &Rational, v: &RVec) -> RVec {
        RVec((0..self.dim).map(|j| k * self.inner(v, &self.basis(j))).collect())
    }

    pub fn to_json(&self) -> Value {
        let q = |r: &Rational| Value::String(r.to_string());
        json!({
            "dim": self.dim,
            "c": self.c.iter().map(|a| a.iter().map(|b| b.iter().map(q).collect::<Vec<_>>()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "ip": self.ip.iter().map(|a| a.iter().map(q).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        fn rat(v: &Value) -> Result<Rational> {
            match v {
                Value::String(s) => parse_rational(s),
                Value::Number(n) => n
                    .as_i64()
                    .map(int)
                    .ok_or_else(|| Error::Invalid(format!("`{n}` is not an integer"))),
                _ => Err(Error::Invalid("expected a rational".into())),
            }
        }
        fn arr(v: &Value) -> Result<&Vec<Value>> {
            v.as_array()
                .ok_or_else(|| Error::Invalid("expected an array".into()))
        }
        let c = arr(&v["c"])?
            .iter()
            .map(|a| arr(a)?.iter().map(|b| arr(b)?.iter().map(rat).collect()).collect())
            .collect::<Result<Vec<Vec<Vec<Rational>>>>>()?;
        let ip = arr(&v["ip"])?
            .iter()
            .map(|a| arr(a)?.iter().map(rat).collect())
            .collect::<Result<Vec<Vec<Rational>>>>()?;
        let g = LieAlgebraData::new(c, ip)?;
        if let Some(d) = v.get("dim").and_then(Value::as_u64) {
            if d as usize != g.dim {
                return Err(Error::DimensionMismatch(format!("dim {d} disagrees with the data")));
            }
        }
        Ok(g)
    }
}

/// A trilinear form given on basis triples.
#[derive(Clone, Debug, PartialEq)]
pub struct Trilinear {
    dim: usize,
    values: Vec<Rational>,
}

impl Trilinear {
    pub fn at(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.values[(i * self.dim + j) * self.dim + k]
    }

    pub fn eval(&self, x: &RVec, y: &RVec, z: &RVec) -> Rational {
        let d = self.dim;
        let mut s = int(0);
        for i in 0..d {
            for j in 0..d {
                if x.0[i].is_zero() || y.0[j].is_zero() {
                    continue;
                }
                for k in 0..d {
                    s += &x.0[i] * &y.0[j] * &z.0[k] * self.at(i, j, k);
                }
            }
        }
        s
    }

    pub fn is_antisymmetric(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    let v = self.at(i, j, k);
                    v == &-self.at(j, i, k).clone() && v == &-self.at(i, k, j).clone()
                })
            })
        })
    }

    /// `x ↦ ν(x,·,·)` is injective.
    pub fn is_nondegenerate(&self) -> bool {
        let d = self.dim;
        let rows: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                (0..d)
                    .flat_map(|j| (0..d).map(move |k| (j, k)))
                    .map(|(j, k)| self.at(i, j, k).clone())
                    .collect()
            })
            .collect();
        linalg::rank_rational(&rows, d * d) == d
    }
}

/// `ν_k(x,y,z) = k⟨x,[y,z]⟩`.
pub fn cartan_3form(g: &LieAlgebraData, k: &Rational) -> Result<Trilinear> {
    if k.is_zero() {
        return Err(Error::Invalid("the level k must be nonzero".into()));
    }
    let d = g.dim;
    let mut values = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            for l in 0..d {
                values.push(k * g.inner(&g.basis(i), &g.bracket(&g.basis(j), &g.basis(l))));
            }
        }
    }
    Ok(Trilinear { dim: d, values })
}

/// The unique `v` with `α = k⟨v,·⟩`.
pub fn left_inv_ham_vf(g: &LieAlgebraData, k: &Rational, alpha: &RVec) -> Result<RVec> {
    if alpha.0.len() != g.dim {
        return Err(Error::DimensionMismatch("covector length differs from dim 𝔤".into()));
    }
    let a: Vec<Vec<Rational>> = (0..g.dim)
        .map(|j| (0..g.dim).map(|i| k * &g.ip[i][j]).collect())
        .collect();
    linalg::solve_rational(&a, &alpha.0)
        .map(RVec)
        .ok_or_else(|| Error::Invalid("singular Gram matrix".into()))
}

/// The Lie 2-algebra of left-invariant observables: `𝔤*` in degree 0 and
/// `ℝ` in degree 1 with zero differential.
pub struct LeftInvariantLie2 {
    pub g: LieAlgebraData,
    pub k: Rational,
    nu: Trilinear,
}

impl LeftInvariantLie2 {
    pub fn new(g: LieAlgebraData, k: Rational) -> Result<Self> {
        let nu = cartan_3form(&g, &k)?;
        if !nu.is_nondegenerate() {
            return Err(Error::Invalid("ν_k is degenerate".into()));
        }
        Ok(LeftInvariantLie2 { g, k, nu })
    }

    pub fn nu(&self) -> &Trilinear {
        &self.nu
    }

    pub fn ham(&self, alpha: &RVec) -> Result<RVec> {
        left_inv_ham_vf(&self.g, &self.k, alpha)
    }
}

impl WeakLie2 for LeftInvariantLie2 {
    type C0 = RVec;
    type C1 = Rational;
    fn d(&self, _f: &Rational) -> Result<RVec> {
        Ok(self.zero0())
    }
    /// `{α,β} = ν_k(v_α, v_β, ·)`.
    fn bracket(&self, a: &RVec, b: &RVec) -> Result<RVec> {
        let (va, vb) = (self.ham(a)?, self.ham(b)?);
        Ok(RVec(
            (0..self.g.dim)
                .map(|l| self.nu.eval(&va, &vb, &self.g.basis(l)))
                .collect(),
        ))
    }
    fn bracket_01(&self, _x: &RVec, _f: &Rational) -> Result<Rational> {
        Ok(int(0))
    }
    fn bracket_10(&self, _f: &Rational, _x: &RVec) -> Result<Rational> {
        Ok(int(0))
    }
    fn alternator(&self, _x: &RVec, _y: &RVec) -> Result<Rational> {
        Ok(int(0))
    }
    /// `J(α,β,γ) = −ν_k(v_α, v_β, v_γ)`.
    fn jacobiator(&self, a: &RVec, b: &RVec, c: &RVec) -> Result<Rational> {
        Ok(-self.nu.eval(&self.ham(a)?, &self.ham(b)?, &self.ham(c)?))
    }
    fn zero0(&self) -> RVec {
        RVec(vec![int(0); self.g.dim])
    }
    fn zero1(&self) -> Rational {
        int(0)
    }
}

/// The string Lie 2-algebra `𝔤_k`: `𝔤` in degree 0, `ℝ` in degree 1, the Lie
/// bracket, and `j(x,y,z) = k⟨x,[y,z]⟩`.
pub struct StringLie2 {
    pub g: LieAlgebraData,
    pub k: Rational,
}

impl WeakLie2 for StringLie2 {
    type C0 = RVec;
    type C1 = Rational;
    fn d(&self, _f: &Rational) -> Result<RVec> {
        Ok(self.zero0())
    }
    fn bracket(&self, x: &RVec, y: &RVec) -> Result<RVec> {
        Ok(self.g.bracket(x, y))
    }
    fn bracket_01(&self, _x: &RVec, _f: &Rational) -> Result<Rational> {
        Ok(int(0))
    }
    fn bracket_10(&self, _f: &Rational, _x: &RVec) -> Result<Rational> {
        Ok(int(0))
    }
    fn alternator(&self, _x: &RVec, _y: &RVec) -> Result<Rational> {
        Ok(int(0))
    }
    fn jacobiator(&self, x: &RVec, y: &RVec, z: &RVec) -> Result<Rational> {
        Ok(&self.k * self.g.inner(x, &self.g.bracket(y, z)))
    }
    fn zero0(&self) -> RVec {
        RVec(vec![int(0); self.g.dim])
    }
    fn zero1(&self) -> Rational {
        int(0)
    }
}

/// Outcome of comparing `𝔤_k` with the left-invariant Lie 2-algebra via
/// `φ(v) = k⟨v,·⟩`.
#[derive(Clone, Debug, Serialize)]
pub struct StringIsoReport {
    /// `{φ(e_i), φ(e_j)} − φ([e_i, e_j])` on every basis pair.
    pub bracket_residuals: Vec<Residual>,
    /// `J(φx,φy,φz) − j(x,y,z)` on every basis triple vanishes.
    pub minus_vanishes: bool,
    /// `J(φx,φy,φz) + j(x,y,z)` on every basis triple vanishes.
    pub plus_vanishes: bool,
    /// The sign `s` with `J∘φ^{⊗3} = s·j`, when exactly one residual vanishes.
    pub jacobiator_sign: Option<i32>,
}

impl StringIsoReport {
    pub fn brackets_intertwine(&self) -> bool {
        self.bracket_residuals.iter().all(|r| r.zero)
    }

    pub fn exactly_one_sign(&self) -> bool {
        self.minus_vanishes != self.plus_vanishes
    }
}

pub fn string_iso_check(g: &LieAlgebraData, k: &Rational) -> Result<StringIsoReport> {
    let left = LeftInvariantLie2::new(g.clone(), k.clone())?;
    let string = StringLie2 {
        g: g.clone(),
        k: k.clone(),
    };
    let d = g.dim;
    let phi = |v: &RVec| g.flat(k, v);
    let mut bracket_residuals = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let (ei, ej) = (g.basis(i), g.basis(j));
            let r = left.bracket(&phi(&ei), &phi(&ej))?.sub(&phi(&string.bracket(&ei, &ej)?));
            bracket_residuals.push(Residual::of(format!("bracket_e{}_e{}", i + 1, j + 1), &r));
        }
    }
    let (mut minus, mut plus) = (true, true);
    for i in 0..d {
        for j in 0..d {
            for l in 0..d {
                let (x, y, z) = (g.basis(i), g.basis(j), g.basis(l));
                let jl = left.jacobiator(&phi(&x), &phi(&y), &phi(&z))?;
                let js = string.jacobiator(&x, &y, &z)?;
                minus &= (&jl - &js).is_zero();
                plus &= (&jl + &js).is_zero();
            }
        }
    }
    let jacobiator_sign = match (minus, plus) {
        (true, false) => Some(1),
        (false, true) => Some(-1),
        _ => None,
    };
    Ok(StringIsoReport {
        bracket_residuals,
        minus_vanishes: minus,
        plus_vanishes: plus,
        jacobiator_sign,
    })
}

/// Convenience: `k` as a rational.
pub fn level(k: i64) -> Rational {
    int(k)
}
