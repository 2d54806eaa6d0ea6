//! Bohr–Sommerfeld varieties of radial foliations and the bookkeeping of
//! quantum states as `SU(2)` representations.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cartan::Form;
use crate::deligne::{holonomy_of_form, CocycleSpec, Embedding, LeafKind, LeafMap};
use crate::error::{Error, Result};
use crate::plectic::{PlecticStructure, PointSubspace, SubspaceClass};
use crate::scalar::{int, rat, rational_to_f64, Rational, ScalarExpr};

/// Acceptance tolerance for quadrature re-verification.
pub const VERIFY_TOL: f64 = 1e-9;

/// Leaves `r = R` around the origin, for `lo < R ≤ hi`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialFoliation {
    pub kind: LeafKind,
    pub embedding: Embedding,
    pub lo: Rational,
    pub hi: Rational,
}

impl RadialFoliation {
    pub fn circles(lo: Rational, hi: Rational) -> Self {
        RadialFoliation {
            kind: LeafKind::Circle,
            embedding: Embedding::Cartesian,
            lo,
            hi,
        }
    }

    pub fn polar_circles(lo: Rational, hi: Rational) -> Self {
        RadialFoliation {
            embedding: Embedding::Polar,
            ..Self::circles(lo, hi)
        }
    }

    pub fn spheres(lo: Rational, hi: Rational) -> Self {
        RadialFoliation {
            kind: LeafKind::Sphere,
            embedding: Embedding::Cartesian,
            lo,
            hi,
        }
    }

    fn validate(&self, dim: usize) -> Result<()> {
        if self.lo < int(0) || self.hi <= self.lo {
            return Err(Error::Invalid("radius range must satisfy 0 ≤ lo < hi".into()));
        }
        match (self.kind, self.embedding, dim) {
            (LeafKind::Circle, _, 2) | (LeafKind::Sphere, Embedding::Cartesian, 3) => Ok(()),
            _ => Err(Error::Unsupported(format!(
                "{:?} foliation in {:?} coordinates on a {dim}-dimensional chart",
                self.kind, self.embedding
            ))),
        }
    }

    /// The leaf of squared radius `r2`.
    pub fn leaf(&self, radius_sq: Rational, dim: usize) -> LeafMap {
        LeafMap {
            kind: self.kind,
            radius_sq,
            center: vec![int(0); dim],
            embedding: self.embedding,
            tol: 1e-11,
        }
    }

    /// The tangent space of the leaf through a point (Cartesian leaves).
    pub fn tangent_space(&self, point: &[Rational]) -> Result<PointSubspace> {
        let basis = match (self.kind, self.embedding) {
            (LeafKind::Circle, Embedding::Polar) => vec![vec![int(0), int(1)]],
            (LeafKind::Circle, Embedding::Cartesian) => vec![vec![-point[1].clone(), point[0].clone()]],
            (LeafKind::Sphere, _) => {
                // two independent vectors orthogonal to the position
                let p = point;
                let cands = [
                    vec![-p[1].clone(), p[0].clone(), int(0)],
                    vec![-p[2].clone(), int(0), p[0].clone()],
                    vec![int(0), -p[2].clone(), p[1].clone()],
                ];
                let mut basis: Vec<Vec<Rational>> = Vec::new();
                for c in cands {
                    let mut trial = basis.clone();
                    trial.push(c.clone());
                    if crate::linalg::rank_rational(&trial, 3) == trial.len() {
                        basis = trial;
                    }
                    if basis.len() == 2 {
                        break;
                    }
                }
                basis
            }
        };
        PointSubspace::new(point.to_vec(), basis)
    }

    /// Classifies the leaf tangent space at each point with `k = n`.
    pub fn classify_leaves(&self, p: &PlecticStructure, points: &[Vec<Rational>]) -> Result<Vec<SubspaceClass>> {
        points
            .iter()
            .map(|pt| p.classify_subspace(&self.tangent_space(pt)?, p.n()))
            .collect()
    }
}

/// Homogeneity degree `w` with `δ_λ*α = λ^w α` under the dilation of the
/// radial coordinates, checked exactly at `λ = 2` and `λ = 3`.
pub fn dilation_weight(alpha: &Form, embedding: Embedding) -> Option<i32> {
    let c = alpha.chart();
    let dim = c.dim();
    let scaled = |lam: i64| -> Option<Form> {
        let radial: Vec<bool> = match embedding {
            Embedding::Cartesian => vec![true; dim],
            Embedding::Polar => (0..dim).map(|i| i == 0).collect(),
        };
        let subs: Vec<ScalarExpr> = (0..dim)
            .map(|i| {
                let v = ScalarExpr::var(i);
                if radial[i] {
                    v.scale(&int(lam))
                } else {
                    v
                }
            })
            .collect();
        let mut terms = Vec::new();
        for (idx, coeff) in alpha.terms() {
            let k = idx.iter().filter(|&&i| radial[i]).count() as u32;
            let pulled = coeff.compose(&subs).ok()?.scale(&int(lam).pow(k as i32));
            terms.push((idx.clone(), pulled));
        }
        Form::from_terms(c, alpha.degree(), terms).ok()
    };
    let (a2, a3) = (scaled(2)?, scaled(3)?);
    (-12..=12).find(|&w: &i32| {
        a2 == alpha.scale_rational(&rat(2, 1).pow(w)) && a3 == alpha.scale_rational(&rat(3, 1).pow(w))
    })
}

/// Recognizes `x` as `p/q` with `q ≤ max_den` to within `tol`.
fn recognize_rational(x: f64, max_den: i64, tol: f64) -> Option<Rational> {
    (1..=max_den).find_map(|d| {
        let n = (x * d as f64).round();
        ((x - n / d as f64).abs() < tol).then(|| rat(n as i64, d))
    })
}

/// Exact square root of a nonnegative rational when it exists.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// `p/q` or `sqrt(p/q)`.
pub fn radius_text(radius_sq: &Rational) -> String {
    match rational_sqrt(radius_sq) {
        Some(r) => r.to_string(),
        None => format!("sqrt({radius_sq})"),
    }
}

/// One Bohr–Sommerfeld leaf.
#[derive(Clone, Debug, Serialize)]
pub struct BSLeaf {
    pub radius: String,
    pub radius_squared: String,
    /// The integer `m` with exponent `2πm`.
    pub winding: i64,
    pub holonomy_exponent: String,
    pub quadrature_exponent: f64,
    pub quadrature_error: f64,
    pub verified: bool,
    #[serde(skip)]
    pub radius_sq: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct BSVariety {
    pub leaves: Vec<BSLeaf>,
    pub condition: String,
    pub closed_form: String,
}

impl BSVariety {
    pub fn all_verified(&self) -> bool {
        self.leaves.iter().all(|l| l.verified)
    }
}

/// The leaves `lo < R ≤ hi` with trivial holonomy.
///
/// The leaf integral is `I(R) = R^w · I(1)` with `w` the exact dilation
/// weight of the witness; `I(1)/2π = q` is identified as a small-denominator
/// rational, so the condition `R^w q ∈ ℤ` is solved exactly. Every leaf is
/// re-verified by quadrature.
pub fn bohr_sommerfeld(spec: &CocycleSpec, foliation: &RadialFoliation) -> Result<BSVariety> {
    let alpha = spec.witness.as_ref().ok_or(Error::MissingWitness)?;
    if !spec.cochain.reduces_to(alpha, spec.comparison.as_ref())? {
        return Err(Error::Invalid("the witness does not reduce the cocycle".into()));
    }
    bohr_sommerfeld_form(alpha, foliation)
}

pub fn bohr_sommerfeld_form(alpha: &Form, foliation: &RadialFoliation) -> Result<BSVariety> {
    let dim = alpha.chart().dim();
    foliation.validate(dim)?;
    let w = dilation_weight(alpha, foliation.embedding)
        .ok_or_else(|| Error::Unsupported("the witness is not homogeneous under radial dilation".into()))?;
    let unit = holonomy_of_form(alpha, &foliation.leaf(int(1), dim))?;
    let q = recognize_rational(unit.exponent / (2.0 * PI), 720, 1e-10)
        .ok_or_else(|| Error::Unsupported(format!("∫ over the unit leaf = {} is not a rational multiple of 2π", unit.exponent)))?;
    if q.is_zero() {
        return Err(Error::Unsupported("every leaf has trivial holonomy".into()));
    }
    let qa = q.abs();
    let sign: i64 = if q.is_negative() { -1 } else { 1 };
    // R^w = m / |q|, on the squared radius
    let radius_sq_of = |m: i64| -> Result<Rational> {
        let rw = rat(m, 1) / &qa;
        match w {
            1 => Ok(&rw * &rw),
            2 => Ok(rw),
            _ => Err(Error::Unsupported(format!("leaf integrals of weight {w} are not solved in closed form"))),
        }
    };
    let (lo2, hi2) = (&foliation.lo * &foliation.lo, &foliation.hi * &foliation.hi);
    let mut leaves = Vec::new();
    let mut m = 1i64;
    loop {
        let r2 = radius_sq_of(m)?;
        if r2 > hi2 {
            break;
        }
        if r2 > lo2 {
            let h = holonomy_of_form(alpha, &foliation.leaf(r2.clone(), dim))?;
            let target = 2.0 * PI * (sign * m) as f64;
            leaves.push(BSLeaf {
                radius: radius_text(&r2),
                radius_squared: r2.to_string(),
                winding: sign * m,
                holonomy_exponent: format!("2*pi*{}", sign * m),
                quadrature_exponent: h.exponent,
                quadrature_error: h.error,
                verified: (h.exponent - target).abs() <= VERIFY_TOL,
                radius_sq: r2,
            });
        }
        m += 1;
    }
    let var = match foliation.kind {
        LeafKind::Circle => "∮θ",
        LeafKind::Sphere => "∫B",
    };
    Ok(BSVariety {
        leaves,
        condition: format!("{var} ∈ 2πℤ, i.e. hol = 1 on the leaf"),
        closed_form: format!("{var}(R) = 2π·({q})·R^{w}"),
    })
}

/// The covariantly constant section `ψ(t) = exp(−i H t)` on the leaf `H = h`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SectionPhase {
    pub energy: String,
    pub winding: Option<i64>,
    pub single_valued: bool,
    pub verdict: String,
}

pub fn oscillator_section_phase(h: &Rational) -> Result<SectionPhase> {
    if !h.is_positive() {
        return Err(Error::Invalid("the leaf H = h needs h > 0: the origin is excluded".into()));
    }
    // ψ(t + 2π)/ψ(t) = exp(−2πi h)
    Ok(if h.is_integer() {
        let n = h.to_integer().to_i64().unwrap_or(i64::MAX);
        SectionPhase {
            energy: h.to_string(),
            winding: Some(-n),
            single_valued: true,
            verdict: format!("psi_{n}(t) = exp(-{n} i t) is single-valued"),
        }
    } else {
        SectionPhase {
            energy: h.to_string(),
            winding: None,
            single_valued: false,
            verdict: "no single-valued solution".into(),
        }
    })
}

/// Isomorphism class of a quantum state: leaf label `n ≥ 1` with
/// multiplicity `k_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct QuantumState {
    multiplicities: BTreeMap<u32, u64>,
}

impl QuantumState {
    pub fn new(m: impl IntoIterator<Item = (u32, u64)>) -> Result<Self> {
        let mut multiplicities = BTreeMap::new();
        for (n, k) in m {
            if n == 0 {
                return Err(Error::Invalid("n = 0 is not a leaf of the variety".into()));
            }
            if k > 0 {
                *multiplicities.entry(n).or_insert(0) += k;
            }
        }
        Ok(QuantumState { multiplicities })
    }

    /// Parses `n:k,n:k,…`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("state must look like `1:2,2:1`, got `{s}`"));
        let s = s.trim();
        if s.is_empty() {
            return Ok(QuantumState::default());
        }
        let pairs = s
            .split(',')
            .map(|p| {
                let (n, k) = p.split_once(':').ok_or_else(bad)?;
                Ok((n.trim().parse().map_err(|_| bad())?, k.trim().parse().map_err(|_| bad())?))
            })
            .collect::<Result<Vec<(u32, u64)>>>()?;
        QuantumState::new(pairs)
    }

    pub fn multiplicities(&self) -> &BTreeMap<u32, u64> {
        &self.multiplicities
    }

    pub fn dimension(&self) -> BigInt {
        self.multiplicities
            .iter()
            .map(|(&n, &k)| BigInt::from(k) * BigInt::from(n as u64 + 1))
            .sum()
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        let mut m = self.multiplicities.clone();
        for (&n, &k) in &o.multiplicities {
            *m.entry(n).or_insert(0) += k;
        }
        QuantumState { multiplicities: m }
    }

    /// `⊕ k_n · Symⁿ(ℂ²*)`.
    pub fn to_rep(&self) -> String {
        if self.multiplicities.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .multiplicities
            .iter()
            .map(|(n, k)| {
                if *k == 1 {
                    format!("Sym^{n}(C^2*)")
                } else {
                    format!("{k}*Sym^{n}(C^2*)")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for QuantumState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.multiplicities.iter().map(|(n, k)| format!("{n}:{k}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Counts the monomials of degree `n` in the two coordinates of `ℂ²*` by
/// enumerating exponent pairs.
pub fn sym_dimension_bruteforce(n: u32) -> u64 {
    let mut c = 0;
    for a in 0..=n {
        for b in 0..=n {
            if a + b == n {
                c += 1;
            }
        }
    }
    c
}

/// `Σ k_n · #monomials(Symⁿ)`, the brute-force counterpart of
/// [`QuantumState::dimension`].
pub fn state_dimension_bruteforce(s: &QuantumState) -> u64 {
    s.multiplicities.iter().map(|(&n, &k)| k * sym_dimension_bruteforce(n)).sum()
}

/// The float value of a squared radius, for reports.
pub fn radius_f64(radius_sq: &Rational) -> f64 {
    rational_to_f64(radius_sq).sqrt()
}
