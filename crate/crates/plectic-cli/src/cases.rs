//! Verification identities a manifest case can name.

use std::f64::consts::PI;
use std::sync::Arc;

use plectic::cartan::MultiVector;
use plectic::courant::{
    check_courant_axioms, embed_observable, embedding_morphism, pair_plus, preserves_splitting,
    preserves_splitting_direct, twisted_courant, CourantLie2, CourantSection,
};
use plectic::deligne::Cover;
use plectic::fixtures::{
    r3_chart, random_deligne_cochain, random_form, random_graded, random_hamiltonian, random_multivector,
    random_point, random_section,
};
use plectic::leibniz::{check_dg_leibniz, check_weak_l2a, iso_homotopy, HemistrictLie2, Strictness};
use plectic::linfty::{
    ce_delta, check_gen_jacobi, check_morphism, jacobiator_at, path_cochain, Chain, GradedElement,
    HomotopyDirection, Morphism2, Residual, SemistrictLie2,
};
use plectic::plectic::check_nplectic;
use plectic::quantize::{
    bohr_sommerfeld, oscillator_section_phase, state_dimension_bruteforce, sym_dimension_bruteforce, QuantumState,
};
use plectic::random::{random_polynomial_expr, rng, CaseRng, PolyShape};
use plectic::scalar::{parse_rational, rational_to_f64, Rational};
use plectic::{Chart, Form, HamiltonianPair, PlecticStructure};
use rand::Rng;
use serde_json::{json, Value};

use crate::manifest::{parse_points, CaseSpec, Manifest};

/// Tolerance of the numeric path identity for the central-extension cocycle.
pub const PATH_TOL: f64 = 1e-9;
/// Tolerance of Bohr–Sommerfeld quadrature re-verification.
pub const BS_TOL: f64 = plectic::quantize::VERIFY_TOL;

pub const SHAPE: PolyShape = PolyShape {
    max_degree: 2,
    max_coeff: 3,
    max_terms: 2,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    GenJacobi,
    JacobiDefect,
    BigIdentity,
    CourantAxioms,
    CourantEmbedding,
    StringLie2,
    DeligneDSquared,
    DeligneCocycle,
    BsVariety,
    SectionPhase,
    RepDimension,
    DgLeibniz,
    Wl2aHemi,
    Wl2aSemi,
    WeakIso,
    CentralExtension,
    Nplectic,
}

/// Fixture slots an identity uses.
pub struct Needs {
    pub fixture: Option<&'static str>,
    pub foliation: bool,
}

impl Identity {
    pub const ALL: [(&'static str, Identity); 17] = [
        ("gen_jacobi", Identity::GenJacobi),
        ("jacobi_defect", Identity::JacobiDefect),
        ("big_identity", Identity::BigIdentity),
        ("courant_axioms", Identity::CourantAxioms),
        ("courant_embedding", Identity::CourantEmbedding),
        ("string_lie2", Identity::StringLie2),
        ("deligne_d_squared", Identity::DeligneDSquared),
        ("deligne_cocycle", Identity::DeligneCocycle),
        ("bs_variety", Identity::BsVariety),
        ("section_phase", Identity::SectionPhase),
        ("rep_dimension", Identity::RepDimension),
        ("dg_leibniz", Identity::DgLeibniz),
        ("wl2a_hemi", Identity::Wl2aHemi),
        ("wl2a_semi", Identity::Wl2aSemi),
        ("weak_iso", Identity::WeakIso),
        ("central_extension", Identity::CentralExtension),
        ("nplectic", Identity::Nplectic),
    ];

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.iter().find(|(n, _)| *n == s).map(|(_, i)| *i)
    }

    pub fn name(self) -> &'static str {
        Self::ALL.iter().find(|(_, i)| *i == self).map(|(n, _)| *n).unwrap()
    }

    pub fn needs(self) -> Needs {
        use Identity::*;
        let fixture = match self {
            DeligneDSquared | SectionPhase | RepDimension | Nplectic => None,
            StringLie2 => Some("lie_algebra"),
            DeligneCocycle | BsVariety => Some("cocycle"),
            _ => Some("plectic"),
        };
        Needs {
            fixture,
            foliation: self == BsVariety,
        }
    }
}

/// What a case reports.
pub struct Outcome {
    pub residual: String,
    pub error_bound: Option<f64>,
    pub tolerance: Option<f64>,
    pub pass: bool,
    pub details: Value,
}

impl Outcome {
    fn exact(failures: Vec<String>, details: Value) -> Self {
        Outcome {
            pass: failures.is_empty(),
            residual: failures.into_iter().next().unwrap_or_else(|| "0".into()),
            error_bound: None,
            tolerance: None,
            details,
        }
    }
}

type CaseResult = plectic::Result<Outcome>;

struct Ctx<'a> {
    m: &'a Manifest,
    case: &'a CaseSpec,
    rng: CaseRng,
}

impl Ctx<'_> {
    fn usize_param(&self, key: &str, default: usize) -> usize {
        self.case.params.get(key).and_then(Value::as_u64).map_or(default, |v| v as usize)
    }

    fn str_param(&self, key: &str) -> Option<&str> {
        self.case.params.get(key).and_then(Value::as_str)
    }

    fn rational_param(&self, key: &str, default: &str) -> plectic::Result<Rational> {
        parse_rational(self.str_param(key).unwrap_or(default))
    }

    fn plectic(&self) -> &PlecticStructure {
        self.m.plectic(self.case.fixture.as_deref().unwrap())
    }

    fn ham(&mut self, p: &PlecticStructure) -> plectic::Result<HamiltonianPair> {
        random_hamiltonian(&mut self.rng, p, SHAPE)
    }

    fn function(&mut self, chart: &Arc<Chart>) -> Form {
        random_form(&mut self.rng, chart, 0, 2, SHAPE)
    }
}

fn record(failures: &mut Vec<String>, label: impl std::fmt::Display, rs: &[Residual]) {
    for r in rs.iter().filter(|r| !r.zero) {
        failures.push(format!("{label}: {} = {}", r.name, r.value));
    }
}

fn nonzero<C: Chain>(failures: &mut Vec<String>, label: impl std::fmt::Display, c: &C) {
    if !c.is_zero() {
        failures.push(format!("{label}: {}", c.describe()));
    }
}

/// Runs one case with its own generator seeded from `(manifest seed, id)`,
/// or from the case's own `seed` parameter when it has one.
pub fn run_case(m: &Manifest, case: &CaseSpec, identity: Identity, seed: u64) -> Outcome {
    let case_seed = match case.params.get("seed").and_then(Value::as_u64) {
        Some(s) => s,
        None => plectic::random::case_seed(seed, &case.id),
    };
    let mut ctx = Ctx {
        m,
        case,
        rng: rng(case_seed),
    };
    let r = match identity {
        Identity::GenJacobi => gen_jacobi(&mut ctx),
        Identity::JacobiDefect => jacobi_defect(&mut ctx),
        Identity::BigIdentity => big_identity(&mut ctx),
        Identity::CourantAxioms => courant_axioms(&mut ctx),
        Identity::CourantEmbedding => courant_embedding(&mut ctx),
        Identity::StringLie2 => string_lie2(&mut ctx),
        Identity::DeligneDSquared => deligne_d_squared(&mut ctx),
        Identity::DeligneCocycle => deligne_cocycle(&mut ctx),
        Identity::BsVariety => bs_variety(&mut ctx),
        Identity::SectionPhase => section_phase(&mut ctx),
        Identity::RepDimension => rep_dimension(&mut ctx),
        Identity::DgLeibniz => dg_leibniz(&mut ctx),
        Identity::Wl2aHemi => wl2a(&mut ctx, Strictness::Hemi),
        Identity::Wl2aSemi => wl2a(&mut ctx, Strictness::Semi),
        Identity::WeakIso => weak_iso(&mut ctx),
        Identity::CentralExtension => central_extension(&mut ctx),
        Identity::Nplectic => nplectic(&mut ctx),
    };
    r.unwrap_or_else(|e| Outcome {
        residual: format!("error: {e}"),
        error_bound: None,
        tolerance: None,
        pass: false,
        details: Value::Null,
    })
}

fn gen_jacobi(c: &mut Ctx) -> CaseResult {
    let p = c.plectic().clone();
    let trials = c.usize_param("trials", 20);
    let m_max = c.usize_param("m_max", p.n() + 2);
    let mut failures = Vec::new();
    for m in 1..=m_max {
        for t in 0..trials {
            let xs: Vec<GradedElement> = (0..m)
                .map(|_| {
                    let deg = if c.rng.gen_bool(0.6) { 0 } else { c.rng.gen_range(0..p.n()) };
                    random_graded(&mut c.rng, &p, deg, SHAPE)
                })
                .collect::<plectic::Result<_>>()?;
            nonzero(&mut failures, format!("m={m} tuple {t}"), &check_gen_jacobi(&p, &xs)?);
        }
    }
    Ok(Outcome::exact(failures, json!({"n": p.n(), "m_max": m_max, "tuples_per_m": trials})))
}

fn jacobi_defect(c: &mut Ctx) -> CaseResult {
    let p = c.plectic().clone();
    let trials = c.usize_param("trials", 20);
    let mut failures = Vec::new();
    for t in 0..trials {
        let (a, b, g) = (c.ham(&p)?, c.ham(&p)?, c.ham(&p)?);
        let jd = p.jacobi_defect(&a, &b, &g)?;
        nonzero(&mut failures, format!("triple {t}"), &jd.lhs.sub(&jd.rhs));
    }
    let mut details = json!({"trials": trials});
    if let Some(Value::Array(triple)) = c.case.params.get("triple") {
        let hs = triple
            .iter()
            .map(|s| p.ham_str(s.as_str().unwrap_or_default()))
            .collect::<plectic::Result<Vec<_>>>()?;
        let [a, b, g] = &hs[..] else {
            return Err(plectic::Error::Invalid("`triple` has three entries".into()));
        };
        let jd = p.jacobi_defect(a, b, g)?;
        nonzero(&mut failures, "explicit triple", &jd.lhs.sub(&jd.rhs));
        if let Some(e) = c.str_param("expected") {
            let expected = p.form(e)?;
            if jd.lhs != expected {
                failures.push(format!("explicit triple: defect {} ≠ {expected}", jd.lhs));
            }
        }
        details["explicit_defect"] = json!(jd.lhs.to_string());
    }
    Ok(Outcome::exact(failures, details))
}

fn big_identity(c: &mut Ctx) -> CaseResult {
    let p = c.plectic().clone();
    let trials = c.usize_param("trials", 10);
    let ms: Vec<usize> = match c.case.params.get("m") {
        Some(v) => serde_json::from_value(v.clone()).map_err(|_| plectic::Error::Invalid("`m` is a list".into()))?,
        None => vec![2, 3, 4],
    };
    let mut failures = Vec::new();
    for &m in &ms {
        for t in 0..trials {
            let vfs = (0..m).map(|_| Ok(c.ham(&p)?.vf)).collect::<plectic::Result<Vec<_>>>()?;
            nonzero(&mut failures, format!("m={m} list {t}"), &p.multi_contraction_identity(&vfs)?);
        }
    }
    Ok(Outcome::exact(failures, json!({"m": ms, "trials": trials})))
}

fn courant_axioms(c: &mut Ctx) -> CaseResult {
    let p = c.plectic().clone();
    let trials = c.usize_param("trials", 20);
    let mut failures = Vec::new();
    let mut names = Vec::new();
    for t in 0..trials {
        let es: Vec<CourantSection> = (0..3).map(|_| random_section(&mut c.rng, &p, SHAPE)).collect();
        let f = random_polynomial_expr(&mut c.rng, p.dim(), SHAPE);
        let g = random_polynomial_expr(&mut c.rng, p.dim(), SHAPE);
        let rs = check_courant_axioms(&p, [&es[0], &es[1], &es[2]], &f, &g)?;
        if names.is_empty() {
            names = rs.iter().map(|r| r.name.clone()).collect();
        }
        record(&mut failures, format!("triple {t}"), &rs);
        // ⟨⟦s v₁, s v₂⟧, s v₃⟩₊ = −ω(v₁,v₂,v₃)
        let vs: Vec<MultiVector> = (0..3).map(|_| random_multivector(&mut c.rng, p.chart(), 1, 2, SHAPE)).collect();
        let s = |v: &MultiVector| CourantSection::split(v.clone());
        let lhs = pair_plus(&twisted_courant(&p, &s(&vs[0]), &s(&vs[1]))?, &s(&vs[2]))?;
        let omega = p.contract(&[&vs[0], &vs[1], &vs[2]])?.as_scalar();
        nonzero(&mut failures, format!("pairing triple {t}"), &lhs.add(&omega));
    }
    Ok(Outcome::exact(failures, json!({"trials": trials, "axioms": names})))
}

fn courant_embedding(c: &mut Ctx) -> CaseResult {
    let p = c.plectic().clone();
    let trials = c.usize_param("trials", 20);
    let splits = c.usize_param("splitting_trials", 50);
    let semi = SemistrictLie2::new(&p)?;
    let cl = CourantLie2::new(&p)?;
    let m = embedding_morphism(&p, HomotopyDirection::MapThenBracket);
    let mut failures = Vec::new();
    for t in 0..trials {
        let (a, b, g) = (c.ham(&p)?, c.ham(&p)?, c.ham(&p)?);
        let f = c.function(p.chart());
        record(&mut failures, format!("triple {t}"), &check_morphism(&semi, &cl, &m, [&a, &b, &g], &f)?);
    }
    let mut preserving = 0;
    for t in 0..splits {
        // alternate embedded observables, which preserve the splitting, with generic sections
        let e = if t % 2 == 0 {
            embed_observable(&c.ham(&p)?)
        } else {
            random_section(&mut c.rng, &p, SHAPE)
        };
        let (reduced, direct) = (preserves_splitting(&p, &e)?, preserves_splitting_direct(&p, &e)?);
        if reduced != direct {
            failures.push(format!("section {t}: reduced test {reduced}, defining test {direct}"));
        }
        if t % 2 == 0 && !reduced {
            failures.push(format!("section {t}: embedded observable does not preserve the splitting"));
        }
        preserving += reduced as usize;
    }
    Ok(Outcome::exact(
        failures,
        json!({"trials": trials, "splitting_trials": splits, "preserving_sections": preserving}),
    ))
}

fn string_lie2(c: &mut Ctx) -> CaseResult {
    let g = c.m.algebra(c.case.fixture.as_deref().unwrap());
    let levels: Vec<String> = match c.case.params.get("levels") {
        Some(v) => serde_json::from_value(v.clone()).map_err(|_| plectic::Error::Invalid("`levels` is a list".into()))?,
        None => vec!["1".into()],
    };
    let mut failures = Vec::new();
    let mut per_level = Vec::new();
    for k in &levels {
        let rep = plectic::liegroup::string_iso_check(g, &parse_rational(k)?)?;
        record(&mut failures, format!("k={k}"), &rep.bracket_residuals);
        if !rep.exactly_one_sign() {
            failures.push(format!(
                "k={k}: both or neither Jacobiator sign residuals vanish (minus {}, plus {})",
                rep.minus_vanishes, rep.plus_vanishes
            ));
        }
        per_level.push(json!({
            "k": k,
            "minus_vanishes": rep.minus_vanishes,
            "plus_vanishes": rep.plus_vanishes,
            "jacobiator_sign": rep.jacobiator_sign,
        }));
    }
    Ok(Outcome::exact(failures, json!({ "levels": per_level })))
}

fn deligne_d_squared(c: &mut Ctx) -> CaseResult {
    let trials = c.usize_param("trials", 20);
    let chart = r3_chart();
    let cover = Arc::new(Cover::complete(3));
    let mut failures = Vec::new();
    for t in 0..trials {
        let n = c.rng.gen_range(1..=3);
        let deg = c.rng.gen_range(0..=1);
        let x = random_deligne_cochain(&mut c.rng, n, deg, &chart, &cover, SHAPE)?;
        let dd = x.differential()?.differential()?;
        nonzero(&mut failures, format!("cochain {t} (n={n}, t={deg})"), &dd);
    }
    Ok(Outcome::exact(failures, json!({"trials": trials, "cover": "complete nerve on 3 patches"})))
}

fn deligne_cocycle(c: &mut Ctx) -> CaseResult {
    let spec = c.m.cocycle(c.case.fixture.as_deref().unwrap());
    let chart = spec.cochain.chart().clone();
    let mut failures = Vec::new();
    for r in spec.cochain.cocycle_report()?.iter().filter(|r| !r.holds) {
        failures.push(format!("{}: {}", r.condition, r.residual));
    }
    let kappa = spec.cochain.curvature();
    let mut details = json!({"n": spec.cochain.level()});
    if let Ok(k) = &kappa {
        details["curvature"] = json!(k.to_string());
    }
    if let Some(e) = c.str_param("curvature") {
        let expected = Form::parse(e, &chart)?;
        match &kappa {
            Ok(k) if *k == expected => {}
            Ok(k) => failures.push(format!("curvature {k} ≠ {expected}")),
            Err(err) => failures.push(format!("curvature: {err}")),
        }
    }
    if let Some(e) = c.str_param("witness_differential") {
        let w = spec.witness.as_ref().ok_or(plectic::Error::MissingWitness)?;
        let expected = Form::parse(e, &chart)?;
        if w.d() != expected {
            failures.push(format!("d(witness) = {} ≠ {expected}", w.d()));
        }
        details["witness_differential"] = json!(w.d().to_string());
    }
    Ok(Outcome::exact(failures, details))
}

fn bs_variety(c: &mut Ctx) -> CaseResult {
    let spec = c.m.cocycle(c.case.fixture.as_deref().unwrap());
    let fol = c.m.foliation(c.case.foliation.as_deref().unwrap());
    let v = bohr_sommerfeld(spec, fol)?;
    let mut failures = Vec::new();
    let mut bound: f64 = 0.0;
    for l in &v.leaves {
        let err = (l.quadrature_exponent - 2.0 * PI * l.winding as f64).abs();
        bound = bound.max(err);
        if err > BS_TOL {
            failures.push(format!("leaf R = {}: quadrature off by {err:e}", l.radius));
        }
    }
    if let Some(Value::Array(exp)) = c.case.params.get("expected_radii_squared") {
        let want = exp
            .iter()
            .map(|x| parse_rational(x.as_str().unwrap_or_default()))
            .collect::<plectic::Result<Vec<_>>>()?;
        let got: Vec<Rational> = v.leaves.iter().map(|l| l.radius_sq.clone()).collect();
        if got != want {
            let show = |xs: &[Rational]| xs.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", ");
            failures.push(format!("radii² [{}] ≠ expected [{}]", show(&got), show(&want)));
        }
    }
    let pass = failures.is_empty();
    Ok(Outcome {
        residual: failures.into_iter().next().unwrap_or_else(|| "0".into()),
        error_bound: Some(bound),
        tolerance: Some(BS_TOL),
        pass,
        details: serde_json::to_value(&v).unwrap_or(Value::Null),
    })
}

fn section_phase(c: &mut Ctx) -> CaseResult {
    let h = c.rational_param("energy", "1")?;
    let expect = c.str_param("expect").unwrap_or("single-valued").to_string();
    let s = oscillator_section_phase(&h)?;
    let ok = if expect == "single-valued" {
        s.single_valued
    } else {
        s.verdict == expect
    };
    let failures = if ok {
        Vec::new()
    } else {
        vec![format!("verdict `{}`, expected `{expect}`", s.verdict)]
    };
    Ok(Outcome::exact(failures, serde_json::to_value(&s).unwrap_or(Value::Null)))
}

fn rep_dimension(c: &mut Ctx) -> CaseResult {
    let max_n = c.usize_param("max_n", 10) as u32;
    let trials = c.usize_param("trials", 20);
    let mut failures = Vec::new();
    for n in 1..=max_n {
        if sym_dimension_bruteforce(n) != n as u64 + 1 {
            failures.push(format!("Sym^{n}: {} monomials", sym_dimension_bruteforce(n)));
        }
    }
    for t in 0..trials {
        let k = c.rng.gen_range(0..=4);
        let pairs: Vec<(u32, u64)> = (0..k).map(|_| (c.rng.gen_range(1..=max_n), c.rng.gen_range(1..=5))).collect();
        let s = QuantumState::new(pairs)?;
        let brute = state_dimension_bruteforce(&s);
        if s.dimension() != brute.into() {
            failures.push(format!("state {t} ({s}): dimension {} ≠ {brute}", s.dimension()));
        }
    }
    if QuantumState::new([(0, 1)]).is_ok() {
        failures.push("the n = 0 summand was accepted".into());
    }
    let mut details = json!({"max_n": max_n, "trials": trials});
    if let Some(st) = c.str_param("state") {
        let s = QuantumState::parse(st)?;
        details["state"] = json!(s.to_string());
        details["representation"] = json!(s.to_rep());
        details["dimension"] = json!(s.dimension().to_string());
        if let Some(d) = c.case.params.get("expected_dimension").and_then(Value::as_u64) {
            if s.dimension() != d.into() {
                failures.push(format!("dimension {} ≠ {d}", s.dimension()));
            }
        }
    }
    Ok(Outcome::exact(failures, details))
}

fn dg_leibniz(c: &mut Ctx) -> CaseResult {
    let p = c.plectic().clone();
    let trials = c.usize_param("trials", 20);
    let mut failures = Vec::new();
    for t in 0..trials {
        let xs = (0..3)
            .map(|_| {
                let d = c.rng.gen_range(0..p.n());
                random_graded(&mut c.rng, &p, d, SHAPE)
            })
            .collect::<plectic::Result<Vec<_>>>()?;
        record(&mut failures, format!("triple {t}"), &check_dg_leibniz(&p, &xs[0], &xs[1], &xs[2])?);
    }
    Ok(Outcome::exact(failures, json!({"trials": trials})))
}

fn wl2a(c: &mut Ctx, s: Strictness) -> CaseResult {
    let p = c.plectic().clone();
    let trials = c.usize_param("trials", 20);
    let mut failures = Vec::new();
    let mut names = Vec::new();
    for t in 0..trials {
        let xs = (0..4).map(|_| c.ham(&p)).collect::<plectic::Result<Vec<_>>>()?;
        let (f, g) = (c.function(p.chart()), c.function(p.chart()));
        let rs = check_weak_l2a(&p, s, [&xs[0], &xs[1], &xs[2], &xs[3]], &f, &g)?;
        if names.is_empty() {
            names = rs.iter().map(|r| r.name.clone()).collect();
        }
        record(&mut failures, format!("quadruple {t}"), &rs);
    }
    Ok(Outcome::exact(failures, json!({"trials": trials, "structure": s, "equations": names})))
}

fn weak_iso(c: &mut Ctx) -> CaseResult {
    let p = c.plectic().clone();
    let trials = c.usize_param("trials", 20);
    // scaling Φ away from 1 gives the corrupted control
    let scale = c.rational_param("phi_scale", "1")?;
    let semi = SemistrictLie2::new(&p)?;
    let hemi = HemistrictLie2::new(&p)?;
    let sc = scale.clone();
    let m: Morphism2<SemistrictLie2, HemistrictLie2> = Morphism2 {
        phi0: Box::new(|x: &HamiltonianPair| Ok(x.clone())),
        phi1: Box::new(|f: &Form| Ok(f.clone())),
        big_phi: Box::new(move |a, b| Ok(iso_homotopy(a, b)?.scale_rational(&sc))),
        direction: HomotopyDirection::BracketThenMap,
    };
    let mut failures = Vec::new();
    for t in 0..trials {
        let xs = (0..3).map(|_| c.ham(&p)).collect::<plectic::Result<Vec<_>>>()?;
        let f = c.function(p.chart());
        record(&mut failures, format!("triple {t}"), &check_morphism(&semi, &hemi, &m, [&xs[0], &xs[1], &xs[2]], &f)?);
    }
    Ok(Outcome::exact(failures, json!({"trials": trials, "phi_scale": scale.to_string()})))
}

fn central_extension(c: &mut Ctx) -> CaseResult {
    let p = c.plectic().clone();
    let points = c.usize_param("points", 5);
    let quads = c.usize_param("quadruples", 10);
    let paths = c.usize_param("paths", 5);
    let mut failures = Vec::new();
    for q in 0..quads {
        let vfs = (0..4).map(|_| Ok(c.ham(&p)?.vf)).collect::<plectic::Result<Vec<_>>>()?;
        for i in 0..points {
            let x = random_point(&mut c.rng, p.dim());
            let v: Rational = ce_delta(jacobiator_at(&p, &x), &vfs, plectic::scalar::int(0))?;
            nonzero(&mut failures, format!("quadruple {q} point {i}"), &v);
        }
    }
    let mut bound: f64 = 0.0;
    for i in 0..paths {
        let (xa, ya) = (random_point(&mut c.rng, p.dim()), random_point(&mut c.rng, p.dim()));
        let (xf, yf): (Vec<f64>, Vec<f64>) = (xa.iter().map(rational_to_f64).collect(), ya.iter().map(rational_to_f64).collect());
        let vfs = (0..3).map(|_| Ok(c.ham(&p)?.vf)).collect::<plectic::Result<Vec<_>>>()?;
        let dc = ce_delta(path_cochain(&p, &xf, &yf, 1e-12), &vfs, 0.0)?;
        let jump = rational_to_f64(&(jacobiator_at(&p, &ya)(&vfs)? - jacobiator_at(&p, &xa)(&vfs)?));
        let err = (dc - jump).abs();
        bound = bound.max(err);
        if err > PATH_TOL {
            failures.push(format!("path {i}: δc − (J_y − J_x) = {err:e}"));
        }
    }
    let pass = failures.is_empty();
    Ok(Outcome {
        residual: failures.into_iter().next().unwrap_or_else(|| "0".into()),
        error_bound: Some(bound),
        tolerance: Some(PATH_TOL),
        pass,
        details: json!({"points": points, "quadruples": quads, "paths": paths}),
    })
}

fn nplectic(c: &mut Ctx) -> CaseResult {
    let names: Vec<String> = serde_json::from_value(c.case.params.get("coordinates").cloned().unwrap_or(Value::Null))
        .map_err(|_| plectic::Error::Invalid("`coordinates` is a list of names".into()))?;
    let chart = Arc::new(Chart::new(&names)?);
    let omega = Form::parse(c.str_param("omega").unwrap_or_default(), &chart)?;
    let n = c.usize_param("n", omega.degree().saturating_sub(1));
    let samples = parse_points(c.case.params.get("samples"), &c.case.id)
        .map_err(|e| plectic::Error::Invalid(e.to_string()))?;
    let r = check_nplectic(&chart, &omega, n, &samples)?;
    let mut failures = Vec::new();
    if !r.closed {
        failures.push(format!("dω = {}", omega.d()));
    }
    if !r.accepted && r.closed {
        failures.push(match &r.kernel_witness {
            Some(v) => format!("degenerate: ι_v ω = 0 for v = {v}"),
            None => format!("degenerate: generic rank {} < {}", r.generic_rank, r.dim),
        });
    }
    Ok(Outcome::exact(failures, serde_json::to_value(&r).unwrap_or(Value::Null)))
}
