//! Manifests: named fixtures and the verification cases that use them.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use plectic::deligne::{self, CocycleSpec, Embedding, LeafKind};
use plectic::liegroup::LieAlgebraData;
use plectic::quantize::RadialFoliation;
use plectic::scalar::parse_rational;
use plectic::{Chart, Form, PlecticStructure};
use serde::Deserialize;
use serde_json::Value;

use crate::cases::{Identity, Needs};
use crate::CliError;

pub const THESIS_CORE: &str = include_str!("../manifests/thesis-core.json");
pub const NEGATIVE_CONTROLS: &str = include_str!("../manifests/negative-controls.json");

/// Text of a bundled manifest, addressed as `bundled:<name>`.
pub fn bundled(name: &str) -> Option<&'static str> {
    match name {
        "thesis-core" => Some(THESIS_CORE),
        "negative-controls" => Some(NEGATIVE_CONTROLS),
        _ => None,
    }
}

pub enum Fixture {
    Plectic(PlecticStructure),
    Algebra(LieAlgebraData),
    Cocycle(Arc<CocycleSpec>),
    Foliation(RadialFoliation),
}

impl Fixture {
    fn type_name(&self) -> &'static str {
        match self {
            Fixture::Plectic(_) => "plectic",
            Fixture::Algebra(_) => "lie_algebra",
            Fixture::Cocycle(_) => "cocycle",
            Fixture::Foliation(_) => "foliation",
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseSpec {
    pub id: String,
    pub identity: String,
    #[serde(default)]
    pub fixture: Option<String>,
    #[serde(default)]
    pub foliation: Option<String>,
    #[serde(default)]
    pub params: serde_json::Map<String, Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    name: String,
    seed: u64,
    #[serde(default)]
    fixtures: BTreeMap<String, Value>,
    suites: Vec<CaseSpec>,
}

pub struct Manifest {
    pub name: String,
    pub seed: u64,
    pub fixtures: BTreeMap<String, Fixture>,
    pub cases: Vec<(CaseSpec, Identity)>,
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn str_field<'a>(v: &'a Value, key: &str, ctx: &str) -> Result<&'a str, CliError> {
    v.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| input(format!("{ctx}: missing string field `{key}`")))
}

pub fn builtin_cocycle(name: &str) -> Option<CocycleSpec> {
    let bare = |c| CocycleSpec {
        cochain: c,
        witness: None,
        comparison: None,
    };
    Some(match name {
        "oscillator_polar" => deligne::oscillator_polar().1,
        "oscillator_cartesian" => deligne::oscillator_cartesian().1,
        "sphere_gerbe" => deligne::sphere_gerbe().1,
        "two_patch_gerbe" => bare(deligne::two_patch_gerbe(false)),
        "two_patch_gerbe_corrupt" => bare(deligne::two_patch_gerbe(true)),
        _ => return None,
    })
}

fn plectic_fixture(v: &Value, ctx: &str) -> Result<PlecticStructure, CliError> {
    if let Some(b) = v.get("builtin") {
        let name = b.as_str().unwrap_or_default();
        return plectic::fixtures::by_name(name)
            .ok_or_else(|| input(format!("{ctx}: unknown built-in plectic structure `{name}`")));
    }
    let names: Vec<String> = serde_json::from_value(v.get("coordinates").cloned().unwrap_or(Value::Null))
        .map_err(|_| input(format!("{ctx}: `coordinates` must be a list of names")))?;
    let mut chart = Chart::new(&names)?;
    if let Some(ex) = v.get("excluded").and_then(Value::as_str) {
        chart = chart.with_excluded_locus(ex);
    }
    let chart = Arc::new(chart);
    let omega = Form::parse(str_field(v, "omega", ctx)?, &chart)?;
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| input(format!("{ctx}: missing integer `n`")))? as usize;
    let samples = parse_points(v.get("samples"), ctx)?;
    PlecticStructure::new(&chart, omega, n, &samples)
        .map_err(|e| input(format!("{ctx}: not an {n}-plectic structure: {e}")))
}

pub fn parse_points(v: Option<&Value>, ctx: &str) -> Result<Vec<Vec<plectic::Rational>>, CliError> {
    let Some(v) = v else { return Ok(Vec::new()) };
    let rows = v
        .as_array()
        .ok_or_else(|| input(format!("{ctx}: `samples` must be a list of points")))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| input(format!("{ctx}: a point is a list of rationals")))?
                .iter()
                .map(|x| match x {
                    Value::String(s) => Ok(parse_rational(s)?),
                    Value::Number(n) => Ok(parse_rational(&n.to_string())?),
                    _ => Err(input(format!("{ctx}: coordinates are rationals"))),
                })
                .collect()
        })
        .collect()
}

pub fn parse_range(v: &Value, ctx: &str) -> Result<(plectic::Rational, plectic::Rational), CliError> {
    let pair: Vec<String> = serde_json::from_value(v.clone())
        .map_err(|_| input(format!("{ctx}: `range` is a pair of rational strings")))?;
    match &pair[..] {
        [lo, hi] => Ok((parse_rational(lo)?, parse_rational(hi)?)),
        _ => Err(input(format!("{ctx}: `range` is a pair [lo, hi]"))),
    }
}

fn foliation_fixture(v: &Value, ctx: &str) -> Result<RadialFoliation, CliError> {
    let kind = match str_field(v, "kind", ctx)? {
        "circles" => LeafKind::Circle,
        "spheres" => LeafKind::Sphere,
        o => return Err(input(format!("{ctx}: foliation kind is `circles` or `spheres`, got `{o}`"))),
    };
    let embedding = match v.get("coordinates").and_then(Value::as_str) {
        None | Some("cartesian") => Embedding::Cartesian,
        Some("polar") => Embedding::Polar,
        Some(o) => return Err(input(format!("{ctx}: unknown coordinates `{o}`"))),
    };
    let (lo, hi) = parse_range(v.get("range").unwrap_or(&Value::Null), ctx)?;
    if lo < plectic::scalar::int(0) || hi <= lo {
        return Err(input(format!("{ctx}: range must satisfy 0 ≤ lo < hi")));
    }
    Ok(RadialFoliation { kind, embedding, lo, hi })
}

fn fixture(name: &str, v: &Value) -> Result<Fixture, CliError> {
    let ctx = format!("fixture `{name}`");
    Ok(match str_field(v, "type", &ctx)? {
        "plectic" => Fixture::Plectic(plectic_fixture(v, &ctx)?),
        "lie_algebra" => Fixture::Algebra(match (v.get("builtin").and_then(Value::as_str), v.get("data")) {
            (Some("su2"), _) => LieAlgebraData::su2(),
            (Some(o), _) => return Err(input(format!("{ctx}: unknown built-in Lie algebra `{o}`"))),
            (None, Some(d)) => LieAlgebraData::from_json(d).map_err(|e| input(format!("{ctx}: {e}")))?,
            (None, None) => return Err(input(format!("{ctx}: needs `builtin` or `data`"))),
        }),
        "cocycle" => Fixture::Cocycle(Arc::new(match (v.get("builtin").and_then(Value::as_str), v.get("data")) {
            (Some(b), _) => builtin_cocycle(b).ok_or_else(|| input(format!("{ctx}: unknown built-in cocycle `{b}`")))?,
            (None, Some(d)) => CocycleSpec::from_json(d).map_err(|e| input(format!("{ctx}: {e}")))?,
            (None, None) => return Err(input(format!("{ctx}: needs `builtin` or `data`"))),
        })),
        "foliation" => Fixture::Foliation(foliation_fixture(v, &ctx)?),
        o => return Err(input(format!("{ctx}: unknown fixture type `{o}`"))),
    })
}

impl Manifest {
    /// Parses and validates: every fixture is built and checked, every
    /// reference resolves to a fixture of the right type.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawManifest = serde_json::from_str(text).map_err(|e| input(format!("manifest: {e}")))?;
        let mut fixtures = BTreeMap::new();
        for (name, v) in &raw.fixtures {
            fixtures.insert(name.clone(), fixture(name, v)?);
        }
        let mut seen = BTreeSet::new();
        let mut cases = Vec::new();
        for c in raw.suites {
            if !seen.insert(c.id.clone()) {
                return Err(input(format!("duplicate case id `{}`", c.id)));
            }
            let identity = Identity::from_name(&c.identity)
                .ok_or_else(|| input(format!("case `{}`: unknown identity `{}`", c.id, c.identity)))?;
            let needs = identity.needs();
            let check = |slot: &str, r: &Option<String>, want: Option<&str>| -> Result<(), CliError> {
                match (r, want) {
                    (None, None) => Ok(()),
                    (None, Some(w)) => Err(input(format!("case `{}`: needs a {w} `{slot}`", c.id))),
                    (Some(r), None) => Err(input(format!("case `{}`: `{slot}` = `{r}` is not used", c.id))),
                    (Some(r), Some(w)) => match fixtures.get(r) {
                        None => Err(input(format!("case `{}`: dangling fixture reference `{r}`", c.id))),
                        Some(f) if f.type_name() != w => Err(input(format!(
                            "case `{}`: fixture `{r}` is a {}, expected a {w}",
                            c.id,
                            f.type_name()
                        ))),
                        Some(_) => Ok(()),
                    },
                }
            };
            let Needs { fixture, foliation } = needs;
            check("fixture", &c.fixture, fixture)?;
            check("foliation", &c.foliation, foliation.then_some("foliation"))?;
            cases.push((c, identity));
        }
        Ok(Manifest {
            name: raw.name,
            seed: raw.seed,
            fixtures,
            cases,
        })
    }

    pub fn plectic(&self, name: &str) -> &PlecticStructure {
        match &self.fixtures[name] {
            Fixture::Plectic(p) => p,
            _ => unreachable!("validated at parse time"),
        }
    }

    pub fn algebra(&self, name: &str) -> &LieAlgebraData {
        match &self.fixtures[name] {
            Fixture::Algebra(g) => g,
            _ => unreachable!("validated at parse time"),
        }
    }

    pub fn cocycle(&self, name: &str) -> &CocycleSpec {
        match &self.fixtures[name] {
            Fixture::Cocycle(c) => c,
            _ => unreachable!("validated at parse time"),
        }
    }

    pub fn foliation(&self, name: &str) -> &RadialFoliation {
        match &self.fixtures[name] {
            Fixture::Foliation(f) => f,
            _ => unreachable!("validated at parse time"),
        }
    }
}
