//! Scenario file format (version 1) and conversion into core types.
//!
//! A scenario is a JSON object with a `version` field, a `command` tag
//! naming the subcommand it drives, an optional `paper_ref` label echoed
//! into reports, and a command-specific payload.  Exact quantities (areas,
//! expected fluxes) travel as strings like `"2"` or `"-1/2"`.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use fluxhom::homology::{Genus, HomologyClass};
use fluxhom::mapping_class::{CurveClass, TwistLetter, TwistWord};
use fluxhom::sh1::{AreaRelation, Sh1Context, Sh1Expr, SymmetricTwist};
use fluxhom::{BigInt, BigRational};
use serde::Deserialize;

pub const SCENARIO_VERSION: u32 = 1;

#[derive(Debug, Clone, Deserialize)]
pub struct Scenario {
    pub version: u32,
    #[serde(default)]
    pub paper_ref: Option<String>,
    #[serde(flatten)]
    pub body: ScenarioBody,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum ScenarioBody {
    TwistMatrix(TwistMatrixScenario),
    CheckRelations(CheckRelationsScenario),
    Johnson(TorelliScenario),
    Contract(TorelliScenario),
    TheoremA(TorelliScenario),
    TheoremB(TorelliScenario),
    Sh1Verify(Sh1Scenario),
    FluxAnnulus(FluxAnnulusScenario),
    HypArea(HypAreaScenario),
}

impl ScenarioBody {
    pub fn command_name(&self) -> &'static str {
        match self {
            ScenarioBody::TwistMatrix(_) => "twist-matrix",
            ScenarioBody::CheckRelations(_) => "check-relations",
            ScenarioBody::Johnson(_) => "johnson",
            ScenarioBody::Contract(_) => "contract",
            ScenarioBody::TheoremA(_) => "theorem-a",
            ScenarioBody::TheoremB(_) => "theorem-b",
            ScenarioBody::Sh1Verify(_) => "sh1-verify",
            ScenarioBody::FluxAnnulus(_) => "flux-annulus",
            ScenarioBody::HypArea(_) => "hyp-area",
        }
    }
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let scenario: Scenario = serde_json::from_str(text).context("malformed scenario JSON")?;
    if scenario.version != SCENARIO_VERSION {
        bail!(
            "unsupported scenario version {} (expected {})",
            scenario.version,
            SCENARIO_VERSION
        );
    }
    Ok(scenario)
}

#[derive(Debug, Clone, Deserialize)]
pub struct NamedClass {
    pub name: String,
    pub class: Vec<i64>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TwistLetterSpec {
    pub curve: String,
    #[serde(default = "default_exp")]
    pub exp: i8,
}

fn default_exp() -> i8 {
    1
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, Deserialize)]
pub struct PushLetterSpec {
    pub push: String,
    #[serde(default = "default_exp")]
    pub exp: i8,
    #[serde(default)]
    pub conjugator: Vec<TwistLetterSpec>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TwistMatrixScenario {
    pub genus: usize,
    pub curves: Vec<NamedClass>,
    pub word: Vec<TwistLetterSpec>,
    #[serde(default)]
    pub expect_torelli: Option<bool>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct CheckRelationsScenario {
    pub genus: usize,
    pub curves: Vec<NamedClass>,
    pub checks: Vec<RelationCheckSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RelationCheckSpec {
    Commuting {
        a: String,
        b: String,
    },
    Braid {
        a: String,
        b: String,
    },
    Star {
        a: [String; 3],
        b: String,
        d: [String; 3],
    },
    Chain {
        a: [String; 2],
        b: String,
        d: [String; 2],
    },
}

#[derive(Debug, Clone, Deserialize)]
pub struct TorelliScenario {
    pub genus: usize,
    pub curves: Vec<NamedClass>,
    pub word: Vec<PushLetterSpec>,
    /// Expected sparse triples `[i, j, k, coeff]` of the Johnson value.
    #[serde(default)]
    pub expect_triples: Option<Vec<(usize, usize, usize, i64)>>,
    /// Expected contracted class.
    #[serde(default)]
    pub expect_class: Option<Vec<i64>>,
    /// Expected prediction functional (rational strings).
    #[serde(default)]
    pub expect_prediction: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Sh1RelationSpec {
    pub terms: BTreeMap<String, i64>,
    pub area: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Sh1TwistSpec {
    pub twist: String,
    #[serde(default = "default_exp")]
    pub exp: i8,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TransformExpect {
    pub target: usize,
    pub image: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Sh1Scenario {
    pub genus: usize,
    /// When true (the default) the word must act trivially on the target
    /// classes and the run is a Hamiltonian certificate; when false the
    /// targets are transformed and reduced with no certificate claim.
    #[serde(default = "default_true")]
    pub certificate: bool,
    pub symbols: Vec<NamedClass>,
    pub relations: Vec<Sh1RelationSpec>,
    pub word: Vec<Sh1TwistSpec>,
    pub targets: Vec<BTreeMap<String, i64>>,
    /// Expected flux per target: a rational string, or `null` for
    /// "not decidable by the declared relations".
    #[serde(default)]
    pub expect_flux: Option<Vec<Option<String>>>,
    /// Expected images of selected targets under the word, syntactically.
    #[serde(default)]
    pub expect_transforms: Vec<TransformExpect>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ArcSpec {
    pub coeffs: Vec<f64>,
    #[serde(default = "default_sign")]
    pub sign: i8,
}

fn default_sign() -> i8 {
    1
}

#[derive(Debug, Clone, Deserialize)]
pub struct FluxAnnulusScenario {
    pub genus: usize,
    /// One of `push-flux`, `swept`, `twist-areas`.
    pub mode: String,
    pub r: f64,
    pub ell: f64,
    /// `push`, `twist`, or `skewed-twist` (negative control).
    #[serde(default)]
    pub profile: Option<String>,
    pub arc: ArcSpec,
    #[serde(default)]
    pub t: Option<f64>,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub expected: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct HypAreaScenario {
    pub items: Vec<HypItemSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum HypItemSpec {
    Triangle {
        geodesics: [GeodesicSpec; 3],
        #[serde(default)]
        expect_degenerate: bool,
        #[serde(default)]
        expect_area: Option<f64>,
    },
    Subsurface {
        genus: usize,
        boundary: usize,
        #[serde(default)]
        expect_area: Option<f64>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum GeodesicSpec {
    Vertical { x: f64 },
    Semicircle { center: f64, radius: f64 },
}

impl GeodesicSpec {
    pub fn to_geodesic(&self) -> fluxhom::hyperbolic::Geodesic {
        match *self {
            GeodesicSpec::Vertical { x } => fluxhom::hyperbolic::Geodesic::Vertical { x },
            GeodesicSpec::Semicircle { center, radius } => {
                fluxhom::hyperbolic::Geodesic::Semicircle { center, radius }
            }
        }
    }
}

/// Parse `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let parse_int = |s: &str| -> Result<BigInt> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|e| anyhow!("bad integer `{s}`: {e}"))
    };
    match text.split_once('/') {
        Some((num, den)) => {
            let d = parse_int(den)?;
            if d == BigInt::from(0) {
                bail!("zero denominator in `{text}`");
            }
            Ok(BigRational::new(parse_int(num)?, d))
        }
        None => Ok(BigRational::from(parse_int(text)?)),
    }
}

pub fn parse_genus(genus: usize) -> Result<Genus> {
    Genus::new(genus).map_err(|e| anyhow!("{e}"))
}

pub struct CurveTable {
    pub genus: Genus,
    curves: BTreeMap<String, CurveClass>,
}

impl CurveTable {
    pub fn build(genus: Genus, named: &[NamedClass]) -> Result<Self> {
        let mut curves = BTreeMap::new();
        for item in named {
            let class = HomologyClass::from_i64(genus, &item.class)
                .map_err(|e| anyhow!("curve `{}`: {e}", item.name))?;
            let curve = CurveClass::new(item.name.clone(), class)
                .map_err(|e| anyhow!("curve `{}`: {e}", item.name))?;
            if curves.insert(item.name.clone(), curve).is_some() {
                bail!("duplicate curve name `{}`", item.name);
            }
        }
        Ok(CurveTable { genus, curves })
    }

    pub fn get(&self, name: &str) -> Result<&CurveClass> {
        self.curves
            .get(name)
            .ok_or_else(|| anyhow!("unknown curve `{name}`"))
    }

    pub fn twist_word(&self, letters: &[TwistLetterSpec]) -> Result<TwistWord> {
        let mut out = Vec::with_capacity(letters.len());
        for l in letters {
            let curve = self.get(&l.curve)?.clone();
            out.push(TwistLetter::new(curve, l.exp).map_err(|e| anyhow!("{e}"))?);
        }
        Ok(TwistWord::new(out))
    }
}

pub fn build_sh1_context(genus: Genus, symbols: &[NamedClass]) -> Result<Sh1Context> {
    let mut ctx = Sh1Context::new(genus);
    for s in symbols {
        let class = HomologyClass::from_i64(genus, &s.class)
            .map_err(|e| anyhow!("symbol `{}`: {e}", s.name))?;
        ctx.declare(s.name.clone(), class)
            .map_err(|e| anyhow!("{e}"))?;
    }
    Ok(ctx)
}

pub fn build_sh1_expr(terms: &BTreeMap<String, i64>) -> Sh1Expr {
    Sh1Expr::from_terms(terms.iter().map(|(k, &v)| (k.clone(), v)))
}

pub fn build_sh1_relations(specs: &[Sh1RelationSpec]) -> Result<Vec<AreaRelation>> {
    specs
        .iter()
        .map(|r| {
            Ok(AreaRelation::new(
                build_sh1_expr(&r.terms),
                parse_rational(&r.area)?,
            ))
        })
        .collect()
}

pub fn build_sh1_word(specs: &[Sh1TwistSpec]) -> Result<Vec<SymmetricTwist>> {
    specs
        .iter()
        .map(|t| {
            if t.exp != 1 && t.exp != -1 {
                bail!("twist exponent must be +1 or -1, got {}", t.exp);
            }
            Ok(SymmetricTwist::new(t.twist.clone(), t.exp))
        })
        .collect()
}
