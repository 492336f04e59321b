//! Run configuration: the TOML document, its defaults and its validation.

use std::path::PathBuf;

use phib_core::algebra::{PhiSpec, TNorm};
use phib_core::findim::{default_c_grid, default_resolution};
use phib_core::fuzzynorm::PowerForm;
use phib_core::{CheckId, CrispNorm, FuzzyNormSpec, NormKind};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormKindConfig {
    /// `t / (t + base(x)^p)` with `K = 2^p`, `φ = |·|^p`.
    Rational,
    /// `exp(−base(x)^p / t)` with `K = 2^p`, `φ = |·|^p`.
    Exponential,
    /// The rational form with a free exponent, `K` and `φ`.
    CustomRational,
    /// The exponential form with a free exponent, `K` and `φ`.
    CustomExponential,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhiConfig {
    Abs,
    AbsPower(f64),
    RationalEven(u32),
}

impl PhiConfig {
    fn build(self) -> phib_core::Result<PhiSpec> {
        match self {
            PhiConfig::Abs => Ok(PhiSpec::Abs),
            PhiConfig::AbsPower(p) => PhiSpec::abs_power(p),
            PhiConfig::RationalEven(n) => PhiSpec::rational_even(n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TNormConfig {
    #[serde(rename = "standard-intersection", alias = "min", alias = "minimum")]
    Minimum,
    #[serde(rename = "algebraic-product", alias = "product")]
    Product,
    #[serde(rename = "bounded-difference", alias = "lukasiewicz")]
    Lukasiewicz,
}

impl TNormConfig {
    fn build(self) -> TNorm {
        match self {
            TNormConfig::Minimum => TNorm::Minimum,
            TNormConfig::Product => TNorm::Product,
            TNormConfig::Lukasiewicz => TNorm::Lukasiewicz,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormConfig {
    pub kind: NormKindConfig,
    /// Built-in kinds only; defaults to 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    /// Custom kinds only; required there.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<f64>,
    /// Defaults to `2^p` for built-in kinds and 1 for custom ones.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<PhiConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tnorm: Option<TNormConfig>,
    #[serde(default = "default_base")]
    pub base: CrispNorm,
    #[serde(default = "default_dim")]
    pub dim: usize,
}

fn default_base() -> CrispNorm {
    CrispNorm::L2
}

fn default_dim() -> usize {
    1
}

impl NormConfig {
    /// A built-in example norm with every other field at its default.
    pub fn example(kind: NormKindConfig, p: f64, dim: usize) -> Self {
        NormConfig {
            kind,
            p: Some(p),
            exponent: None,
            k: None,
            phi: None,
            tnorm: None,
            base: CrispNorm::L2,
            dim,
        }
    }

    /// Builds the norm. Call on a resolved config.
    pub fn build(&self) -> Result<FuzzyNormSpec, CliError> {
        let phi = self
            .phi
            .unwrap_or(PhiConfig::Abs)
            .build()
            .map_err(|e| invalid("norm.phi", e))?;
        let tnorm = self.tnorm.unwrap_or(TNormConfig::Minimum).build();
        let k = self.k.unwrap_or(1.0);
        let spec = match self.kind {
            NormKindConfig::Rational | NormKindConfig::Exponential => {
                let p = self.p.unwrap_or(1.0);
                let kind = if self.kind == NormKindConfig::Rational {
                    NormKind::Rational { p }
                } else {
                    NormKind::Exponential { p }
                };
                FuzzyNormSpec::new(kind, k, phi, tnorm, self.base)
            }
            NormKindConfig::CustomRational | NormKindConfig::CustomExponential => {
                let form = if self.kind == NormKindConfig::CustomRational {
                    PowerForm::Rational
                } else {
                    PowerForm::Exponential
                };
                FuzzyNormSpec::power_form(form, self.exponent.unwrap_or(1.0), k, phi, tnorm, self.base)
            }
        };
        spec.map_err(|e| invalid("norm", e))
    }

    fn resolve(mut self) -> Result<Self, CliError> {
        let builtin = matches!(self.kind, NormKindConfig::Rational | NormKindConfig::Exponential);
        if self.dim == 0 {
            return Err(invalid("norm.dim", "dimension must be at least 1"));
        }
        if builtin {
            if self.exponent.is_some() {
                return Err(invalid("norm.exponent", "only custom kinds take an exponent; use p"));
            }
            let p = self.p.unwrap_or(1.0);
            if !(p.is_finite() && p > 0.0 && p <= 1.0) {
                return Err(invalid("norm.p", format!("p must lie in (0,1], got {p}")));
            }
            self.p = Some(p);
            self.k.get_or_insert(2f64.powf(p));
            self.phi.get_or_insert(PhiConfig::AbsPower(p));
            self.tnorm.get_or_insert(if self.kind == NormKindConfig::Rational {
                TNormConfig::Minimum
            } else {
                TNormConfig::Product
            });
        } else {
            if self.p.is_some() {
                return Err(invalid("norm.p", "custom kinds take exponent, not p"));
            }
            let Some(q) = self.exponent else {
                return Err(invalid("norm.exponent", "custom kinds require an exponent"));
            };
            if !(q.is_finite() && q > 0.0) {
                return Err(invalid("norm.exponent", format!("exponent must be positive, got {q}")));
            }
            self.k.get_or_insert(1.0);
            self.phi.get_or_insert(PhiConfig::Abs);
            self.tnorm
                .get_or_insert(if self.kind == NormKindConfig::CustomRational {
                    TNormConfig::Minimum
                } else {
                    TNormConfig::Product
                });
        }
        let k = self.k.unwrap_or(1.0);
        if !(k.is_finite() && k >= 1.0) {
            return Err(invalid("norm.k", format!("K must be at least 1, got {k}")));
        }
        if let Some(phi) = self.phi {
            phi.build().map_err(|e| invalid("norm.phi", e))?;
        }
        if builtin {
            let p = self.p.unwrap_or(1.0);
            let ok = match self.phi {
                Some(PhiConfig::AbsPower(q)) => q == p,
                Some(PhiConfig::Abs) => p == 1.0,
                _ => false,
            };
            if !ok {
                return Err(invalid(
                    "norm.phi",
                    format!("built-in kinds require phi = abs-power({p})"),
                ));
            }
        }
        Ok(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplerSection {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default = "default_scale")]
    pub coordinate_scale: f64,
}

fn default_budget() -> u64 {
    100_000
}

fn default_scale() -> f64 {
    1.0
}

impl Default for SamplerSection {
    fn default() -> Self {
        SamplerSection {
            seed: 0,
            budget: default_budget(),
            coordinate_scale: default_scale(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Text,
    #[serde(alias = "json")]
    Structured,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "structured" | "json" => Ok(Format::Structured),
            other => Err(format!("unknown format `{other}`, expected text or structured")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SetConfig {
    Box {
        lo: Vec<f64>,
        hi: Vec<f64>,
    },
    Finite {
        points: Vec<Vec<f64>>,
    },
    /// `{ n · direction : n ≥ 1 }`
    Ray {
        direction: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SequenceConfig {
    /// `x_n = limit + ratioⁿ · direction`
    Geometric {
        limit: Vec<f64>,
        direction: Vec<f64>,
        ratio: f64,
        #[serde(default = "default_sequence_horizon")]
        horizon: usize,
    },
    List {
        terms: Vec<Vec<f64>>,
    },
    /// `x_n = n · direction`
    Ray {
        direction: Vec<f64>,
        #[serde(default = "default_sequence_horizon")]
        horizon: usize,
    },
}

fn default_sequence_horizon() -> usize {
    200
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceExpectation {
    Converges,
    Cauchy,
    NotCauchy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundExpectation {
    #[default]
    Bounded,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SuiteConfig {
    Axioms {
        /// Empty runs the full suite.
        #[serde(default)]
        checks: Vec<CheckId>,
        #[serde(default)]
        strict_tnorm_continuity: bool,
    },
    Lemma1 {
        /// Defaults to the standard basis.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        basis: Option<Vec<Vec<f64>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        resolution: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c_grid: Option<Vec<f64>>,
        #[serde(default = "default_refinement")]
        refinement: usize,
    },
    Completeness {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        basis: Option<Vec<Vec<f64>>>,
        #[serde(default = "default_trials")]
        trials: u64,
        #[serde(default = "default_tol")]
        tol: f64,
        #[serde(default = "default_completeness_horizon")]
        horizon: usize,
    },
    Compactness {
        set: SetConfig,
        #[serde(default = "default_sequences")]
        sequences: u64,
        #[serde(default = "default_compactness_horizon")]
        horizon: usize,
        #[serde(default = "default_r")]
        r: f64,
    },
    Sequence {
        sequence: SequenceConfig,
        /// Without a candidate only the Cauchy test runs.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        candidate: Option<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t_grid: Option<Vec<f64>>,
        #[serde(default = "default_tol")]
        tol: f64,
        /// Defaults to `converges` with a candidate and `cauchy` without.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect: Option<SequenceExpectation>,
    },
    Boundedness {
        points: Vec<Vec<f64>>,
        #[serde(default = "default_r")]
        r: f64,
        #[serde(default)]
        expect: BoundExpectation,
    },
}

fn default_refinement() -> usize {
    4
}

fn default_trials() -> u64 {
    100
}

fn default_tol() -> f64 {
    1e-6
}

fn default_completeness_horizon() -> usize {
    800
}

fn default_sequences() -> u64 {
    20
}

fn default_compactness_horizon() -> usize {
    500
}

fn default_r() -> f64 {
    0.5
}

/// Suite families, one per subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteKind {
    Axioms,
    Lemma1,
    Completeness,
    Compactness,
    Sequence,
    Boundedness,
}

impl SuiteKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SuiteKind::Axioms => "axioms",
            SuiteKind::Lemma1 => "lemma1",
            SuiteKind::Completeness => "completeness",
            SuiteKind::Compactness => "compactness",
            SuiteKind::Sequence => "sequence",
            SuiteKind::Boundedness => "boundedness",
        }
    }
}

impl SuiteConfig {
    pub fn kind(&self) -> SuiteKind {
        match self {
            SuiteConfig::Axioms { .. } => SuiteKind::Axioms,
            SuiteConfig::Lemma1 { .. } => SuiteKind::Lemma1,
            SuiteConfig::Completeness { .. } => SuiteKind::Completeness,
            SuiteConfig::Compactness { .. } => SuiteKind::Compactness,
            SuiteConfig::Sequence { .. } => SuiteKind::Sequence,
            SuiteConfig::Boundedness { .. } => SuiteKind::Boundedness,
        }
    }

    /// The suite a subcommand runs when the config lists none of its kind.
    pub fn default_for(kind: SuiteKind, dim: usize) -> Option<SuiteConfig> {
        match kind {
            SuiteKind::Axioms => Some(SuiteConfig::Axioms {
                checks: Vec::new(),
                strict_tnorm_continuity: false,
            }),
            SuiteKind::Lemma1 => Some(SuiteConfig::Lemma1 {
                basis: None,
                resolution: None,
                c_grid: None,
                refinement: default_refinement(),
            }),
            SuiteKind::Completeness => Some(SuiteConfig::Completeness {
                basis: None,
                trials: default_trials(),
                tol: default_tol(),
                horizon: default_completeness_horizon(),
            }),
            SuiteKind::Compactness => Some(SuiteConfig::Compactness {
                set: SetConfig::Box {
                    lo: vec![0.0; dim],
                    hi: vec![1.0; dim],
                },
                sequences: default_sequences(),
                horizon: default_compactness_horizon(),
                r: default_r(),
            }),
            SuiteKind::Sequence | SuiteKind::Boundedness => None,
        }
    }

    fn resolve(self, key: &str, dim: usize) -> Result<Self, CliError> {
        let field = |name: &str| format!("{key}.{name}");
        let point = |name: &str, v: &[f64]| -> Result<(), CliError> {
            if v.len() != dim {
                return Err(invalid(
                    &field(name),
                    format!("expected {dim} coordinates, got {}", v.len()),
                ));
            }
            if v.iter().any(|c| !c.is_finite()) {
                return Err(invalid(&field(name), "coordinates must be finite"));
            }
            Ok(())
        };
        let basis_ok = |basis: &Option<Vec<Vec<f64>>>| -> Result<Vec<Vec<f64>>, CliError> {
            let basis = basis.clone().unwrap_or_else(|| {
                (0..dim)
                    .map(|i| (0..dim).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
                    .collect()
            });
            if basis.is_empty() {
                return Err(invalid(&field("basis"), "basis must not be empty"));
            }
            for b in &basis {
                point("basis", b)?;
            }
            Ok(basis)
        };
        let r_ok = |r: f64| {
            if r > 0.0 && r < 1.0 {
                Ok(())
            } else {
                Err(invalid(&field("r"), format!("r must lie in (0,1), got {r}")))
            }
        };
        let tol_ok = |tol: f64| {
            if tol > 0.0 && tol < 1.0 {
                Ok(())
            } else {
                Err(invalid(&field("tol"), format!("tol must lie in (0,1), got {tol}")))
            }
        };

        Ok(match self {
            SuiteConfig::Axioms {
                checks,
                strict_tnorm_continuity,
            } => {
                for c in &checks {
                    let sampled = matches!(
                        c,
                        CheckId::Bn1
                            | CheckId::Bn2
                            | CheckId::Bn3
                            | CheckId::Bn4
                            | CheckId::Bn5Monotone
                            | CheckId::Bn5Limit
                            | CheckId::PowerInequality
                            | CheckId::TnormAxioms
                            | CheckId::TnormContinuity
                            | CheckId::PhiAxioms
                    );
                    if !sampled {
                        return Err(invalid(&field("checks"), format!("{c} is not an axiom check")));
                    }
                }
                SuiteConfig::Axioms {
                    checks,
                    strict_tnorm_continuity,
                }
            }
            SuiteConfig::Lemma1 {
                basis,
                resolution,
                c_grid,
                refinement,
            } => {
                let basis = basis_ok(&basis)?;
                let resolution = resolution.unwrap_or_else(|| default_resolution(basis.len()));
                if resolution < 8 {
                    return Err(invalid(&field("resolution"), "resolution must be at least 8"));
                }
                let c_grid = c_grid.unwrap_or_else(default_c_grid);
                if c_grid.is_empty()
                    || c_grid.iter().any(|c| !(*c > 0.0 && c.is_finite()))
                    || c_grid.windows(2).any(|w| w[1] >= w[0])
                {
                    return Err(invalid(
                        &field("c_grid"),
                        "c grid must be positive and strictly decreasing",
                    ));
                }
                if refinement == 0 {
                    return Err(invalid(&field("refinement"), "refinement must be positive"));
                }
                SuiteConfig::Lemma1 {
                    basis: Some(basis),
                    resolution: Some(resolution),
                    c_grid: Some(c_grid),
                    refinement,
                }
            }
            SuiteConfig::Completeness {
                basis,
                trials,
                tol,
                horizon,
            } => {
                tol_ok(tol)?;
                if horizon < 10 {
                    return Err(invalid(&field("horizon"), "horizon must be at least 10"));
                }
                SuiteConfig::Completeness {
                    basis: Some(basis_ok(&basis)?),
                    trials,
                    tol,
                    horizon,
                }
            }
            SuiteConfig::Compactness {
                set,
                sequences,
                horizon,
                r,
            } => {
                match &set {
                    SetConfig::Box { lo, hi } => {
                        point("set.lo", lo)?;
                        point("set.hi", hi)?;
                        if lo.iter().zip(hi).any(|(a, b)| a > b) {
                            return Err(invalid(&field("set"), "box needs lo <= hi in every coordinate"));
                        }
                    }
                    SetConfig::Finite { points } => {
                        if points.is_empty() {
                            return Err(invalid(&field("set.points"), "finite set must not be empty"));
                        }
                        for p in points {
                            point("set.points", p)?;
                        }
                    }
                    SetConfig::Ray { direction } => {
                        point("set.direction", direction)?;
                        if direction.iter().all(|c| *c == 0.0) {
                            return Err(invalid(&field("set.direction"), "ray direction must be nonzero"));
                        }
                    }
                }
                if horizon < 2 {
                    return Err(invalid(&field("horizon"), "horizon must be at least 2"));
                }
                r_ok(r)?;
                SuiteConfig::Compactness {
                    set,
                    sequences,
                    horizon,
                    r,
                }
            }
            SuiteConfig::Sequence {
                sequence,
                candidate,
                t_grid,
                tol,
                expect,
            } => {
                match &sequence {
                    SequenceConfig::Geometric {
                        limit,
                        direction,
                        ratio,
                        horizon,
                    } => {
                        point("sequence.limit", limit)?;
                        point("sequence.direction", direction)?;
                        if !ratio.is_finite() {
                            return Err(invalid(&field("sequence.ratio"), "ratio must be finite"));
                        }
                        if *horizon < 10 {
                            return Err(invalid(&field("sequence.horizon"), "horizon must be at least 10"));
                        }
                    }
                    SequenceConfig::List { terms } => {
                        if terms.len() < 10 {
                            return Err(invalid(&field("sequence.terms"), "need at least 10 terms"));
                        }
                        for t in terms {
                            point("sequence.terms", t)?;
                        }
                    }
                    SequenceConfig::Ray { direction, horizon } => {
                        point("sequence.direction", direction)?;
                        if *horizon < 10 {
                            return Err(invalid(&field("sequence.horizon"), "horizon must be at least 10"));
                        }
                    }
                }
                if let Some(c) = &candidate {
                    point("candidate", c)?;
                }
                let t_grid = t_grid.unwrap_or_else(phib_core::analysis::default_t_grid);
                if t_grid.is_empty() || t_grid.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
                    return Err(invalid(&field("t_grid"), "t grid must be non-empty and positive"));
                }
                tol_ok(tol)?;
                let expect = expect.unwrap_or(if candidate.is_some() {
                    SequenceExpectation::Converges
                } else {
                    SequenceExpectation::Cauchy
                });
                if expect == SequenceExpectation::Converges && candidate.is_none() {
                    return Err(invalid(
                        &field("expect"),
                        "expecting convergence needs a candidate limit",
                    ));
                }
                SuiteConfig::Sequence {
                    sequence,
                    candidate,
                    t_grid: Some(t_grid),
                    tol,
                    expect: Some(expect),
                }
            }
            SuiteConfig::Boundedness { points, r, expect } => {
                if points.is_empty() {
                    return Err(invalid(&field("points"), "need at least one point"));
                }
                for p in &points {
                    point("points", p)?;
                }
                r_ok(r)?;
                SuiteConfig::Boundedness { points, r, expect }
            }
        })
    }
}

/// A complete run description. After [`RunConfig::resolve`] every optional
/// field holds its effective value, so the echo in a report is self-contained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub norm: NormConfig,
    #[serde(default)]
    pub sampler: SamplerSection,
    #[serde(default, rename = "suite")]
    pub suites: Vec<SuiteConfig>,
    #[serde(default)]
    pub output: OutputSection,
}

impl RunConfig {
    /// A config for `norm` with default sampler settings and no suites.
    pub fn new(norm: NormConfig) -> Self {
        RunConfig {
            norm,
            sampler: SamplerSection::default(),
            suites: Vec::new(),
            output: OutputSection::default(),
        }
    }

    pub fn with_suite(mut self, suite: SuiteConfig) -> Self {
        self.suites.push(suite);
        self
    }

    /// Validates every section and fills in defaults. A config without suites
    /// gets the axiom suite.
    pub fn resolve(mut self) -> Result<Self, CliError> {
        self.norm = self.norm.resolve()?;
        self.norm.build()?;
        let scale = self.sampler.coordinate_scale;
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(invalid(
                "sampler.coordinate_scale",
                format!("must be positive, got {scale}"),
            ));
        }
        if self.suites.is_empty() {
            self.suites
                .extend(SuiteConfig::default_for(SuiteKind::Axioms, self.norm.dim));
        }
        let dim = self.norm.dim;
        self.suites = self
            .suites
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.resolve(&format!("suite[{i}]"), dim))
            .collect::<Result<_, _>>()?;
        Ok(self)
    }

    /// Keeps only the suites of one kind, adding that kind's default suite if
    /// there are none.
    pub fn restrict_to(mut self, kind: SuiteKind) -> Result<Self, CliError> {
        self.suites.retain(|s| s.kind() == kind);
        if self.suites.is_empty() {
            let Some(default) = SuiteConfig::default_for(kind, self.norm.dim) else {
                return Err(invalid("suite", format!("config has no {} suite", kind.as_str())));
            };
            self.suites.push(default.resolve("suite[0]", self.norm.dim)?);
        }
        Ok(self)
    }
}

/// Parses and resolves a TOML run description.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let raw: RunConfig = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    raw.resolve()
}

fn invalid(key: &str, message: impl std::fmt::Display) -> CliError {
    CliError::Invalid {
        key: key.to_string(),
        message: message.to_string(),
    }
}
