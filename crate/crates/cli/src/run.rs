//! Executes the suites of a resolved [`RunConfig`].

use std::time::Instant;

use phib_core::analysis::{
    check_cauchy, check_convergence, check_fuzzy_bounded, Boundedness, ConvergenceVerdict, SequenceGen,
    SequenceVerdict, BOUNDEDNESS_READING,
};
use phib_core::findim::{
    estimate_lemma1_constants, probe_compactness, probe_completeness, BasisSet, CompactnessConfig, CompletenessConfig,
    Extraction, Lemma1Estimate, SetSpec,
};
use phib_core::fuzzynorm::Classification;
use phib_core::verifier::{check_axiom, run_full_suite, SamplerConfig, SuiteOptions};
use phib_core::{CheckId, CheckReport, Error, FuzzyNormSpec, Vector, Verdict};
use serde::{Deserialize, Serialize};

use crate::config::{
    BoundExpectation, RunConfig, SequenceConfig, SequenceExpectation, SetConfig, SuiteConfig, SuiteKind,
};
use crate::CliError;

/// Everything a run produced, in a form that survives a JSON round trip.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    /// Display name of the norm.
    pub norm: String,
    pub classification: Classification,
    /// The resolved configuration.
    pub config: RunConfig,
    pub suites: Vec<SuiteReport>,
    pub verdict: Verdict,
    #[serde(default)]
    pub warnings: Vec<String>,
    pub wall_time_seconds: f64,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }

    /// The same report with the timing zeroed, for byte comparisons.
    pub fn without_timing(mut self) -> Self {
        self.wall_time_seconds = 0.0;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub kind: SuiteKind,
    pub verdict: Verdict,
    pub checks: Vec<CheckReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<SuiteDetails>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteDetails {
    Lemma1(Lemma1Estimate),
    Sequence(ConvergenceVerdict),
    Boundedness(Boundedness),
    Compactness {
        extractions: Vec<Extraction>,
        /// `(prefix length, boundedness)` pairs.
        boundedness: Vec<(usize, Boundedness)>,
    },
}

/// Runs every suite of `config` on the ambient rayon pool.
pub fn run(config: &RunConfig) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let norm = config.norm.build()?;
    let sampler = SamplerConfig {
        coordinate_scale: config.sampler.coordinate_scale,
        ..SamplerConfig::new(config.sampler.seed, config.sampler.budget, config.norm.dim)
    };

    let mut warnings = Vec::new();
    let mut suites = Vec::with_capacity(config.suites.len());
    for suite in &config.suites {
        let (checks, details) = run_suite(&norm, &sampler, suite, &mut warnings)?;
        let verdict = verdict_of(checks.iter().all(CheckReport::passed));
        suites.push(SuiteReport {
            kind: suite.kind(),
            verdict,
            checks,
            details,
        });
    }
    let verdict = verdict_of(suites.iter().all(|s| s.verdict.is_pass()));
    Ok(RunReport {
        tool: "phib".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        seed: config.sampler.seed,
        norm: norm.name(),
        classification: norm.classify_reduction(),
        config: config.clone(),
        suites,
        verdict,
        warnings,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    })
}

fn verdict_of(pass: bool) -> Verdict {
    if pass {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn vector(coords: &[f64]) -> Result<Vector, CliError> {
    Ok(Vector::new(coords.to_vec())?)
}

fn basis_set(rows: &Option<Vec<Vec<f64>>>, dim: usize) -> Result<BasisSet, CliError> {
    match rows {
        Some(rows) => Ok(BasisSet::new(
            rows.iter().map(|r| vector(r)).collect::<Result<_, _>>()?,
        )?),
        None => Ok(BasisSet::standard(dim)?),
    }
}

/// A failed report standing in for a diagnostic that could not run because
/// the space does not meet its hypotheses.
fn unmet(check: CheckId, error: Error) -> Result<CheckReport, CliError> {
    match error {
        Error::Precondition(_) | Error::NoAdmissibleConstant(_) => {
            Ok(CheckReport::new(check, 0, -1.0, 0.0, None).with_note(error.to_string()))
        }
        other => Err(other.into()),
    }
}

type SuiteOutput = (Vec<CheckReport>, Option<SuiteDetails>);

fn run_suite(
    norm: &FuzzyNormSpec,
    sampler: &SamplerConfig,
    suite: &SuiteConfig,
    warnings: &mut Vec<String>,
) -> Result<SuiteOutput, CliError> {
    let dim = sampler.dim;
    match suite {
        SuiteConfig::Axioms {
            checks,
            strict_tnorm_continuity,
        } => {
            if checks.is_empty() {
                let options = SuiteOptions {
                    strict_tnorm_continuity: *strict_tnorm_continuity,
                    ..Default::default()
                };
                let outcome = run_full_suite(norm, sampler, &options)?;
                warnings.extend(outcome.warnings);
                return Ok((outcome.reports, None));
            }
            let mut reports = Vec::with_capacity(checks.len());
            for &check in checks {
                let report = if check == CheckId::TnormContinuity {
                    let grid = SuiteOptions::default().continuity_grid;
                    phib_core::algebra::check_continuity_at_one(norm.tnorm(), &grid)?.report
                } else {
                    check_axiom(norm, check, sampler)?
                };
                reports.push(report);
            }
            Ok((reports, None))
        }
        SuiteConfig::Lemma1 {
            basis,
            resolution,
            c_grid,
            refinement,
        } => {
            let basis = basis_set(basis, dim)?;
            let resolution = resolution.unwrap_or_else(|| phib_core::findim::default_resolution(basis.len()));
            let c_grid = c_grid.clone().unwrap_or_else(phib_core::findim::default_c_grid);
            match estimate_lemma1_constants(norm, &basis, resolution, &c_grid) {
                Ok(estimate) => {
                    let report = phib_core::findim::verify_lemma1_certificate(norm, &basis, &estimate, *refinement)?
                        .with_note(format!("c = {:e}, delta = {}", estimate.c, estimate.delta));
                    Ok((vec![report], Some(SuiteDetails::Lemma1(estimate))))
                }
                Err(e) => Ok((vec![unmet(CheckId::Lemma1Certificate, e)?], None)),
            }
        }
        SuiteConfig::Completeness {
            basis,
            trials,
            tol,
            horizon,
        } => {
            let basis = basis_set(basis, dim)?;
            let config = CompletenessConfig {
                trials: *trials,
                seed: sampler.seed,
                tol: *tol,
                horizon: *horizon,
                ..Default::default()
            };
            let report = match probe_completeness(norm, &basis, &config) {
                Ok(r) => r,
                Err(e) => unmet(CheckId::Completeness, e)?,
            };
            Ok((vec![report], None))
        }
        SuiteConfig::Compactness {
            set,
            sequences,
            horizon,
            r,
        } => {
            let set = match set {
                SetConfig::Box { lo, hi } => SetSpec::Box {
                    lo: vector(lo)?,
                    hi: vector(hi)?,
                },
                SetConfig::Finite { points } => {
                    SetSpec::FiniteSet(points.iter().map(|p| vector(p)).collect::<Result<_, _>>()?)
                }
                SetConfig::Ray { direction } => SetSpec::UnboundedRay {
                    direction: vector(direction)?,
                },
            };
            let config = CompactnessConfig {
                sequences: *sequences,
                seed: sampler.seed,
                horizon: *horizon,
                r: *r,
            };
            let outcome = probe_compactness(norm, &set, &config)?;
            let details = SuiteDetails::Compactness {
                extractions: outcome.extractions,
                boundedness: outcome.boundedness,
            };
            Ok((vec![outcome.report.with_note(BOUNDEDNESS_READING)], Some(details)))
        }
        SuiteConfig::Sequence {
            sequence,
            candidate,
            t_grid,
            tol,
            expect,
        } => {
            let seq = match sequence {
                SequenceConfig::Geometric {
                    limit,
                    direction,
                    ratio,
                    horizon,
                } => SequenceGen::geometric(vector(limit)?, vector(direction)?, *ratio, *horizon)?,
                SequenceConfig::List { terms } => {
                    SequenceGen::explicit(terms.iter().map(|t| vector(t)).collect::<Result<_, _>>()?)?
                }
                SequenceConfig::Ray { direction, horizon } => SequenceGen::divergent_ray(vector(direction)?, *horizon)?,
            };
            let t_grid = t_grid.clone().unwrap_or_else(phib_core::analysis::default_t_grid);
            let verdict = match candidate {
                Some(c) => check_convergence(norm, &seq, &vector(c)?, &t_grid, *tol)?,
                None => check_cauchy(norm, &seq, &t_grid, *tol)?,
            };
            let expect = expect.unwrap_or(SequenceExpectation::Cauchy);
            let met = match expect {
                SequenceExpectation::Converges => verdict.converges(),
                SequenceExpectation::Cauchy => verdict.is_cauchy(),
                SequenceExpectation::NotCauchy => !verdict.is_cauchy(),
            };
            // the window margin is oriented towards "Cauchy"; flip it when the
            // expectation is the opposite
            let oriented = if expect == SequenceExpectation::NotCauchy {
                -verdict.margin
            } else {
                verdict.margin
            };
            let margin = if met {
                oriented.max(0.0)
            } else {
                oriented.min(-f64::MIN_POSITIVE)
            };
            let report = CheckReport::new(CheckId::Convergence, seq.horizon() as u64, margin, 0.0, None).with_note(
                format!("expected {}, observed {}", expectation_name(expect), observed(&verdict)),
            );
            Ok((vec![report], Some(SuiteDetails::Sequence(verdict))))
        }
        SuiteConfig::Boundedness { points, r, expect } => {
            let points: Vec<Vector> = points.iter().map(|p| vector(p)).collect::<Result<_, _>>()?;
            let found = check_fuzzy_bounded(norm, &points, *r)?;
            let met = found.bounded == (*expect == BoundExpectation::Bounded);
            let mut report = CheckReport::new(
                CheckId::Boundedness,
                points.len() as u64,
                if met { 0.0 } else { -1.0 },
                0.0,
                None,
            );
            report = match found.witness_t {
                Some(t) => report.with_note(format!("bounded with witness t = {t:e}")),
                None => report.with_note("no witness t on the search grid"),
            };
            Ok((
                vec![report.with_note(BOUNDEDNESS_READING)],
                Some(SuiteDetails::Boundedness(found)),
            ))
        }
    }
}

fn expectation_name(e: SequenceExpectation) -> &'static str {
    match e {
        SequenceExpectation::Converges => "convergence",
        SequenceExpectation::Cauchy => "a Cauchy sequence",
        SequenceExpectation::NotCauchy => "a non-Cauchy sequence",
    }
}

fn observed(v: &ConvergenceVerdict) -> String {
    match &v.verdict {
        SequenceVerdict::ConvergesTo(x) => format!("convergence to {:?}", x.coords()),
        SequenceVerdict::Cauchy => "a Cauchy sequence".into(),
        SequenceVerdict::CauchyButUndetectedLimit => "a Cauchy sequence without the candidate limit".into(),
        SequenceVerdict::NotCauchyAtHorizon => "no Cauchy behaviour up to the horizon".into(),
    }
}
