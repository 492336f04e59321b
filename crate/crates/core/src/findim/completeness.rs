use rand::Rng;
use serde::{Deserialize, Serialize};

use super::BasisSet;
use crate::algebra::check_continuity_at_one;
use crate::analysis::{check_cauchy, check_convergence, default_t_grid, SequenceGen};
use crate::error::{Error, Result};
use crate::fuzzynorm::FuzzyNormSpec;
use crate::report::{CheckId, CheckReport, CounterExample, Relation};
use crate::sampling::{par_scan, sample_rng, stream_id};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompletenessConfig {
    pub trials: u64,
    pub seed: u64,
    /// Both the membership tolerance of the detectors and the allowed
    /// coordinate error of the detected limit.
    pub tol: f64,
    pub horizon: usize,
    pub t_grid: Vec<f64>,
    pub continuity_grid: Vec<f64>,
    /// Replace this trial by a divergent ray, to check that the probe notices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inject_divergent: Option<u64>,
}

impl Default for CompletenessConfig {
    fn default() -> Self {
        CompletenessConfig {
            trials: 100,
            seed: 0,
            tol: 1e-6,
            horizon: 800,
            t_grid: default_t_grid(),
            continuity_grid: vec![1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6],
            inject_divergent: None,
        }
    }
}

/// Checks the Cauchy and convergence detectors on sequences with a known limit.
///
/// Each trial draws a limit `x = Σ βᵢ eᵢ` (`βᵢ ∈ [−10, 10]`), a direction
/// `d = Σ γᵢ eᵢ` (`γᵢ ∈ [−1, 1]`) and a ratio `r` with `0.1 ≤ |r| ≤ 0.9`, and
/// builds `x_n = x + rⁿ d`. The trial passes when the sequence is judged
/// Cauchy, converges to its last term, and that term is within `tol` of `x` in
/// every coordinate.
///
/// Requires the t-norm to pass the continuity check at `(1,1)`.
pub fn probe_completeness(norm: &FuzzyNormSpec, basis: &BasisSet, config: &CompletenessConfig) -> Result<CheckReport> {
    basis.require_certified()?;
    if !(config.tol > 0.0 && config.tol < 1.0) {
        return Err(Error::Precondition(format!(
            "tolerance must lie in (0,1), got {}",
            config.tol
        )));
    }
    let continuity = check_continuity_at_one(norm.tnorm(), &config.continuity_grid)?;
    if !continuity.report.passed() {
        return Err(Error::Precondition(format!(
            "t-norm {} is not continuous at (1,1) (moduli {:?})",
            norm.tnorm().name(),
            continuity.moduli
        )));
    }

    let stream = stream_id("completeness");
    let n = basis.len();
    let worst = par_scan(config.trials, |trial, worst| {
        let mut rng = sample_rng(config.seed, stream, trial);
        let beta: Vec<f64> = (0..n).map(|_| rng.random_range(-10.0..=10.0)).collect();
        let mut gamma: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
        if gamma.iter().all(|g| *g == 0.0) {
            gamma[0] = 1.0;
        }
        let magnitude = rng.random_range(0.1..=0.9);
        let ratio = if rng.random::<bool>() { magnitude } else { -magnitude };
        let limit = basis.combine(&beta);
        let direction = basis.combine(&gamma);

        let witness = |clause: &str, relation, lhs, rhs| {
            CounterExample::new(clause, relation, lhs, rhs)
                .with_scalar("trial", trial as f64)
                .with_vector("limit", limit.clone())
                .with_vector("direction", direction.clone())
                .with_scalar("ratio", ratio)
        };
        let seq = if config.inject_divergent == Some(trial) {
            SequenceGen::divergent_ray(direction.clone(), config.horizon)
        } else {
            SequenceGen::geometric(limit.clone(), direction.clone(), ratio, config.horizon)
        };
        let outcome = seq.and_then(|seq| {
            let cauchy = check_cauchy(norm, &seq, &config.t_grid, config.tol)?;
            if !cauchy.is_cauchy() {
                return Ok((cauchy, None));
            }
            let candidate = seq.term(seq.horizon());
            let conv = check_convergence(norm, &seq, &candidate, &config.t_grid, config.tol)?;
            Ok((conv, Some(candidate)))
        });
        match outcome {
            Err(e) => {
                let w = witness(&format!("error: {e}"), Relation::AtLeast, 0.0, 1.0);
                worst.consider(trial, w.relation, w.lhs, w.rhs, || w);
            }
            Ok((verdict, None)) => {
                let (lhs, rhs) = (verdict.margin + verdict.threshold, verdict.threshold);
                worst.consider(trial, Relation::AtLeast, lhs, rhs, || {
                    witness("cauchy", Relation::AtLeast, lhs, rhs)
                });
            }
            Ok((verdict, Some(candidate))) => {
                let (lhs, rhs) = (verdict.margin + verdict.threshold, verdict.threshold);
                worst.consider(trial, Relation::AtLeast, lhs, rhs, || {
                    witness("convergence", Relation::AtLeast, lhs, rhs)
                });
                let error = candidate.sub(&limit).iter().fold(0.0f64, |m, c| m.max(c.abs()));
                worst.consider(trial, Relation::AtLeast, config.tol, error, || {
                    witness("limit-error", Relation::AtLeast, config.tol, error)
                        .with_vector("detected", candidate.clone())
                });
            }
        }
    });
    Ok(worst.into_report(CheckId::Completeness, config.trials, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TNorm;
    use crate::fuzzynorm::{make_example_norm, CrispNorm, ExampleKind};

    fn small() -> CompletenessConfig {
        CompletenessConfig {
            trials: 10,
            ..Default::default()
        }
    }

    #[test]
    fn example_norms_complete() {
        let basis = BasisSet::standard(3).unwrap();
        let r = make_example_norm(ExampleKind::Rational, 1.0, CrispNorm::L2, None).unwrap();
        assert!(probe_completeness(&r, &basis, &small()).unwrap().passed());
        let e = make_example_norm(ExampleKind::Exponential, 0.5, CrispNorm::L2, None).unwrap();
        assert!(probe_completeness(&e, &BasisSet::standard(2).unwrap(), &small())
            .unwrap()
            .passed());
    }

    #[test]
    fn injected_ray_fails_at_the_cauchy_stage() {
        let basis = BasisSet::standard(3).unwrap();
        let r = make_example_norm(ExampleKind::Rational, 1.0, CrispNorm::L2, None).unwrap();
        let config = CompletenessConfig {
            inject_divergent: Some(4),
            ..small()
        };
        let report = probe_completeness(&r, &basis, &config).unwrap();
        assert!(!report.passed());
        let w = report.counterexample.unwrap();
        assert_eq!(w.clause, "cauchy");
        assert_eq!(w.scalar("trial"), Some(4.0));
    }

    #[test]
    fn discontinuous_tnorm_is_a_precondition_error() {
        let jump = TNorm::custom("jump", |a, b| if a == 1.0 && b == 1.0 { 1.0 } else { 0.0 });
        let r = make_example_norm(ExampleKind::Rational, 1.0, CrispNorm::L2, Some(jump)).unwrap();
        let err = probe_completeness(&r, &BasisSet::standard(1).unwrap(), &small()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }
}
