//! Quantified-property checking for fuzzy strong φ-b-norms.
//!
//! Each axiom's universally quantified variables are sampled (deterministic
//! corner cases first, then seeded random draws), both sides of the axiom are
//! evaluated, and the minimum margin over all samples decides the verdict.
//! A failing report carries the worst witness after shrinking.

mod axioms;
mod shrink;

use serde::{Deserialize, Serialize};

pub use axioms::{evaluate, CONVERSE_GAP, CONVERSE_MIN_BASE, LIMIT_GAP};
pub use shrink::{shrink, KEEP_FRACTION, MAX_SHRINK_STEPS};

use crate::algebra::{check_continuity_at_one, check_phi_axioms, check_tnorm_axioms, default_growth_grid};
use crate::error::{Error, Result};
use crate::fuzzynorm::FuzzyNormSpec;
use crate::report::{CheckId, CheckReport};
use crate::sampling::{par_scan, sample_rng, stream_id};

/// Inequality tolerance for the norm axioms.
pub const AXIOM_TOLERANCE: f64 = 1e-9;

/// Sampling parameters shared by every axiom check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub seed: u64,
    /// Random samples per axiom, on top of the deterministic corner cases.
    pub budget: u64,
    pub dim: usize,
    /// Scale of the Cauchy distribution coordinates are drawn from.
    pub coordinate_scale: f64,
    /// Log-uniform range for positive time arguments.
    pub t_range: (f64, f64),
    /// Log-uniform magnitude range for scalars, with a random sign.
    pub c_range: (f64, f64),
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            seed: 0,
            budget: 100_000,
            dim: 1,
            coordinate_scale: 1.0,
            t_range: (1e-6, 1e6),
            c_range: (1e-3, 1e3),
        }
    }
}

impl SamplerConfig {
    pub fn new(seed: u64, budget: u64, dim: usize) -> Self {
        SamplerConfig {
            seed,
            budget,
            dim,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        let range_ok = |(lo, hi): (f64, f64)| lo > 0.0 && hi > lo && hi.is_finite();
        if self.dim == 0 {
            return Err(Error::InvalidSpec("sampler dimension must be positive".into()));
        }
        if !(self.coordinate_scale > 0.0 && self.coordinate_scale.is_finite()) {
            return Err(Error::InvalidSpec("coordinate scale must be positive".into()));
        }
        if !range_ok(self.t_range) || !range_ok(self.c_range) {
            return Err(Error::InvalidSpec(
                "sampling ranges must satisfy 0 < lo < hi < inf".into(),
            ));
        }
        Ok(())
    }
}

/// Checks one property of `norm` by sampling.
///
/// The t-norm and φ checks delegate to the algebra checkers with the same
/// budget and seed. Failing reports carry a shrunk witness.
pub fn check_axiom(norm: &FuzzyNormSpec, check: CheckId, sampler: &SamplerConfig) -> Result<CheckReport> {
    sampler.validate()?;
    match check {
        CheckId::TnormAxioms => return check_tnorm_axioms(norm.tnorm(), sampler.budget.max(1), sampler.seed),
        CheckId::PhiAxioms => {
            return check_phi_axioms(norm.phi(), sampler.budget.max(1), &default_growth_grid(), sampler.seed)
        }
        CheckId::Bn1
        | CheckId::Bn2
        | CheckId::Bn3
        | CheckId::Bn4
        | CheckId::Bn5Monotone
        | CheckId::Bn5Limit
        | CheckId::PowerInequality => {}
        other => {
            return Err(Error::Precondition(format!("{other} is not a sampled axiom")));
        }
    }

    let corners = axioms::corners(norm, check, sampler.dim);
    let n_corners = corners.len() as u64;
    let stream = stream_id(check.as_str());
    let total = n_corners + sampler.budget;
    let worst = par_scan(total, |index, worst| {
        let w = if index < n_corners {
            corners[index as usize].clone()
        } else {
            let mut rng = sample_rng(sampler.seed, stream, index - n_corners);
            axioms::draw(norm, check, sampler, &mut rng)
        };
        worst.consider(index, w.relation, w.lhs, w.rhs, || w);
    });

    let mut report = worst.into_report(check, total, AXIOM_TOLERANCE);
    if let Some(w) = report.counterexample.take() {
        // shrink fails only if the witness does not reproduce, which would be a bug
        let shrunk = shrink(norm, check, &w, AXIOM_TOLERANCE).unwrap_or(w);
        report.counterexample = Some(shrunk);
    }
    Ok(report)
}

/// Options for [`run_full_suite`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteOptions {
    /// Treat a t-norm that is not continuous at `(1,1)` as a failure rather
    /// than a warning.
    pub strict_tnorm_continuity: bool,
    pub continuity_grid: Vec<f64>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            strict_tnorm_continuity: false,
            continuity_grid: vec![1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub reports: Vec<CheckReport>,
    pub warnings: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(CheckReport::passed)
    }
}

/// bN1 through bN5 followed by the t-norm and φ checks.
///
/// Continuity of the t-norm at `(1,1)` is only needed by the
/// finite-dimensional results; by default a failure is reported as a warning.
pub fn run_full_suite(norm: &FuzzyNormSpec, sampler: &SamplerConfig, options: &SuiteOptions) -> Result<SuiteOutcome> {
    let mut reports = Vec::with_capacity(9);
    for check in CheckId::NORM_AXIOMS {
        reports.push(check_axiom(norm, check, sampler)?);
    }
    reports.push(check_axiom(norm, CheckId::TnormAxioms, sampler)?);
    reports.push(check_axiom(norm, CheckId::PhiAxioms, sampler)?);

    let mut warnings = Vec::new();
    let continuity = check_continuity_at_one(norm.tnorm(), &options.continuity_grid)?;
    if options.strict_tnorm_continuity {
        reports.push(continuity.report);
    } else if !continuity.report.passed() {
        warnings.push(format!(
            "t-norm {} does not appear continuous at (1,1) (moduli {:?}); completeness and compactness results do not apply",
            norm.tnorm().name(),
            continuity.moduli
        ));
    }
    Ok(SuiteOutcome { reports, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PhiSpec, TNorm};
    use crate::fuzzynorm::{make_example_norm, CrispNorm, ExampleKind, PowerForm};

    fn broken() -> FuzzyNormSpec {
        FuzzyNormSpec::power_form(
            PowerForm::Rational,
            2.0,
            1.0,
            PhiSpec::Abs,
            TNorm::Minimum,
            CrispNorm::L2,
        )
        .unwrap()
    }

    #[test]
    fn example_norms_pass_bn4() {
        let r = make_example_norm(ExampleKind::Rational, 1.0, CrispNorm::L2, None).unwrap();
        assert!(check_axiom(&r, CheckId::Bn4, &SamplerConfig::new(0, 20_000, 2))
            .unwrap()
            .passed());
        let e = make_example_norm(ExampleKind::Exponential, 0.5, CrispNorm::L2, None).unwrap();
        assert!(check_axiom(&e, CheckId::Bn4, &SamplerConfig::new(0, 20_000, 2))
            .unwrap()
            .passed());
    }

    #[test]
    fn broken_norm_fails_bn4_with_reproducible_witness() {
        let norm = broken();
        let r = check_axiom(&norm, CheckId::Bn4, &SamplerConfig::new(0, 10_000, 1)).unwrap();
        assert!(!r.passed());
        let w = r.counterexample.expect("failing report carries a witness");
        let (lhs, rhs) = evaluate(&norm, CheckId::Bn4, &w).unwrap();
        assert!(rhs - lhs > AXIOM_TOLERANCE);
    }

    #[test]
    fn power_inequality_holds() {
        let norm = make_example_norm(ExampleKind::Rational, 0.25, CrispNorm::L2, None).unwrap();
        let r = check_axiom(&norm, CheckId::PowerInequality, &SamplerConfig::new(4, 20_000, 1)).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn wrong_phi_breaks_bn3() {
        let norm = FuzzyNormSpec::power_form(
            PowerForm::Rational,
            0.5,
            2f64.sqrt(),
            PhiSpec::Abs,
            TNorm::Minimum,
            CrispNorm::L2,
        )
        .unwrap();
        let r = check_axiom(&norm, CheckId::Bn3, &SamplerConfig::new(0, 2000, 2)).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn discontinuous_tnorm_warns_unless_strict() {
        let jump = TNorm::custom("jump", |a, b| if a == 1.0 && b == 1.0 { 1.0 } else { 0.0 });
        let norm = make_example_norm(ExampleKind::Rational, 1.0, CrispNorm::L2, Some(jump)).unwrap();
        let sampler = SamplerConfig::new(0, 500, 1);
        let lax = run_full_suite(&norm, &sampler, &SuiteOptions::default()).unwrap();
        assert_eq!(lax.warnings.len(), 1);
        assert!(!lax.reports.iter().any(|r| r.check == CheckId::TnormContinuity));
        let strict = SuiteOptions {
            strict_tnorm_continuity: true,
            ..Default::default()
        };
        let s = run_full_suite(&norm, &sampler, &strict).unwrap();
        assert!(s
            .reports
            .iter()
            .any(|r| r.check == CheckId::TnormContinuity && !r.passed()));
    }

    #[test]
    fn non_sampled_ids_are_rejected() {
        let norm = broken();
        assert!(check_axiom(&norm, CheckId::Openness, &SamplerConfig::default()).is_err());
        let bad = SamplerConfig {
            dim: 0,
            ..Default::default()
        };
        assert!(check_axiom(&norm, CheckId::Bn1, &bad).is_err());
    }
}
