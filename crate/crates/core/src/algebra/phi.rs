use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::{CheckId, CheckReport, CounterExample, Relation};
use crate::sampling::{log_uniform, par_scan, sample_rng, signed_log_uniform, stream_id};

/// Tolerance for closed-form identities such as evenness and `φ(1) = 1`.
pub const PHI_TOLERANCE: f64 = 1e-12;

/// `φ(10⁻¹²)` must have dropped to at most this value.
const ZERO_REACH: f64 = 0.5;
/// `φ` at the end of the growth grid must have climbed to at least this value.
const GROWTH_REACH: f64 = 2.0;

type UnaryFn = dyn Fn(f64) -> f64 + Send + Sync;

#[derive(Clone)]
pub struct CustomUnary {
    name: String,
    f: Arc<UnaryFn>,
}

impl fmt::Debug for CustomUnary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomUnary").field("name", &self.name).finish()
    }
}

/// A scalar rescaling function `φ` used in place of `|c|` in the scalar axiom.
#[derive(Debug, Clone)]
pub enum PhiSpec {
    /// `φ(α) = |α|`
    Abs,
    /// `φ(α) = |α|^p`, `p > 0`
    AbsPower(f64),
    /// `φ(α) = 2α^{2n} / (|α| + 1)`, `n ≥ 1`
    RationalEven(u32),
    Custom(CustomUnary),
}

impl PhiSpec {
    pub fn abs_power(p: f64) -> Result<Self> {
        if !(p.is_finite() && p > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "abs-power exponent must be positive, got {p}"
            )));
        }
        Ok(PhiSpec::AbsPower(p))
    }

    pub fn rational_even(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("rational-even order must be at least 1".into()));
        }
        Ok(PhiSpec::RationalEven(n))
    }

    pub fn custom<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        PhiSpec::Custom(CustomUnary {
            name: name.into(),
            f: Arc::new(f),
        })
    }

    pub fn name(&self) -> String {
        match self {
            PhiSpec::Abs => "abs".into(),
            PhiSpec::AbsPower(p) => format!("abs-power(p={p})"),
            PhiSpec::RationalEven(n) => format!("rational-even(n={n})"),
            PhiSpec::Custom(c) => c.name.clone(),
        }
    }

    /// True for `|·|` and `|·|^1`.
    pub fn is_abs(&self) -> bool {
        matches!(self, PhiSpec::Abs) || matches!(self, PhiSpec::AbsPower(p) if *p == 1.0)
    }

    /// The exponent when `φ` is a pure power of `|α|`.
    pub fn power(&self) -> Option<f64> {
        match self {
            PhiSpec::Abs => Some(1.0),
            PhiSpec::AbsPower(p) => Some(*p),
            _ => None,
        }
    }

    pub fn eval(&self, alpha: f64) -> Result<f64> {
        if !alpha.is_finite() {
            return Err(Error::Domain(format!("phi argument must be finite, got {alpha}")));
        }
        Ok(self.apply(alpha))
    }

    /// Evaluation without the input check.
    pub fn apply(&self, alpha: f64) -> f64 {
        match self {
            PhiSpec::Abs => alpha.abs(),
            PhiSpec::AbsPower(p) => alpha.abs().powf(*p),
            PhiSpec::RationalEven(n) => 2.0 * alpha.abs().powi(2 * *n as i32) / (alpha.abs() + 1.0),
            PhiSpec::Custom(c) => (c.f)(alpha),
        }
    }
}

pub fn phi_eval(phi: &PhiSpec, alpha: f64) -> Result<f64> {
    phi.eval(alpha)
}

/// Default growth grid `10⁰ … 10¹²`, one point per decade.
pub fn default_growth_grid() -> Vec<f64> {
    (0..=12).map(|k| 10f64.powi(k)).collect()
}

/// Checks φ1–φ4 by sampling plus deterministic limit surrogates.
///
/// * φ1: `φ(−α) = φ(α)` on signed log-uniform samples.
/// * φ2: `φ(1) = 1`.
/// * φ3: `φ(β) > φ(α)` for sampled `0 < α < β`, `φ ≥ 0`, and a local
///   continuity probe `|φ(x + h) − φ(x)| ≤ 10⁻⁶·max(1, φ(x))` with `h = 10⁻⁹x`.
/// * φ4: `φ(10⁻ᵏ)` strictly decreasing for `k = 1..12` and ending at most 1/2;
///   `φ` strictly increasing along `growth_grid` and ending at least 2.
pub fn check_phi_axioms(phi: &PhiSpec, budget: u64, growth_grid: &[f64], seed: u64) -> Result<CheckReport> {
    if budget == 0 {
        return Err(Error::Precondition("budget must be at least 1".into()));
    }
    if growth_grid.len() < 2
        || growth_grid.windows(2).any(|w| !(w[1] > w[0]))
        || growth_grid[0] <= 0.0
        || *growth_grid.last().unwrap() < 1e6
    {
        return Err(Error::Precondition(
            "growth grid must be positive, strictly increasing and reach at least 1e6".into(),
        ));
    }

    let stream = stream_id("phi-axioms");
    let mut worst = par_scan(budget, |index, worst| {
        let mut rng = sample_rng(seed, stream, index);

        let alpha = signed_log_uniform(&mut rng, 1e-12, 1e12);
        let (l, r) = (phi.apply(-alpha), phi.apply(alpha));
        worst.consider(index, Relation::Equal, l, r, || {
            CounterExample::new("phi1-evenness", Relation::Equal, l, r).with_scalar("alpha", alpha)
        });
        worst.consider(index, Relation::AtLeast, r, 0.0, || {
            CounterExample::new("nonnegative", Relation::AtLeast, r, 0.0).with_scalar("alpha", alpha)
        });

        let a = log_uniform(&mut rng, 1e-6, 1e6);
        let b = a * (1.0 + log_uniform(&mut rng, 1e-3, 1e3));
        let (fa, fb) = (phi.apply(a), phi.apply(b));
        worst.consider(index, Relation::Greater, fb, fa, || {
            CounterExample::new("phi3-strictly-increasing", Relation::Greater, fb, fa)
                .with_scalar("alpha", a)
                .with_scalar("beta", b)
        });

        let x = log_uniform(&mut rng, 1e-6, 1e6);
        let (fx, fh) = (phi.apply(x), phi.apply(x + 1e-9 * x));
        let bound = 1e-6 * fx.abs().max(1.0);
        let jump = (fh - fx).abs();
        worst.consider(index, Relation::AtLeast, bound, jump, || {
            CounterExample::new("phi3-continuity", Relation::AtLeast, bound, jump).with_scalar("alpha", x)
        });
    });

    let mut offer = |clause: &str, relation, lhs: f64, rhs: f64, vars: &[(&str, f64)]| {
        worst.consider(budget, relation, lhs, rhs, || {
            vars.iter()
                .fold(CounterExample::new(clause, relation, lhs, rhs), |w, (n, v)| {
                    w.with_scalar(n, *v)
                })
        });
    };

    for alpha in [0.0, 0.5, 1.0, 2.0, 1e-9, 1e9] {
        let (l, r) = (phi.apply(-alpha), phi.apply(alpha));
        offer("phi1-evenness", Relation::Equal, l, r, &[("alpha", alpha)]);
    }
    offer("phi2-unit", Relation::Equal, phi.apply(1.0), 1.0, &[("alpha", 1.0)]);

    let near_zero: Vec<f64> = (1..=12).map(|k| 10f64.powi(-k)).collect();
    for w in near_zero.windows(2) {
        let (hi, lo) = (phi.apply(w[0]), phi.apply(w[1]));
        offer(
            "phi4-zero-decreasing",
            Relation::Less,
            lo,
            hi,
            &[("alpha", w[1]), ("beta", w[0])],
        );
    }
    let tail = phi.apply(1e-12);
    offer(
        "phi4-zero-reach",
        Relation::AtLeast,
        ZERO_REACH,
        tail,
        &[("alpha", 1e-12)],
    );

    for w in growth_grid.windows(2) {
        let (lo, hi) = (phi.apply(w[0]), phi.apply(w[1]));
        offer(
            "phi4-growth-increasing",
            Relation::Greater,
            hi,
            lo,
            &[("alpha", w[0]), ("beta", w[1])],
        );
    }
    let top = *growth_grid.last().unwrap();
    let reach = phi.apply(top);
    offer(
        "phi4-growth-reach",
        Relation::AtLeast,
        reach,
        GROWTH_REACH,
        &[("alpha", top)],
    );

    let extra = 6 + 1 + 11 + 1 + growth_grid.len() as u64;
    Ok(worst.into_report(CheckId::PhiAxioms, budget + extra, PHI_TOLERANCE))
}

/// Re-evaluates a φ-axiom witness.
pub(crate) fn reevaluate_phi(phi: &PhiSpec, w: &CounterExample) -> Option<(f64, f64)> {
    let alpha = w.scalar("alpha");
    let beta = w.scalar("beta");
    match w.clause.as_str() {
        "phi1-evenness" => alpha.map(|a| (phi.apply(-a), phi.apply(a))),
        "nonnegative" => alpha.map(|a| (phi.apply(a), 0.0)),
        "phi2-unit" => Some((phi.apply(1.0), 1.0)),
        "phi3-strictly-increasing" | "phi4-growth-increasing" => {
            let (a, b) = (alpha?, beta?);
            (0.0 < a && a < b).then(|| (phi.apply(b), phi.apply(a)))
        }
        "phi4-zero-decreasing" => {
            let (a, b) = (alpha?, beta?);
            (0.0 < a && a < b).then(|| (phi.apply(a), phi.apply(b)))
        }
        "phi3-continuity" => {
            let x = alpha.filter(|x| *x > 0.0)?;
            let fx = phi.apply(x);
            Some((1e-6 * fx.abs().max(1.0), (phi.apply(x + 1e-9 * x) - fx).abs()))
        }
        "phi4-zero-reach" => alpha.map(|a| (ZERO_REACH, phi.apply(a))),
        "phi4-growth-reach" => alpha.map(|a| (phi.apply(a), GROWTH_REACH)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clauses_failing(phi: &PhiSpec) -> Vec<String> {
        // Re-run deterministic clauses individually to see which fail.
        let mut failing = Vec::new();
        let r = check_phi_axioms(phi, 2000, &default_growth_grid(), 3).unwrap();
        if let Some(w) = r.counterexample {
            failing.push(w.clause);
        }
        failing
    }

    #[test]
    fn closed_forms() {
        assert_eq!(PhiSpec::AbsPower(0.5).eval(4.0).unwrap(), 2.0);
        assert_eq!(PhiSpec::RationalEven(1).eval(-1.0).unwrap(), 1.0);
        for phi in [PhiSpec::Abs, PhiSpec::AbsPower(0.3), PhiSpec::RationalEven(3)] {
            assert!((phi.eval(1.0).unwrap() - 1.0).abs() <= 1e-12);
        }
        assert!(PhiSpec::Abs.eval(f64::NAN).is_err());
    }

    #[test]
    fn constructors_validate() {
        assert!(PhiSpec::abs_power(0.0).is_err());
        assert!(PhiSpec::abs_power(-1.0).is_err());
        assert!(PhiSpec::rational_even(0).is_err());
        assert!(PhiSpec::AbsPower(1.0).is_abs());
        assert!(!PhiSpec::AbsPower(0.5).is_abs());
    }

    #[test]
    fn builtin_families_pass() {
        for phi in [
            PhiSpec::Abs,
            PhiSpec::AbsPower(1.0),
            PhiSpec::AbsPower(0.25),
            PhiSpec::AbsPower(2.5),
            PhiSpec::RationalEven(1),
            PhiSpec::RationalEven(2),
        ] {
            let r = check_phi_axioms(&phi, 10_000, &default_growth_grid(), 0).unwrap();
            assert!(r.passed(), "{} failed: {:?}", phi.name(), r.counterexample);
        }
    }

    #[test]
    fn shifted_abs_fails_unit_and_zero_limit() {
        let phi = PhiSpec::custom("|a|+1", |a: f64| a.abs() + 1.0);
        let r = check_phi_axioms(&phi, 1000, &default_growth_grid(), 0).unwrap();
        assert!(!r.passed());
        assert_eq!(
            reevaluate_phi(&phi, &CounterExample::new("phi2-unit", Relation::Equal, 0.0, 0.0)),
            Some((2.0, 1.0))
        );
        let zero = CounterExample::new("phi4-zero-reach", Relation::AtLeast, 0.0, 0.0).with_scalar("alpha", 1e-12);
        let (l, r) = reevaluate_phi(&phi, &zero).unwrap();
        assert!(Relation::AtLeast.violation(l, r) > 0.4);
    }

    #[test]
    fn constant_fails_strict_increase() {
        let phi = PhiSpec::custom("one", |_| 1.0);
        assert!(!check_phi_axioms(&phi, 1000, &default_growth_grid(), 0)
            .unwrap()
            .passed());
        assert!(clauses_failing(&phi)
            .iter()
            .any(|c| c.contains("increasing") || c.contains("decreasing")));
    }

    #[test]
    fn short_growth_grid_is_rejected() {
        assert!(check_phi_axioms(&PhiSpec::Abs, 10, &[1.0, 10.0], 0).is_err());
        assert!(check_phi_axioms(&PhiSpec::Abs, 0, &default_growth_grid(), 0).is_err());
    }
}
