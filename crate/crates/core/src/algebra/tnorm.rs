use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::report::{CheckId, CheckReport, CounterExample, Relation, Worst};
use crate::sampling::{par_scan, sample_rng, stream_id};

/// Slack accepted on inputs just outside the unit interval.
const UNIT_SLACK: f64 = 1e-12;

/// Tolerance for the composed identities (associativity in particular).
pub const TNORM_TOLERANCE: f64 = 1e-9;

/// Deterministic corner values mixed into every unit-interval quantifier.
pub const UNIT_CORNERS: [f64; 4] = [0.0, 1.0, 0.5, 1.0 - 1e-9];

type BinaryFn = dyn Fn(f64, f64) -> f64 + Send + Sync;

/// A user-supplied binary operation on `[0,1]`, accepted without proof.
#[derive(Clone)]
pub struct CustomBinary {
    name: String,
    f: Arc<BinaryFn>,
}

impl fmt::Debug for CustomBinary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomBinary").field("name", &self.name).finish()
    }
}

/// A triangular norm `∗` on the unit interval.
#[derive(Debug, Clone)]
pub enum TNorm {
    /// `a ∗ b = min(a, b)`
    Minimum,
    /// `a ∗ b = a·b`
    Product,
    /// `a ∗ b = max(0, a + b − 1)`
    Lukasiewicz,
    Custom(CustomBinary),
}

impl TNorm {
    pub fn custom<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        TNorm::Custom(CustomBinary {
            name: name.into(),
            f: Arc::new(f),
        })
    }

    pub fn name(&self) -> &str {
        match self {
            TNorm::Minimum => "standard-intersection",
            TNorm::Product => "algebraic-product",
            TNorm::Lukasiewicz => "bounded-difference",
            TNorm::Custom(c) => &c.name,
        }
    }

    /// Evaluates `a ∗ b`, rejecting arguments outside `[0,1]`.
    pub fn eval(&self, a: f64, b: f64) -> Result<f64> {
        for v in [a, b] {
            if v.is_nan() || !(-UNIT_SLACK..=1.0 + UNIT_SLACK).contains(&v) {
                return Err(Error::Domain(format!("t-norm argument {v} lies outside [0,1]")));
            }
        }
        Ok(self.apply(a, b))
    }

    /// Evaluates without the domain check. Arguments and result are clamped to
    /// `[0,1]`; a NaN result from a custom operation is passed through.
    pub fn apply(&self, a: f64, b: f64) -> f64 {
        let (a, b) = (a.clamp(0.0, 1.0), b.clamp(0.0, 1.0));
        let v = match self {
            TNorm::Minimum => a.min(b),
            TNorm::Product => a * b,
            TNorm::Lukasiewicz => (a + b - 1.0).max(0.0),
            TNorm::Custom(c) => (c.f)(a, b),
        };
        if v.is_nan() {
            v
        } else {
            v.clamp(0.0, 1.0)
        }
    }
}

/// Convenience wrapper for [`TNorm::eval`].
pub fn tnorm_eval(tnorm: &TNorm, a: f64, b: f64) -> Result<f64> {
    tnorm.eval(a, b)
}

/// Samples the t-norm axioms: commutativity, associativity, the identity
/// `a ∗ 1 = a` and monotonicity in both arguments.
///
/// The 256 corner quadruples over [`UNIT_CORNERS`] are always checked in
/// addition to `budget` uniform quadruples.
pub fn check_tnorm_axioms(tnorm: &TNorm, budget: u64, seed: u64) -> Result<CheckReport> {
    if budget == 0 {
        return Err(Error::Precondition("budget must be at least 1".into()));
    }
    let corners = UNIT_CORNERS.len().pow(4) as u64;
    let stream = stream_id("tnorm-axioms");
    let worst = par_scan(corners + budget, |index, worst| {
        let q = if index < corners {
            let mut i = index as usize;
            let mut q = [0.0; 4];
            for slot in q.iter_mut() {
                *slot = UNIT_CORNERS[i % 4];
                i /= 4;
            }
            q
        } else {
            let mut rng = sample_rng(seed, stream, index - corners);
            [rng.random(), rng.random(), rng.random(), rng.random()]
        };
        for (clause, relation, lhs, rhs) in tnorm_clauses(tnorm, q) {
            worst.consider(index, relation, lhs, rhs, || {
                tnorm_witness(clause, relation, lhs, rhs, q)
            });
        }
    });
    Ok(worst.into_report(CheckId::TnormAxioms, corners + budget, TNORM_TOLERANCE))
}

fn tnorm_witness(clause: &str, relation: Relation, lhs: f64, rhs: f64, q: [f64; 4]) -> CounterExample {
    let base = CounterExample::new(clause, relation, lhs, rhs);
    match clause {
        "identity" => base.with_scalar("a", q[0]),
        "commutativity" => base.with_scalar("a", q[0]).with_scalar("b", q[1]),
        "associativity" => base
            .with_scalar("a", q[0])
            .with_scalar("b", q[1])
            .with_scalar("c", q[2]),
        _ => base
            .with_scalar("a", q[0])
            .with_scalar("b", q[1])
            .with_scalar("c", q[2])
            .with_scalar("d", q[3]),
    }
}

/// Both sides of each t-norm clause at the quadruple `(a, b, c, d)`.
fn tnorm_clauses(tnorm: &TNorm, [a, b, c, d]: [f64; 4]) -> [(&'static str, Relation, f64, f64); 4] {
    let t = |x, y| tnorm.apply(x, y);
    let (lo1, hi1) = if a <= b { (a, b) } else { (b, a) };
    let (lo2, hi2) = if c <= d { (c, d) } else { (d, c) };
    [
        ("commutativity", Relation::Equal, t(a, b), t(b, a)),
        ("associativity", Relation::Equal, t(t(a, b), c), t(a, t(b, c))),
        ("identity", Relation::Equal, t(a, 1.0), a),
        ("monotonicity", Relation::AtLeast, t(hi1, hi2), t(lo1, lo2)),
    ]
}

/// Re-evaluates one clause of a t-norm witness; `None` when the witness lacks
/// a variable the clause needs.
pub(crate) fn reevaluate_tnorm(tnorm: &TNorm, w: &CounterExample) -> Option<(f64, f64)> {
    let get = |n| w.scalar(n).filter(|v| (0.0..=1.0).contains(v));
    let clauses = match w.clause.as_str() {
        "identity" => tnorm_clauses(tnorm, [get("a")?, 0.0, 0.0, 0.0]),
        "commutativity" => tnorm_clauses(tnorm, [get("a")?, get("b")?, 0.0, 0.0]),
        "associativity" => tnorm_clauses(tnorm, [get("a")?, get("b")?, get("c")?, 0.0]),
        "monotonicity" => tnorm_clauses(tnorm, [get("a")?, get("b")?, get("c")?, get("d")?]),
        _ => return None,
    };
    clauses
        .into_iter()
        .find(|(name, ..)| *name == w.clause)
        .map(|(_, _, lhs, rhs)| (lhs, rhs))
}

/// Moduli of continuity at `(1,1)` measured by [`check_continuity_at_one`].
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityCheck {
    pub report: CheckReport,
    /// `sup |1 − a∗b|` over the sampled square `[1−ε, 1]²`, one per grid entry.
    pub moduli: Vec<f64>,
}

const SQUARE_STEPS: usize = 32;

/// Estimates the modulus of continuity of `∗` at `(1,1)` on a decreasing
/// ε-grid. Passes when the moduli never grow from one grid step to the next
/// and the last one is at most `10·ε_last`.
pub fn check_continuity_at_one(tnorm: &TNorm, grid: &[f64]) -> Result<ContinuityCheck> {
    if grid.is_empty() {
        return Err(Error::Precondition("epsilon grid is empty".into()));
    }
    if grid.iter().any(|&e| !(e > 0.0 && e <= 1.0)) || grid.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Precondition(
            "epsilon grid must be strictly decreasing within (0, 1]".into(),
        ));
    }

    let mut worst = Worst::empty();
    let mut moduli = Vec::with_capacity(grid.len());
    let mut sample = 0u64;
    for (step, &eps) in grid.iter().enumerate() {
        let mut modulus = 0.0f64;
        let mut arg = (1.0, 1.0);
        for i in 0..=SQUARE_STEPS {
            for j in 0..=SQUARE_STEPS {
                let a = 1.0 - eps * i as f64 / SQUARE_STEPS as f64;
                let b = 1.0 - eps * j as f64 / SQUARE_STEPS as f64;
                let gap = (1.0 - tnorm.apply(a, b)).abs();
                if gap > modulus || gap.is_nan() {
                    modulus = if gap.is_nan() { 1.0 } else { gap };
                    arg = (a, b);
                }
                sample += 1;
            }
        }
        let witness = |relation, lhs, rhs| {
            CounterExample::new(
                if step + 1 == grid.len() {
                    "final-modulus"
                } else {
                    "non-increasing"
                },
                relation,
                lhs,
                rhs,
            )
            .with_scalar("epsilon", eps)
            .with_scalar("a", arg.0)
            .with_scalar("b", arg.1)
        };
        if let Some(&prev) = moduli.last() {
            worst.consider(step as u64, Relation::AtLeast, prev, modulus, || {
                witness(Relation::AtLeast, prev, modulus)
            });
        }
        if step + 1 == grid.len() {
            worst.consider(step as u64, Relation::AtLeast, 10.0 * eps, modulus, || {
                witness(Relation::AtLeast, 10.0 * eps, modulus)
            });
        }
        moduli.push(modulus);
    }
    Ok(ContinuityCheck {
        report: worst.into_report(CheckId::TnormContinuity, sample, TNORM_TOLERANCE),
        moduli,
    })
}
