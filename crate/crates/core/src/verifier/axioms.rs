//! Sample construction and evaluation for every checkable property.
//!
//! Samples are represented directly as [`CounterExample`]s: the quantified
//! variables are drawn, then [`evaluate`] fills in both sides. The same
//! evaluator re-checks shrunk witnesses, so a reported witness always
//! reproduces under independent re-evaluation.

use rand::Rng;
use rand_distr::{Cauchy, Distribution};

use super::SamplerConfig;
use crate::algebra::{reevaluate_phi, reevaluate_tnorm};
use crate::fuzzynorm::{FuzzyNormSpec, Vector};
use crate::report::{CheckId, CounterExample, Relation};
use crate::sampling::{log_uniform, signed_log_uniform};

/// Grid for the converse of bN2: `t = 10⁻⁹ … 10⁹`, two points per decade.
pub(crate) fn converse_grid() -> Vec<f64> {
    (-18..=18).map(|k| 10f64.powf(k as f64 / 2.0)).collect()
}

/// Minimum crisp size of `x` for the converse of bN2 to be checked.
pub const CONVERSE_MIN_BASE: f64 = 1e-6;
/// `N(x, t)` must drop below `1 − CONVERSE_GAP` somewhere on the grid.
pub const CONVERSE_GAP: f64 = 1e-9;
/// Required closeness to 1 at the large-`t` surrogate.
pub const LIMIT_GAP: f64 = 1e-6;

/// Evaluates both sides of `w.clause` for the property `check`.
///
/// Returns `None` when the witness is malformed or falls outside the clause's
/// quantifier domain (for example `t > 0` in bN1).
pub fn evaluate(norm: &FuzzyNormSpec, check: CheckId, w: &CounterExample) -> Option<(f64, f64)> {
    let n = |x: &[f64], t: f64| norm.value(x, t);
    match (check, w.clause.as_str()) {
        (CheckId::Bn1, "zero-for-nonpositive-t") => {
            let t = w.scalar("t").filter(|t| *t <= 0.0)?;
            Some((n(w.vector("x")?, t), 0.0))
        }
        (CheckId::Bn2, "theta-is-one") => {
            let x = w.vector("x").filter(|x| x.is_zero())?;
            let t = w.scalar("t").filter(|t| *t > 0.0)?;
            Some((n(x, t), 1.0))
        }
        (CheckId::Bn2, "converse") => {
            let x = w.vector("x").filter(|x| norm.base().value(x) >= CONVERSE_MIN_BASE)?;
            let lowest = converse_grid()
                .into_iter()
                .map(|t| n(x, t))
                .fold(f64::INFINITY, |m, v| if v.is_nan() { v } else { m.min(v) });
            Some((lowest, 1.0 - CONVERSE_GAP))
        }
        (CheckId::Bn3, "scalar") => {
            let (x, t, c) = (w.vector("x")?, w.scalar("t")?, w.scalar("c")?);
            let phi_c = norm.phi().apply(c);
            if !(t > 0.0) || phi_c == 0.0 || !phi_c.is_finite() {
                return None;
            }
            Some((n(&x.scale(c), t), n(x, t / phi_c)))
        }
        (CheckId::Bn4, "b-triangle") => {
            let (x, y) = (w.vector("x")?, w.vector("y")?);
            let (s, t) = (w.scalar("s")?, w.scalar("t")?);
            let lhs = n(&x.add(y), s + norm.k() * t);
            let (nx, ny) = (n(x, s), n(y, t));
            let rhs = if nx.is_nan() || ny.is_nan() {
                f64::NAN
            } else {
                norm.tnorm().apply(nx, ny)
            };
            Some((lhs, rhs))
        }
        (CheckId::Bn5Monotone, "non-decreasing") => {
            let x = w.vector("x")?;
            let (t1, t2) = (w.scalar("t1")?, w.scalar("t2")?);
            (t1 < t2).then(|| (n(x, t2), n(x, t1)))
        }
        (CheckId::Bn5Limit, "large-t") => {
            let x = w.vector("x")?;
            Some((n(x, limit_time(norm, x)), 1.0 - LIMIT_GAP))
        }
        (CheckId::PowerInequality, "power") => {
            let (x, y) = (w.scalar("x")?, w.scalar("y")?);
            let p = w.scalar("p").filter(|p| *p > 0.0 && *p <= 1.0)?;
            let lhs = 2f64.powf(p) * x.abs().powf(p) + y.abs().powf(p);
            let rhs = (x + y).abs().powf(p);
            let scale = lhs.max(1.0);
            Some((lhs / scale, rhs / scale))
        }
        (CheckId::TnormAxioms, _) => reevaluate_tnorm(norm.tnorm(), w),
        (CheckId::PhiAxioms, _) => reevaluate_phi(norm.phi(), w),
        _ => None,
    }
}

/// `T = 10⁹·(1 + base(x)^p)`, the bounded stand-in for `t → ∞`.
pub(crate) fn limit_time(norm: &FuzzyNormSpec, x: &[f64]) -> f64 {
    1e9 * (1.0 + norm.base().value(x).powf(norm.exponent()))
}

fn fill(norm: &FuzzyNormSpec, check: CheckId, mut w: CounterExample) -> CounterExample {
    match evaluate(norm, check, &w) {
        Some((lhs, rhs)) => {
            w.lhs = lhs;
            w.rhs = rhs;
        }
        None => {
            // Out-of-domain draws cannot happen for the generators below.
            w.lhs = f64::NAN;
            w.rhs = f64::NAN;
        }
    }
    w
}

fn relation_of(check: CheckId, clause: &str) -> Relation {
    match (check, clause) {
        (CheckId::Bn2, "converse") => Relation::Less,
        (CheckId::Bn4, _) | (CheckId::Bn5Monotone, _) | (CheckId::Bn5Limit, _) => Relation::AtLeast,
        (CheckId::PowerInequality, _) => Relation::AtLeast,
        _ => Relation::Equal,
    }
}

fn blank(check: CheckId, clause: &str) -> CounterExample {
    CounterExample::new(clause, relation_of(check, clause), 0.0, 0.0)
}

/// Deterministic samples checked before the random ones.
pub(crate) fn corners(norm: &FuzzyNormSpec, check: CheckId, dim: usize) -> Vec<CounterExample> {
    let theta = Vector::zeros(dim);
    let e1 = Vector::unit(dim, 0);
    let ones = Vector::from(vec![1.0; dim]);
    let big = e1.scale(1e6);
    let tiny = e1.scale(1e-6);
    let points = [theta.clone(), e1.clone(), ones.clone(), big, tiny];
    let mut out = Vec::new();
    match check {
        CheckId::Bn1 => {
            for x in &points {
                for t in [0.0, -0.0, -1e-12, -1.0, -1e6] {
                    out.push(
                        blank(check, "zero-for-nonpositive-t")
                            .with_vector("x", x.clone())
                            .with_scalar("t", t),
                    );
                }
            }
        }
        CheckId::Bn2 => {
            for t in [1e-12, 1e-6, 0.5, 1.0, 1e6, 1e12] {
                out.push(
                    blank(check, "theta-is-one")
                        .with_vector("x", theta.clone())
                        .with_scalar("t", t),
                );
            }
            for x in &points[1..] {
                out.push(blank(check, "converse").with_vector("x", x.clone()));
            }
        }
        CheckId::Bn3 => {
            for c in [1.0, -1.0, 0.5, 2.0, 1e-3, -1e3] {
                for x in &points {
                    out.push(
                        blank(check, "scalar")
                            .with_vector("x", x.clone())
                            .with_scalar("t", 1.0)
                            .with_scalar("c", c),
                    );
                }
            }
        }
        CheckId::Bn4 => {
            let st = [
                (1.0, 1.0),
                (0.0, 1.0),
                (1.0, 0.0),
                (0.0, 0.0),
                (-1.0, 2.0),
                (2.0, -1.0),
                (-1.0, -1.0),
                (1e-6, 1e6),
            ];
            for (s, t) in st {
                for (x, y) in [(&e1, &e1), (&e1, &theta), (&theta, &ones), (&ones, &e1)] {
                    out.push(
                        blank(check, "b-triangle")
                            .with_vector("x", x.clone())
                            .with_vector("y", y.clone())
                            .with_scalar("s", s)
                            .with_scalar("t", t),
                    );
                }
            }
        }
        CheckId::Bn5Monotone => {
            for x in &points {
                for (t1, t2) in [(-1.0, 0.0), (0.0, 1e-9), (-1.0, 1.0), (1.0, 2.0), (1e6, 1e12)] {
                    out.push(
                        blank(check, "non-decreasing")
                            .with_vector("x", x.clone())
                            .with_scalar("t1", t1)
                            .with_scalar("t2", t2),
                    );
                }
            }
        }
        CheckId::Bn5Limit => {
            for x in &points {
                out.push(blank(check, "large-t").with_vector("x", x.clone()));
            }
        }
        CheckId::PowerInequality => {
            for p in [1.0, 0.5, 0.25, 1e-3] {
                for (x, y) in [
                    (0.0, 0.0),
                    (1.0, 1.0),
                    (1.0, -1.0),
                    (0.0, 3.0),
                    (3.0, 0.0),
                    (-2.0, -5.0),
                ] {
                    out.push(
                        blank(check, "power")
                            .with_scalar("x", x)
                            .with_scalar("y", y)
                            .with_scalar("p", p),
                    );
                }
            }
        }
        _ => {}
    }
    out.into_iter().map(|w| fill(norm, check, w)).collect()
}

fn draw_vector<R: Rng>(rng: &mut R, cfg: &SamplerConfig) -> Vector {
    let cauchy = Cauchy::new(0.0, cfg.coordinate_scale).expect("positive scale");
    Vector::from((0..cfg.dim).map(|_| cauchy.sample(rng)).collect::<Vec<_>>())
}

fn draw_t<R: Rng>(rng: &mut R, cfg: &SamplerConfig) -> f64 {
    log_uniform(rng, cfg.t_range.0, cfg.t_range.1)
}

/// One random sample for `check`.
pub(crate) fn draw<R: Rng>(norm: &FuzzyNormSpec, check: CheckId, cfg: &SamplerConfig, rng: &mut R) -> CounterExample {
    let w = match check {
        CheckId::Bn1 => {
            let t = -draw_t(rng, cfg);
            blank(check, "zero-for-nonpositive-t")
                .with_vector("x", draw_vector(rng, cfg))
                .with_scalar("t", t)
        }
        CheckId::Bn2 => {
            let x = draw_vector(rng, cfg);
            if rng.random::<bool>() || norm.base().value(&x) < CONVERSE_MIN_BASE {
                let t = draw_t(rng, cfg);
                blank(check, "theta-is-one")
                    .with_vector("x", Vector::zeros(cfg.dim))
                    .with_scalar("t", t)
            } else {
                blank(check, "converse").with_vector("x", x)
            }
        }
        CheckId::Bn3 => {
            let x = draw_vector(rng, cfg);
            let t = draw_t(rng, cfg);
            let c = signed_log_uniform(rng, cfg.c_range.0, cfg.c_range.1);
            blank(check, "scalar")
                .with_vector("x", x)
                .with_scalar("t", t)
                .with_scalar("c", c)
        }
        CheckId::Bn4 => {
            let x = draw_vector(rng, cfg);
            let y = draw_vector(rng, cfg);
            let s = draw_t(rng, cfg);
            let t = draw_t(rng, cfg);
            blank(check, "b-triangle")
                .with_vector("x", x)
                .with_vector("y", y)
                .with_scalar("s", s)
                .with_scalar("t", t)
        }
        CheckId::Bn5Monotone => {
            let x = draw_vector(rng, cfg);
            let a = draw_t(rng, cfg);
            let b = draw_t(rng, cfg);
            let (t1, t2) = if a < b {
                (a, b)
            } else if b < a {
                (b, a)
            } else {
                (a, 2.0 * a)
            };
            blank(check, "non-decreasing")
                .with_vector("x", x)
                .with_scalar("t1", t1)
                .with_scalar("t2", t2)
        }
        CheckId::Bn5Limit => blank(check, "large-t").with_vector("x", draw_vector(rng, cfg)),
        CheckId::PowerInequality => {
            let cauchy = Cauchy::new(0.0, cfg.coordinate_scale).expect("positive scale");
            let x = cauchy.sample(rng);
            let y = cauchy.sample(rng);
            let p = 1.0 - rng.random::<f64>();
            blank(check, "power")
                .with_scalar("x", x)
                .with_scalar("y", y)
                .with_scalar("p", p)
        }
        other => unreachable!("{other} is not a sampled norm property"),
    };
    fill(norm, check, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzynorm::{make_example_norm, CrispNorm, ExampleKind};

    #[test]
    fn every_corner_is_in_domain() {
        let norm = make_example_norm(ExampleKind::Rational, 0.5, CrispNorm::L2, None).unwrap();
        for check in [
            CheckId::Bn1,
            CheckId::Bn2,
            CheckId::Bn3,
            CheckId::Bn4,
            CheckId::Bn5Monotone,
            CheckId::Bn5Limit,
            CheckId::PowerInequality,
        ] {
            for dim in [1, 3] {
                for w in corners(&norm, check, dim) {
                    assert!(!w.lhs.is_nan() && !w.rhs.is_nan(), "{check} {w:?}");
                    assert!(w.violation() <= 1e-9, "{check} {w:?}");
                }
            }
        }
    }

    #[test]
    fn out_of_domain_witnesses_are_rejected() {
        let norm = make_example_norm(ExampleKind::Rational, 1.0, CrispNorm::L2, None).unwrap();
        let w = blank(CheckId::Bn1, "zero-for-nonpositive-t")
            .with_vector("x", Vector::unit(1, 0))
            .with_scalar("t", 1.0);
        assert_eq!(evaluate(&norm, CheckId::Bn1, &w), None);
        let w = blank(CheckId::Bn3, "scalar")
            .with_vector("x", Vector::unit(1, 0))
            .with_scalar("t", 1.0)
            .with_scalar("c", 0.0);
        assert_eq!(evaluate(&norm, CheckId::Bn3, &w), None);
    }

    #[test]
    fn b_triangle_at_unit_point() {
        // rational p=1, K=2, min: N(2, 3) = 3/5 vs min(1/2, 1/2)
        let norm = make_example_norm(ExampleKind::Rational, 1.0, CrispNorm::L2, None).unwrap();
        let w = blank(CheckId::Bn4, "b-triangle")
            .with_vector("x", Vector::unit(1, 0))
            .with_vector("y", Vector::unit(1, 0))
            .with_scalar("s", 1.0)
            .with_scalar("t", 1.0);
        let (l, r) = evaluate(&norm, CheckId::Bn4, &w).unwrap();
        assert!((l - 0.6).abs() < 1e-15);
        assert_eq!(r, 0.5);
    }
}
