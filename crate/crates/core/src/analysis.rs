//! Sequences, balls and bounded sets in a fuzzy normed space.
//!
//! Limits over all `t > 0` and all indices are replaced by finite surrogates:
//! a log-spaced `t` grid and a final window of indices below a horizon. The
//! verdict names say so.

use std::fmt;
use std::sync::Arc;

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzynorm::{FuzzyNormSpec, Vector};
use crate::report::{CheckId, CheckReport, CounterExample, Relation};
use crate::sampling::{log_grid, sample_rng, stream_id};

type TermFn = dyn Fn(usize) -> Vector + Send + Sync;

#[derive(Clone)]
pub struct CustomSequence {
    name: String,
    f: Arc<TermFn>,
}

impl fmt::Debug for CustomSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomSequence").field("name", &self.name).finish()
    }
}

#[derive(Debug, Clone)]
pub enum SequenceKind {
    /// `x_n = limit + ratioⁿ · direction`
    GeometricApproach {
        limit: Vector,
        direction: Vector,
        ratio: f64,
    },
    /// `x_n` is the `n`-th entry (1-based).
    ExplicitList(Vec<Vector>),
    /// `x_n = n · direction`
    DivergentRay {
        direction: Vector,
    },
    Custom(CustomSequence),
}

/// A sequence `x_1, x_2, …` evaluated up to `horizon`.
#[derive(Debug, Clone)]
pub struct SequenceGen {
    kind: SequenceKind,
    horizon: usize,
}

impl SequenceGen {
    pub fn geometric(limit: Vector, direction: Vector, ratio: f64, horizon: usize) -> Result<Self> {
        if limit.dim() != direction.dim() {
            return Err(Error::InvalidSpec("limit and direction dimensions differ".into()));
        }
        if !(ratio.abs() < 1.0) {
            return Err(Error::InvalidSpec(format!(
                "geometric ratio must satisfy |r| < 1, got {ratio}"
            )));
        }
        Self::build(
            SequenceKind::GeometricApproach {
                limit,
                direction,
                ratio,
            },
            horizon,
        )
    }

    /// A list sequence; the horizon is the list length.
    pub fn explicit(terms: Vec<Vector>) -> Result<Self> {
        let horizon = terms.len();
        if let Some(first) = terms.first() {
            if terms.iter().any(|v| v.dim() != first.dim()) {
                return Err(Error::InvalidSpec("list terms must share a dimension".into()));
            }
        }
        Self::build(SequenceKind::ExplicitList(terms), horizon)
    }

    pub fn divergent_ray(direction: Vector, horizon: usize) -> Result<Self> {
        Self::build(SequenceKind::DivergentRay { direction }, horizon)
    }

    pub fn custom<F>(name: impl Into<String>, f: F, horizon: usize) -> Result<Self>
    where
        F: Fn(usize) -> Vector + Send + Sync + 'static,
    {
        let kind = SequenceKind::Custom(CustomSequence {
            name: name.into(),
            f: Arc::new(f),
        });
        Self::build(kind, horizon)
    }

    fn build(kind: SequenceKind, horizon: usize) -> Result<Self> {
        if horizon < 2 {
            return Err(Error::InvalidSpec(format!(
                "sequence horizon must be at least 2, got {horizon}"
            )));
        }
        Ok(SequenceGen { kind, horizon })
    }

    pub fn kind(&self) -> &SequenceKind {
        &self.kind
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// Same sequence with a different horizon. List sequences cannot be extended.
    pub fn with_horizon(mut self, horizon: usize) -> Result<Self> {
        if let SequenceKind::ExplicitList(terms) = &self.kind {
            if horizon > terms.len() {
                return Err(Error::InvalidSpec("horizon exceeds the list length".into()));
            }
        }
        if horizon < 2 {
            return Err(Error::InvalidSpec(format!(
                "sequence horizon must be at least 2, got {horizon}"
            )));
        }
        self.horizon = horizon;
        Ok(self)
    }

    /// The term `x_n`, `1 ≤ n ≤ horizon`.
    pub fn term(&self, n: usize) -> Vector {
        match &self.kind {
            SequenceKind::GeometricApproach {
                limit,
                direction,
                ratio,
            } => limit.add(&direction.scale(ratio.powi(n as i32))),
            SequenceKind::ExplicitList(terms) => terms[n - 1].clone(),
            SequenceKind::DivergentRay { direction } => direction.scale(n as f64),
            SequenceKind::Custom(c) => (c.f)(n),
        }
    }

    /// `x_1 … x_horizon`; errors if any generated coordinate is not finite.
    pub fn terms(&self) -> Result<Vec<Vector>> {
        let terms: Vec<Vector> = (1..=self.horizon).map(|n| self.term(n)).collect();
        if terms.iter().any(|v| v.iter().any(|c| !c.is_finite())) {
            return Err(Error::Domain("sequence produced a non-finite coordinate".into()));
        }
        Ok(terms)
    }

    /// `c · x_n` termwise.
    pub fn scaled(&self, c: f64) -> SequenceGen {
        let kind = match &self.kind {
            SequenceKind::GeometricApproach {
                limit,
                direction,
                ratio,
            } => SequenceKind::GeometricApproach {
                limit: limit.scale(c),
                direction: direction.scale(c),
                ratio: *ratio,
            },
            SequenceKind::ExplicitList(terms) => SequenceKind::ExplicitList(terms.iter().map(|v| v.scale(c)).collect()),
            SequenceKind::DivergentRay { direction } => SequenceKind::DivergentRay {
                direction: direction.scale(c),
            },
            SequenceKind::Custom(inner) => {
                let f = inner.f.clone();
                SequenceKind::Custom(CustomSequence {
                    name: format!("{c}*{}", inner.name),
                    f: Arc::new(move |n| f(n).scale(c)),
                })
            }
        };
        SequenceGen {
            kind,
            horizon: self.horizon,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceVerdict {
    ConvergesTo(Vector),
    /// Returned by [`check_cauchy`], which does not look for a limit.
    Cauchy,
    CauchyButUndetectedLimit,
    NotCauchyAtHorizon,
}

/// Worst membership value seen at one grid `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridEvidence {
    pub t: f64,
    pub worst: f64,
    /// Least-squares slope of the window values against the index (convergence only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slope: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceVerdict {
    pub verdict: SequenceVerdict,
    /// `1 − tol`, the level every window value has to reach.
    pub threshold: f64,
    /// First and last index of the window the evidence was taken over.
    pub window: (usize, usize),
    pub evidence: Vec<GridEvidence>,
    /// `min over t of (worst − threshold)`; negative means the window test failed.
    pub margin: f64,
}

impl ConvergenceVerdict {
    pub fn converges(&self) -> bool {
        matches!(self.verdict, SequenceVerdict::ConvergesTo(_))
    }

    pub fn is_cauchy(&self) -> bool {
        !matches!(self.verdict, SequenceVerdict::NotCauchyAtHorizon)
    }
}

/// Default `t` grid: 16 log-spaced points from `10⁻³` to `10³`.
pub fn default_t_grid() -> Vec<f64> {
    log_grid(-3.0, 3.0, 16)
}

fn validate_grid(t_grid: &[f64], tol: f64) -> Result<()> {
    if t_grid.is_empty() {
        return Err(Error::Domain("t grid must not be empty".into()));
    }
    if t_grid.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
        return Err(Error::Domain("t grid entries must be positive and finite".into()));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::Domain(format!("tolerance must lie in (0,1), got {tol}")));
    }
    Ok(())
}

/// Last 10% of `1..=last`, at least one index.
fn final_window(last: usize) -> (usize, usize) {
    let width = (last / 10).max(1);
    (last + 1 - width.min(last), last)
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mx, my) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x / n, b + y / n));
    let (num, den) = points.iter().fold((0.0, 0.0), |(num, den), (x, y)| {
        (num + (x - mx) * (y - my), den + (x - mx) * (x - mx))
    });
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Fuzzy Cauchy test at the horizon.
///
/// With `P = max(1, horizon/4)`, the window is the last 10% of the indices
/// `n ≤ horizon − P`; the sequence is judged Cauchy when
/// `N(x_{n+p} − x_n, t) ≥ 1 − tol` for every grid `t`, every `p ≤ P` and every
/// window index `n`.
pub fn check_cauchy(norm: &FuzzyNormSpec, seq: &SequenceGen, t_grid: &[f64], tol: f64) -> Result<ConvergenceVerdict> {
    validate_grid(t_grid, tol)?;
    let terms = seq.terms()?;
    Ok(cauchy_on_terms(norm, &terms, t_grid, tol))
}

fn cauchy_on_terms(norm: &FuzzyNormSpec, terms: &[Vector], t_grid: &[f64], tol: f64) -> ConvergenceVerdict {
    let horizon = terms.len();
    let max_step = (horizon / 4).max(1);
    let window = final_window(horizon - max_step);
    let threshold = 1.0 - tol;

    let increments: Vec<Vector> = (window.0..=window.1)
        .flat_map(|n| (1..=max_step).map(move |p| (n, p)))
        .map(|(n, p)| terms[n + p - 1].sub(&terms[n - 1]))
        .collect();
    let evidence: Vec<GridEvidence> = t_grid
        .par_iter()
        .map(|&t| GridEvidence {
            t,
            worst: increments
                .iter()
                .map(|d| norm.value(d, t))
                .fold(f64::INFINITY, f64::min),
            slope: None,
        })
        .collect();
    let margin = evidence
        .iter()
        .map(|e| e.worst - threshold)
        .fold(f64::INFINITY, f64::min);
    let verdict = if margin >= 0.0 {
        SequenceVerdict::Cauchy
    } else {
        SequenceVerdict::NotCauchyAtHorizon
    };
    ConvergenceVerdict {
        verdict,
        threshold,
        window,
        evidence,
        margin,
    }
}

/// Decides whether `seq` converges to `candidate` at the horizon.
///
/// Convergence requires, for every grid `t`, that `N(x_n − candidate, t)` stays
/// at or above `1 − tol` over the last 10% of indices with a least-squares
/// slope of at least `−tol`, and that [`check_cauchy`] passes under the same
/// grid and tolerance. A Cauchy sequence whose window misses the candidate is
/// reported as `CauchyButUndetectedLimit`.
pub fn check_convergence(
    norm: &FuzzyNormSpec,
    seq: &SequenceGen,
    candidate: &Vector,
    t_grid: &[f64],
    tol: f64,
) -> Result<ConvergenceVerdict> {
    validate_grid(t_grid, tol)?;
    let terms = seq.terms()?;
    if terms[0].dim() != candidate.dim() {
        return Err(Error::Domain("candidate dimension differs from the sequence".into()));
    }
    let cauchy = cauchy_on_terms(norm, &terms, t_grid, tol);
    if !cauchy.is_cauchy() {
        return Ok(cauchy);
    }

    let threshold = 1.0 - tol;
    let window = final_window(terms.len());
    let gaps: Vec<(f64, Vector)> = (window.0..=window.1)
        .map(|n| (n as f64, terms[n - 1].sub(candidate)))
        .collect();
    let evidence: Vec<GridEvidence> = t_grid
        .par_iter()
        .map(|&t| {
            let values: Vec<(f64, f64)> = gaps.iter().map(|(n, d)| (*n, norm.value(d, t))).collect();
            GridEvidence {
                t,
                worst: values.iter().map(|v| v.1).fold(f64::INFINITY, f64::min),
                slope: Some(if values.len() >= 2 { slope(&values) } else { 0.0 }),
            }
        })
        .collect();
    let margin = evidence
        .iter()
        .map(|e| (e.worst - threshold).min(e.slope.unwrap_or(0.0) + tol))
        .fold(f64::INFINITY, f64::min);
    let verdict = if margin >= 0.0 {
        SequenceVerdict::ConvergesTo(candidate.clone())
    } else {
        SequenceVerdict::CauchyButUndetectedLimit
    };
    Ok(ConvergenceVerdict {
        verdict,
        threshold,
        window,
        evidence,
        margin,
    })
}

/// Whether `y` lies in the open ball `B(center, alpha, t) = {y : N(center − y, t) > 1 − alpha}`.
pub fn ball_contains(norm: &FuzzyNormSpec, center: &Vector, alpha: f64, t: f64, y: &Vector) -> Result<bool> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("alpha must lie in (0,1), got {alpha}")));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("t must be positive, got {t}")));
    }
    if center.dim() != y.dim() {
        return Err(Error::Domain("ball center and point dimensions differ".into()));
    }
    Ok(norm.membership(&center.sub(y), t)? > 1.0 - alpha)
}

/// Default `(α, t)` search grid for [`probe_openness`]: `α ∈ {0.5, 0.1, 0.01}`
/// crossed with `t ∈ {1, 10⁻¹, …, 10⁻⁶}`.
pub fn default_openness_grid() -> Vec<(f64, f64)> {
    let mut grid = Vec::new();
    for k in 0..=6 {
        for alpha in [0.5, 0.1, 0.01] {
            grid.push((alpha, 10f64.powi(-k)));
        }
    }
    grid
}

/// Fractions of the boundary radius at which ball points are tested.
const RADIUS_FRACTIONS: [f64; 6] = [0.25, 0.5, 0.75, 0.9, 0.99, 0.999];
const RADIUS_CAP: f64 = 1e12;
const RADIUS_FLOOR: f64 = 1e-300;

fn probe_directions(dim: usize) -> Vec<Vector> {
    let stream = stream_id("openness-directions");
    let mut dirs: Vec<Vector> = (0..dim)
        .flat_map(|i| [Vector::unit(dim, i), Vector::unit(dim, i).scale(-1.0)])
        .collect();
    let mut index = 0;
    while dirs.len() < 64 * dim {
        let mut rng = sample_rng(0, stream, index);
        index += 1;
        let v: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
        let len = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if len > 1e-6 {
            dirs.push(Vector::from(v.into_iter().map(|c| c / len).collect::<Vec<_>>()));
        }
    }
    dirs
}

/// Largest radius `ρ` (up to a cap) with `ρu` still in the ball around the origin, found by
/// doubling/halving and bisection. Assumes the ball is star-shaped along `u`.
fn boundary_radius(norm: &FuzzyNormSpec, u: &Vector, alpha: f64, t: f64) -> f64 {
    let inside = |rho: f64| norm.value(&u.scale(-rho), t) > 1.0 - alpha;
    let (mut lo, mut hi);
    if inside(1.0) {
        lo = 1.0;
        while lo < RADIUS_CAP && inside(2.0 * lo) {
            lo *= 2.0;
        }
        if lo >= RADIUS_CAP {
            return RADIUS_CAP;
        }
        hi = 2.0 * lo;
    } else {
        hi = 1.0;
        while hi > RADIUS_FLOOR && !inside(hi / 2.0) {
            hi /= 2.0;
        }
        if hi <= RADIUS_FLOOR {
            return 0.0;
        }
        lo = hi / 2.0;
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if inside(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Sampled openness of a set given by a predicate.
///
/// For each probe point the `(α, t)` grid is searched for a ball around the
/// point whose sampled points (64·dim directions, each at several fractions
/// of the boundary radius) all satisfy the predicate. Passes when every probe
/// point gets such a ball.
pub fn probe_openness<P>(
    norm: &FuzzyNormSpec,
    predicate: P,
    probe_points: &[Vector],
    search_grid: &[(f64, f64)],
) -> Result<CheckReport>
where
    P: Fn(&Vector) -> bool + Sync,
{
    if let Some(bad) = probe_points.iter().find(|x| !predicate(x)) {
        return Err(Error::Precondition(format!(
            "probe point {:?} is not in the set",
            bad.coords()
        )));
    }
    if search_grid.iter().any(|(a, t)| !(*a > 0.0 && *a < 1.0 && *t > 0.0)) {
        return Err(Error::Precondition("search grid needs alpha in (0,1) and t > 0".into()));
    }
    let samples_per_ball = |dim: usize| (64 * dim * RADIUS_FRACTIONS.len()) as u64;

    let outcomes: Vec<std::result::Result<(), CounterExample>> = probe_points
        .par_iter()
        .map(|x| {
            let dirs = probe_directions(x.dim());
            let mut escape = None;
            for &(alpha, t) in search_grid {
                let outside = dirs.iter().find_map(|u| {
                    let rho = boundary_radius(norm, u, alpha, t);
                    RADIUS_FRACTIONS
                        .iter()
                        .map(|f| x.add(&u.scale(f * rho)))
                        .find(|y| !predicate(y))
                });
                match outside {
                    None => return Ok(()),
                    Some(y) => escape = Some((alpha, t, y)),
                }
            }
            let mut w = CounterExample::new("no-ball-inside", Relation::AtLeast, 0.0, 1.0).with_vector("x", x.clone());
            if let Some((alpha, t, y)) = escape {
                w = w.with_scalar("alpha", alpha).with_scalar("t", t).with_vector("y", y);
            }
            Err(w)
        })
        .collect();

    let samples: u64 = probe_points
        .iter()
        .map(|x| samples_per_ball(x.dim()) * search_grid.len() as u64)
        .sum();
    let witness = outcomes.into_iter().find_map(|o| o.err());
    let margin = if witness.is_some() { -1.0 } else { 0.0 };
    Ok(CheckReport::new(CheckId::Openness, samples, margin, 0.0, witness))
}

/// Outcome of [`check_fuzzy_bounded`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Boundedness {
    pub bounded: bool,
    pub witness_t: Option<f64>,
}

/// Caveat attached to boundedness reports.
pub const BOUNDEDNESS_READING: &str =
    "fuzzy boundedness uses the reading N(x,t) > 1 - r; the literal N(x,t) > 1 holds for no x != 0";

/// Boundedness search grid: `10^(k/10)` from `10⁻⁶` to `10¹²`.
pub fn boundedness_grid() -> Vec<f64> {
    log_grid(-6.0, 12.0, 181)
}

/// Looks for a single `t` on [`boundedness_grid`] with `N(x, t) > 1 − r` for
/// every listed point and returns the first one.
pub fn check_fuzzy_bounded(norm: &FuzzyNormSpec, points: &[Vector], r: f64) -> Result<Boundedness> {
    if points.is_empty() {
        return Err(Error::Precondition("boundedness needs at least one point".into()));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("r must lie in (0,1), got {r}")));
    }
    let level = 1.0 - r;
    // far points fail first for the closed forms, which keeps the scan short
    let mut order: Vec<&Vector> = points.iter().collect();
    let base = norm.base();
    order.sort_by(|a, b| base.value(b).total_cmp(&base.value(a)));
    let witness_t = boundedness_grid()
        .into_iter()
        .find(|&t| order.iter().all(|x| norm.value(x, t) > level));
    Ok(Boundedness {
        bounded: witness_t.is_some(),
        witness_t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzynorm::{make_example_norm, CrispNorm, ExampleKind};

    fn rational() -> FuzzyNormSpec {
        make_example_norm(ExampleKind::Rational, 1.0, CrispNorm::L2, None).unwrap()
    }

    fn v(c: &[f64]) -> Vector {
        Vector::from(c.to_vec())
    }

    #[test]
    fn geometric_sequence_converges() {
        let seq = SequenceGen::geometric(v(&[1.0, 1.0]), v(&[1.0, 0.0]), 0.5, 60).unwrap();
        let out = check_convergence(&rational(), &seq, &v(&[1.0, 1.0]), &[0.01, 1.0, 100.0], 1e-6).unwrap();
        assert_eq!(out.verdict, SequenceVerdict::ConvergesTo(v(&[1.0, 1.0])));
        assert_eq!(out.window, (55, 60));
        // N(x_55 - x*, 0.01) = 0.01 / (0.01 + 2^-55), which rounds to 1
        let expect = 0.01 / (0.01 + 0.5f64.powi(55));
        assert!(out.evidence[0].worst >= expect);
    }

    #[test]
    fn wrong_candidate_is_undetected_limit() {
        let seq = SequenceGen::geometric(v(&[1.0, 1.0]), v(&[1.0, 0.0]), 0.5, 60).unwrap();
        let out = check_convergence(&rational(), &seq, &v(&[0.0, 0.0]), &[1.0], 1e-6).unwrap();
        assert_eq!(out.verdict, SequenceVerdict::CauchyButUndetectedLimit);
        assert!(out.margin < 0.0);
    }

    #[test]
    fn constant_sequence_converges() {
        let x = v(&[2.0, -3.0]);
        let seq = SequenceGen::explicit(vec![x.clone(); 20]).unwrap();
        let out = check_convergence(&rational(), &seq, &x, &default_t_grid(), 1e-9).unwrap();
        assert!(out.converges());
        assert!(out.evidence.iter().all(|e| e.worst == 1.0));
    }

    #[test]
    fn ray_is_not_cauchy() {
        let seq = SequenceGen::divergent_ray(v(&[1.0, 0.0]), 200).unwrap();
        let out = check_convergence(&rational(), &seq, &v(&[0.0, 0.0]), &default_t_grid(), 1e-6).unwrap();
        assert_eq!(out.verdict, SequenceVerdict::NotCauchyAtHorizon);
        // widest step p = 50: t / (t + 50)
        let top = out.evidence.last().unwrap();
        assert!((top.worst - top.t / (top.t + 50.0)).abs() < 1e-12);
    }

    #[test]
    fn cauchy_windows() {
        let seq = SequenceGen::geometric(v(&[0.0]), v(&[1.0]), 0.5, 200).unwrap();
        let out = check_cauchy(&rational(), &seq, &default_t_grid(), 1e-6).unwrap();
        assert_eq!(out.verdict, SequenceVerdict::Cauchy);
        assert_eq!(out.window, (136, 150));
        assert!(check_cauchy(&rational(), &seq, &[], 1e-6).is_err());
        assert!(check_cauchy(&rational(), &seq, &[1.0], 1.0).is_err());
    }

    #[test]
    fn harmonic_sums_look_cauchy_only_under_a_loose_grid() {
        let mut h = 0.0;
        let terms: Vec<Vector> = (1..=200)
            .map(|n| {
                h += 1.0 / n as f64;
                v(&[h, 0.0])
            })
            .collect();
        let seq = SequenceGen::explicit(terms).unwrap();
        let loose = check_cauchy(&rational(), &seq, &[100.0], 0.01).unwrap();
        assert!(loose.is_cauchy());
        assert!(loose.margin < 0.01);
        let tight = check_cauchy(&rational(), &seq, &default_t_grid(), 1e-6).unwrap();
        assert!(!tight.is_cauchy());
    }

    #[test]
    fn balls() {
        let n = rational();
        let o = v(&[0.0]);
        assert!(ball_contains(&n, &o, 0.5, 1.0, &v(&[0.5])).unwrap());
        assert!(!ball_contains(&n, &o, 0.5, 1.0, &v(&[2.0])).unwrap());
        assert!(ball_contains(&n, &o, 1e-9, 1e-9, &o).unwrap());
        assert!(ball_contains(&n, &o, 1.0, 1.0, &o).is_err());
        assert!(ball_contains(&n, &o, 0.5, 0.0, &o).is_err());
    }

    #[test]
    fn open_ball_is_open_and_singleton_is_not() {
        let n = rational();
        let o = v(&[0.0, 0.0]);
        let ball = |y: &Vector| ball_contains(&n, &o, 0.5, 1.0, y).unwrap();
        let probes = vec![o.clone(), v(&[0.5, 0.0]), v(&[0.0, -0.9]), v(&[0.6, 0.7])];
        let r = probe_openness(&n, ball, &probes, &default_openness_grid()).unwrap();
        assert!(r.passed(), "{r:?}");

        let single = |y: &Vector| y.is_zero();
        let r = probe_openness(&n, single, std::slice::from_ref(&o), &default_openness_grid()).unwrap();
        assert!(!r.passed());
        assert_eq!(r.counterexample.unwrap().clause, "no-ball-inside");

        assert!(probe_openness(&n, single, &[], &default_openness_grid())
            .unwrap()
            .passed());
        assert!(probe_openness(&n, single, &[v(&[1.0, 0.0])], &default_openness_grid()).is_err());
    }

    #[test]
    fn boundedness_witness() {
        let n = rational();
        let b = check_fuzzy_bounded(&n, &[v(&[0.0, 0.0]), v(&[3.0, 4.0])], 0.5).unwrap();
        let t = b.witness_t.unwrap();
        let grid = boundedness_grid();
        let first_above = grid.iter().copied().find(|&g| g > 5.0).unwrap();
        assert_eq!(t, first_above);
        assert!(t / (t + 5.0) > 0.5);

        let theta = check_fuzzy_bounded(&n, &[v(&[0.0])], 0.5).unwrap();
        assert_eq!(theta.witness_t, Some(1e-6));
        assert!(check_fuzzy_bounded(&n, &[], 0.5).is_err());
        assert!(check_fuzzy_bounded(&n, &[v(&[0.0])], 1.0).is_err());
    }

    #[test]
    fn far_points_are_unbounded_on_the_grid() {
        let n = rational();
        let b = check_fuzzy_bounded(&n, &[v(&[1e13])], 0.5).unwrap();
        assert_eq!(
            b,
            Boundedness {
                bounded: false,
                witness_t: None
            }
        );
    }
}
