//! Constants `(c, δ)` with `N(Σ βᵢ xᵢ, Kc) ≤ 1 − δ` on the whole ℓ1 coefficient
//! sphere `Σ |βᵢ| = 1`.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::BasisSet;
use crate::error::{Error, Result};
use crate::fuzzynorm::{CrispNorm, FuzzyNormSpec, Vector};
use crate::report::{CheckId, CheckReport, CounterExample, Relation};
use crate::sampling::{log_grid, par_scan, sample_rng, signed_log_uniform, stream_id};
use crate::verifier::AXIOM_TOLERANCE;

/// Smallest `δ` the estimator accepts.
pub const MIN_DELTA: f64 = 0.05;
/// Random coefficient sets drawn by [`verify_lemma1_certificate`].
pub const RANDOM_ALPHA_SETS: u64 = 10_000;
/// Refined verification grids are coarsened until they have at most this many points.
pub const MAX_VERIFY_POINTS: u64 = 1 << 21;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lemma1Estimate {
    pub c: f64,
    pub delta: f64,
    /// Upper bound on `N(Σ βᵢ xᵢ, Kc)` over the sphere; equals `1 − δ`.
    pub max_membership: f64,
    /// Coefficients at which the maximum is attained (a grid point, or the
    /// exact minimizer of the base norm when that is higher than the grid).
    pub worst_beta: Vec<f64>,
    pub grid_resolution: usize,
}

/// Simplex resolution per orthant: 64 up to three vectors, 16 beyond.
pub fn default_resolution(n: usize) -> usize {
    if n <= 3 {
        64
    } else {
        16
    }
}

/// `10⁰, 10⁻¹, …, 10⁻⁶`.
pub fn default_c_grid() -> Vec<f64> {
    log_grid(0.0, -6.0, 7)
}

/// All `k ∈ ℕⁿ` with `Σ k = m`.
fn compositions(m: usize, n: usize) -> Vec<Vec<u32>> {
    fn rec(left: usize, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            prefix.push(left as u32);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=left {
            prefix.push(k as u32);
            rec(left - k, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, n, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Every signed point `β = ±k/m` generated from one composition.
fn signed_points(k: &[u32], m: usize) -> impl Iterator<Item = Vec<f64>> + '_ {
    let nonzero: Vec<usize> = (0..k.len()).filter(|&i| k[i] != 0).collect();
    (0u64..1 << nonzero.len()).map(move |mask| {
        let mut beta: Vec<f64> = k.iter().map(|&ki| ki as f64 / m as f64).collect();
        for (bit, &i) in nonzero.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                beta[i] = -beta[i];
            }
        }
        beta
    })
}

fn binomial(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Number of grid points on the ℓ1 sphere of `ℝⁿ` at resolution `m`.
pub fn sphere_point_count(n: usize, m: usize) -> u64 {
    let (n, m) = (n as u64, m as u64);
    (1..=n.min(m))
        .map(|k| binomial(n, k) * binomial(m - 1, k - 1) * 2f64.powi(k as i32))
        .sum::<f64>()
        .round() as u64
}

fn sphere_grid(n: usize, m: usize) -> Vec<Vec<f64>> {
    compositions(m, n)
        .iter()
        .flat_map(|k| signed_points(k, m).collect::<Vec<_>>())
        .collect()
}

/// Largest value with the lowest index on ties; NaN counts as 1.
fn arg_max(values: impl IndexedParallelIterator<Item = f64>) -> (f64, usize) {
    values
        .enumerate()
        .map(|(i, v)| (if v.is_nan() { 1.0 } else { v }, i))
        .reduce(
            || (f64::NEG_INFINITY, usize::MAX),
            |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a },
        )
}

/// Exact minimum of `‖Σ βᵢ xᵢ‖₂` over the sphere: in each orthant the squared
/// norm is a convex quadratic on a simplex, so the minimum is the feasible
/// stationary point of one of its faces.
fn l2_sphere_minimum(basis: &BasisSet) -> (f64, Vec<f64>) {
    let n = basis.len();
    let x = basis.vectors();
    let gram = DMatrix::from_fn(n, n, |i, j| {
        x[i].iter().zip(x[j].iter()).map(|(a, b)| a * b).sum::<f64>()
    });
    let mut best = (f64::INFINITY, vec![0.0; n]);
    for signs in 0u64..1 << (n - 1) {
        let sign = |i: usize| if i > 0 && signs >> (i - 1) & 1 == 1 { -1.0 } else { 1.0 };
        for face in 1u64..1 << n {
            let idx: Vec<usize> = (0..n).filter(|&i| face >> i & 1 == 1).collect();
            let g = DMatrix::from_fn(idx.len(), idx.len(), |a, b| {
                sign(idx[a]) * sign(idx[b]) * gram[(idx[a], idx[b])]
            });
            let Some(y) = g.lu().solve(&DVector::from_element(idx.len(), 1.0)) else {
                continue;
            };
            let total: f64 = y.iter().sum();
            if !(total > 0.0) || y.iter().any(|v| *v / total < -1e-14) {
                continue;
            }
            let mut beta = vec![0.0; n];
            for (a, &i) in idx.iter().enumerate() {
                beta[i] = sign(i) * (y[a] / total).max(0.0);
            }
            let value = CrispNorm::L2.value(&basis.combine(&beta)).min((1.0 / total).sqrt());
            if value < best.0 {
                best = (value, beta);
            }
        }
    }
    best
}

/// Finds the first `c` in `c_grid` whose sphere maximum `M(c)` of
/// `N(Σ βᵢ xᵢ, Kc)` is at most `1 − MIN_DELTA`, and returns it with `δ = 1 − M(c)`.
///
/// `M(c)` is the maximum over all sign patterns × a simplex grid of
/// compositions at `resolution`. For the built-in closed forms, which depend
/// on `x` only through the decreasing function of `base(x)`, the grid maximum
/// is raised to a bound valid on the whole sphere: the exact minimum of the
/// base norm for ℓ2, and the grid minimum less a Lipschitz allowance
/// `max‖xᵢ‖ · n / resolution` for ℓ1 and ℓ∞.
pub fn estimate_lemma1_constants(
    norm: &FuzzyNormSpec,
    basis: &BasisSet,
    resolution: usize,
    c_grid: &[f64],
) -> Result<Lemma1Estimate> {
    basis.require_certified()?;
    if resolution < 8 {
        return Err(Error::Precondition(format!(
            "grid resolution must be at least 8, got {resolution}"
        )));
    }
    if c_grid.is_empty()
        || c_grid.iter().any(|c| !(*c > 0.0 && c.is_finite()))
        || c_grid.windows(2).any(|w| !(w[1] < w[0]))
    {
        return Err(Error::Precondition(
            "c grid must be positive and strictly decreasing".into(),
        ));
    }
    let n = basis.len();
    let points = sphere_grid(n, resolution);
    let combos: Vec<Vector> = points.par_iter().map(|b| basis.combine(b)).collect();

    let floor = if norm.is_builtin() {
        let base = norm.base();
        Some(match base {
            CrispNorm::L2 => l2_sphere_minimum(basis),
            CrispNorm::L1 | CrispNorm::LInf => {
                let grid_min = combos.iter().map(|v| base.value(v)).fold(f64::INFINITY, f64::min);
                let lipschitz = basis.vectors().iter().map(|v| base.value(v)).fold(0.0, f64::max);
                (
                    (grid_min - lipschitz * n as f64 / resolution as f64).max(0.0),
                    Vec::new(),
                )
            }
        })
    } else {
        None
    };

    let mut tried = Vec::with_capacity(c_grid.len());
    for &c in c_grid {
        let t = norm.k() * c;
        let (grid_max, at) = arg_max(combos.par_iter().map(|v| norm.value(v, t)));
        let (mut m, mut worst_beta) = (grid_max, points[at].clone());
        if let Some((min_base, beta)) = &floor {
            let bound = norm.value(&[*min_base], t);
            if bound > m {
                m = bound;
                if !beta.is_empty() {
                    worst_beta = beta.clone();
                }
            }
        }
        tried.push(m);
        if m <= 1.0 - MIN_DELTA {
            return Ok(Lemma1Estimate {
                c,
                delta: 1.0 - m,
                max_membership: m,
                worst_beta,
                grid_resolution: resolution,
            });
        }
    }
    Err(Error::NoAdmissibleConstant(format!(
        "no c in the grid gives delta >= {MIN_DELTA}; sphere maxima {tried:?}"
    )))
}

/// Re-checks an estimate.
///
/// * every point of the grid refined by `refinement` satisfies
///   `N(Σ βᵢ xᵢ, Kc) ≤ 1 − δ` (coarsened to at most [`MAX_VERIFY_POINTS`]
///   points, with a note);
/// * [`RANDOM_ALPHA_SETS`] random coefficient sets `α` satisfy the unnormalized
///   form `N(Σ αᵢ xᵢ, Kc / φ(1/Σ|αᵢ|)) ≤ 1 − δ`;
/// * that form agrees with the normalized one at `β = α / Σ|αᵢ|`.
pub fn verify_lemma1_certificate(
    norm: &FuzzyNormSpec,
    basis: &BasisSet,
    estimate: &Lemma1Estimate,
    refinement: usize,
) -> Result<CheckReport> {
    basis.require_certified()?;
    if refinement == 0 || estimate.grid_resolution == 0 {
        return Err(Error::Precondition(
            "refinement and grid resolution must be positive".into(),
        ));
    }
    if estimate.worst_beta.len() != basis.len() {
        return Err(Error::Precondition("worst beta does not match the basis size".into()));
    }
    let n = basis.len();
    let mut factor = refinement;
    while factor > 1 && sphere_point_count(n, estimate.grid_resolution * factor) > MAX_VERIFY_POINTS {
        factor -= 1;
    }
    let resolution = estimate.grid_resolution * factor;
    let t = norm.k() * estimate.c;
    let level = 1.0 - estimate.delta;

    let worst_n = norm.value(&basis.combine(&estimate.worst_beta), t);
    let mut worst = crate::report::Worst::empty();
    worst.consider(0, Relation::AtLeast, level, worst_n, || {
        CounterExample::new("worst-beta", Relation::AtLeast, level, worst_n)
            .with_vector("beta", Vector::from(estimate.worst_beta.clone()))
            .with_scalar("t", t)
    });

    let comps = compositions(resolution, n);
    let grid = par_scan(comps.len() as u64, |index, worst| {
        for beta in signed_points(&comps[index as usize], resolution) {
            let value = norm.value(&basis.combine(&beta), t);
            worst.consider(1 + index, Relation::AtLeast, level, value, || {
                CounterExample::new("refined-grid", Relation::AtLeast, level, value)
                    .with_vector("beta", Vector::from(beta.clone()))
                    .with_scalar("t", t)
            });
        }
    });
    let offset = 1 + comps.len() as u64;

    let stream = stream_id("lemma1-alpha");
    let phi = norm.phi();
    let random = par_scan(RANDOM_ALPHA_SETS, |index, worst| {
        let mut rng = sample_rng(0, stream, index);
        let mut alpha: Vec<f64> = (0..n)
            .map(|_| {
                if rng.random::<f64>() < 0.1 {
                    0.0
                } else {
                    signed_log_uniform(&mut rng, 1e-3, 1e3)
                }
            })
            .collect();
        if alpha.iter().all(|a| *a == 0.0) {
            alpha[0] = 1.0;
        }
        let s: f64 = alpha.iter().map(|a| a.abs()).sum();
        let phi_inv = phi.apply(1.0 / s);
        let scaled_t = t / phi_inv;
        let unnormalized = norm.value(&basis.combine(&alpha), scaled_t);
        let beta: Vec<f64> = alpha.iter().map(|a| a / s).collect();
        let normalized = norm.value(&basis.combine(&beta), t);
        let witness = |clause: &str, relation, lhs, rhs| {
            CounterExample::new(clause, relation, lhs, rhs)
                .with_vector("alpha", Vector::from(alpha.clone()))
                .with_scalar("t", scaled_t)
        };
        worst.consider(offset + 2 * index, Relation::AtLeast, level, unnormalized, || {
            witness("unnormalized-form", Relation::AtLeast, level, unnormalized)
        });
        worst.consider(
            offset + 2 * index + 1,
            Relation::Equal,
            unnormalized,
            normalized,
            || witness("normalized-consistency", Relation::Equal, unnormalized, normalized),
        );
    });

    let total = 1 + sphere_point_count(n, resolution) + RANDOM_ALPHA_SETS;
    let mut report = worst
        .merge(grid)
        .merge(random)
        .into_report(CheckId::Lemma1Certificate, total, AXIOM_TOLERANCE);
    if factor < refinement {
        report = report.with_note(format!(
            "refinement reduced from {refinement} to {factor} to stay within {MAX_VERIFY_POINTS} grid points"
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzynorm::{make_example_norm, ExampleKind};

    fn rational(p: f64) -> FuzzyNormSpec {
        make_example_norm(ExampleKind::Rational, p, CrispNorm::L2, None).unwrap()
    }

    #[test]
    fn compositions_and_counts_agree() {
        for (n, m) in [(1, 8), (2, 8), (3, 5), (4, 16)] {
            assert_eq!(sphere_grid(n, m).len() as u64, sphere_point_count(n, m));
        }
        assert_eq!(sphere_point_count(2, 64), 256);
        assert_eq!(sphere_point_count(1, 64), 2);
    }

    #[test]
    fn plane_standard_basis() {
        let basis = BasisSet::standard(2).unwrap();
        let est = estimate_lemma1_constants(&rational(1.0), &basis, 64, &[0.1]).unwrap();
        let oracle = 0.2 / (0.2 + 0.5f64.sqrt());
        assert!((est.max_membership - oracle).abs() < 1e-12);
        assert!((est.delta - (1.0 - oracle)).abs() < 1e-12);
        assert!(est.worst_beta.iter().all(|b| (b.abs() - 0.5).abs() < 1e-12));
    }

    #[test]
    fn line_basis_uses_both_signs() {
        let basis = BasisSet::new(vec![vec![2.0].into()]).unwrap();
        let norm = rational(0.5);
        let est = estimate_lemma1_constants(&norm, &basis, 8, &[0.3]).unwrap();
        assert_eq!(est.worst_beta.len(), 1);
        assert_eq!(est.worst_beta[0].abs(), 1.0);
        assert!((est.max_membership - norm.value(&[2.0], norm.k() * 0.3)).abs() < 1e-15);
    }

    #[test]
    fn first_qualifying_c_is_taken() {
        let basis = BasisSet::standard(2).unwrap();
        let est = estimate_lemma1_constants(&rational(1.0), &basis, 16, &default_c_grid()).unwrap();
        assert_eq!(est.c, 1.0);
        let err = estimate_lemma1_constants(&rational(1.0), &basis, 16, &[1e6]).unwrap_err();
        assert!(matches!(err, Error::NoAdmissibleConstant(_)));
    }

    #[test]
    fn preconditions() {
        let basis = BasisSet::standard(2).unwrap();
        assert!(estimate_lemma1_constants(&rational(1.0), &basis, 4, &[0.1]).is_err());
        assert!(estimate_lemma1_constants(&rational(1.0), &basis, 16, &[0.1, 0.5]).is_err());
        let dependent = BasisSet::new(vec![vec![1.0, 0.0].into(), vec![1.0, 1e-12].into()]).unwrap();
        assert!(matches!(
            estimate_lemma1_constants(&rational(1.0), &dependent, 16, &[0.1]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn certificate_survives_refinement_and_tampering_fails() {
        let basis = BasisSet::standard(2).unwrap();
        let norm = rational(1.0);
        let est = estimate_lemma1_constants(&norm, &basis, 64, &[0.1]).unwrap();
        let report = verify_lemma1_certificate(&norm, &basis, &est, 4).unwrap();
        assert!(report.passed(), "{report:?}");

        let tampered = Lemma1Estimate {
            delta: 2.0 * est.delta,
            ..est
        };
        let report = verify_lemma1_certificate(&norm, &basis, &tampered, 4).unwrap();
        assert!(!report.passed());
        assert!(report.counterexample.unwrap().vector("beta").is_some());
    }

    #[test]
    fn skewed_bases_are_certified_conservatively() {
        let basis = BasisSet::new(vec![vec![1.0, 0.3, 0.0].into(), vec![0.2, 1.0, -0.5].into()]).unwrap();
        for base in [CrispNorm::L1, CrispNorm::L2, CrispNorm::LInf] {
            let norm = make_example_norm(ExampleKind::Exponential, 0.5, base, None).unwrap();
            let est = estimate_lemma1_constants(&norm, &basis, 16, &default_c_grid()).unwrap();
            let report = verify_lemma1_certificate(&norm, &basis, &est, 4).unwrap();
            assert!(report.passed(), "{base:?}: {report:?}");
        }
    }
}
