use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{check_fuzzy_bounded, Boundedness};
use crate::error::{Error, Result};
use crate::fuzzynorm::{FuzzyNormSpec, Vector};
use crate::report::{CheckId, CheckReport, CounterExample, Relation, Worst};
use crate::sampling::{sample_rng, stream_id};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetSpec {
    Box {
        lo: Vector,
        hi: Vector,
    },
    FiniteSet(Vec<Vector>),
    /// `{ n · direction : n = 1, 2, … }`
    UnboundedRay {
        direction: Vector,
    },
}

impl SetSpec {
    fn validate(&self) -> Result<()> {
        match self {
            SetSpec::Box { lo, hi } => {
                if lo.dim() != hi.dim() {
                    return Err(Error::InvalidSpec("box corners differ in dimension".into()));
                }
                if lo.iter().zip(hi.iter()).any(|(a, b)| !(a <= b)) {
                    return Err(Error::InvalidSpec("box needs lo <= hi in every coordinate".into()));
                }
            }
            SetSpec::FiniteSet(points) => {
                let Some(first) = points.first() else {
                    return Err(Error::InvalidSpec("finite set must not be empty".into()));
                };
                if points.iter().any(|p| p.dim() != first.dim()) {
                    return Err(Error::InvalidSpec("finite set points differ in dimension".into()));
                }
            }
            SetSpec::UnboundedRay { direction } => {
                if direction.is_zero() {
                    return Err(Error::InvalidSpec("ray direction must be nonzero".into()));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompactnessConfig {
    /// Sequences sampled inside a bounded set.
    pub sequences: u64,
    pub seed: u64,
    /// Terms per sampled sequence; for a ray, the largest prefix examined.
    pub horizon: usize,
    /// Level used by the boundedness checks.
    pub r: f64,
}

impl Default for CompactnessConfig {
    fn default() -> Self {
        CompactnessConfig {
            sequences: 20,
            seed: 0,
            horizon: 500,
            r: 0.5,
        }
    }
}

/// A subsequence extracted by nested bisection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Extraction {
    /// 0-based indices into the sequence, strictly increasing.
    pub indices: Vec<usize>,
    pub limit: Vector,
    /// ℓ∞ diameter of the cell each picked term was taken from.
    pub cell_widths: Vec<f64>,
    /// The tail consists of copies of a single point.
    pub eventually_constant: bool,
}

/// Bolzano–Weierstrass by coordinate-cycling bisection inside `[lo, hi]`.
///
/// The first remaining term is picked, the current cell is halved along the
/// next coordinate, and the half holding more of the later terms is kept
/// (ties keep the lower half). Once the later terms in the cell are all the
/// same point they are all taken and that point is the limit; otherwise the
/// limit is the center of the last cell.
pub fn extract_convergent_subsequence(points: &[Vector], lo: &Vector, hi: &Vector) -> Extraction {
    let dim = lo.dim();
    let (mut cell_lo, mut cell_hi) = (lo.to_vec(), hi.to_vec());
    let width = |a: &[f64], b: &[f64]| a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max(y - x));
    let mut remaining: Vec<usize> = (0..points.len()).collect();
    let (mut indices, mut cell_widths) = (Vec::new(), Vec::new());
    let mut level = 0;
    while let Some((&pick, rest)) = remaining.split_first() {
        if rest.iter().all(|&i| points[i] == points[pick]) {
            cell_widths.extend(std::iter::repeat_n(width(&cell_lo, &cell_hi), remaining.len()));
            indices.extend_from_slice(&remaining);
            return Extraction {
                indices,
                limit: points[pick].clone(),
                cell_widths,
                eventually_constant: true,
            };
        }
        indices.push(pick);
        cell_widths.push(width(&cell_lo, &cell_hi));
        if level >= 200 * dim {
            break;
        }
        let k = level % dim;
        let mid = 0.5 * (cell_lo[k] + cell_hi[k]);
        let (lower, upper): (Vec<usize>, Vec<usize>) = rest.iter().partition(|&&i| points[i][k] <= mid);
        if lower.len() >= upper.len() {
            cell_hi[k] = mid;
            remaining = lower;
        } else {
            cell_lo[k] = mid;
            remaining = upper;
        }
        level += 1;
    }
    let limit = cell_lo
        .iter()
        .zip(&cell_hi)
        .map(|(a, b)| 0.5 * (a + b))
        .collect::<Vec<_>>();
    Extraction {
        indices,
        limit: Vector::from(limit),
        cell_widths,
        eventually_constant: false,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompactnessOutcome {
    pub report: CheckReport,
    /// One per sampled sequence (bounded sets only).
    pub extractions: Vec<Extraction>,
    /// `(prefix length, boundedness)` along a ray, or the set's own boundedness.
    pub boundedness: Vec<(usize, Boundedness)>,
}

fn dist_inf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}

/// Numerical counterpart of "compact iff closed and bounded".
///
/// For a box or finite set, `sequences` random sequences of `horizon` terms
/// inside the set each yield a subsequence by nested bisection; the indices
/// must increase, every picked term must lie within its cell's diameter of the
/// limit, and the limit must belong to the set. The set must also be fuzzy
/// bounded at level `r`. For a ray, the boundedness witness `t` over the
/// prefixes `10, 100, …, horizon` must grow strictly (no witness counts as
/// infinite).
pub fn probe_compactness(
    norm: &FuzzyNormSpec,
    set: &SetSpec,
    config: &CompactnessConfig,
) -> Result<CompactnessOutcome> {
    set.validate()?;
    if config.horizon < 2 {
        return Err(Error::Precondition("horizon must be at least 2".into()));
    }
    match set {
        SetSpec::UnboundedRay { direction } => probe_ray(norm, direction, config),
        SetSpec::Box { .. } | SetSpec::FiniteSet(_) => probe_bounded_set(norm, set, config),
    }
}

fn probe_ray(norm: &FuzzyNormSpec, direction: &Vector, config: &CompactnessConfig) -> Result<CompactnessOutcome> {
    let points: Vec<Vector> = (1..=config.horizon).map(|n| direction.scale(n as f64)).collect();
    let mut prefixes: Vec<usize> = std::iter::successors(Some(10usize), |p| p.checked_mul(10))
        .take_while(|&p| p < config.horizon)
        .collect();
    prefixes.push(config.horizon);
    let boundedness = prefixes
        .par_iter()
        .map(|&p| check_fuzzy_bounded(norm, &points[..p], config.r).map(|b| (p, b)))
        .collect::<Result<Vec<_>>>()?;

    let mut worst = Worst::empty();
    let as_t = |b: &Boundedness| b.witness_t.unwrap_or(f64::INFINITY);
    for (i, pair) in boundedness.windows(2).enumerate() {
        let ((p0, b0), (p1, b1)) = (&pair[0], &pair[1]);
        if b0.witness_t.is_none() {
            continue;
        }
        let (lhs, rhs) = (as_t(b1), as_t(b0));
        worst.consider(i as u64, Relation::Greater, lhs, rhs, || {
            CounterExample::new("witness-diverges", Relation::Greater, lhs, rhs)
                .with_scalar("prefix", *p1 as f64)
                .with_scalar("previous_prefix", *p0 as f64)
        });
    }
    let mut report = worst.into_report(CheckId::Compactness, prefixes.len() as u64, 0.0);
    for (p, b) in &boundedness {
        report = report.with_note(match b.witness_t {
            Some(t) => format!("prefix {p}: witness t = {t:e}"),
            None => format!("prefix {p}: no witness t up to 1e12"),
        });
    }
    Ok(CompactnessOutcome {
        report,
        extractions: Vec::new(),
        boundedness,
    })
}

fn probe_bounded_set(norm: &FuzzyNormSpec, set: &SetSpec, config: &CompactnessConfig) -> Result<CompactnessOutcome> {
    let (lo, hi) = match set {
        SetSpec::Box { lo, hi } => (lo.clone(), hi.clone()),
        SetSpec::FiniteSet(points) => {
            let dim = points[0].dim();
            let lo: Vec<f64> = (0..dim)
                .map(|k| points.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min))
                .collect();
            let hi: Vec<f64> = (0..dim)
                .map(|k| points.iter().map(|p| p[k]).fold(f64::NEG_INFINITY, f64::max))
                .collect();
            (Vector::from(lo), Vector::from(hi))
        }
        SetSpec::UnboundedRay { .. } => unreachable!(),
    };
    let stream = stream_id("compactness");
    let sampled: Vec<(Vec<Vector>, Extraction)> = (0..config.sequences)
        .into_par_iter()
        .map(|j| {
            let mut rng = sample_rng(config.seed, stream, j);
            let terms: Vec<Vector> = (0..config.horizon)
                .map(|_| match set {
                    SetSpec::Box { lo, hi } => Vector::from(
                        lo.iter()
                            .zip(hi.iter())
                            .map(|(a, b)| a + (b - a) * rng.random::<f64>())
                            .collect::<Vec<_>>(),
                    ),
                    SetSpec::FiniteSet(points) => points[rng.random_range(0..points.len())].clone(),
                    SetSpec::UnboundedRay { .. } => unreachable!(),
                })
                .collect();
            let ex = extract_convergent_subsequence(&terms, &lo, &hi);
            let picked = ex.indices.iter().map(|&i| terms[i].clone()).collect();
            (picked, ex)
        })
        .collect();

    let mut worst = Worst::empty();
    for (j, (picked, ex)) in sampled.iter().enumerate() {
        let j = j as u64;
        let tag = |w: CounterExample| {
            w.with_scalar("sequence", j as f64)
                .with_vector("limit", ex.limit.clone())
        };
        for pair in ex.indices.windows(2) {
            let (lhs, rhs) = (pair[1] as f64, pair[0] as f64);
            worst.consider(j, Relation::Greater, lhs, rhs, || {
                tag(CounterExample::new("increasing-indices", Relation::Greater, lhs, rhs))
            });
        }
        for (x, &w) in picked.iter().zip(&ex.cell_widths) {
            let d = dist_inf(x, &ex.limit);
            worst.consider(j, Relation::AtLeast, w, d, || {
                tag(CounterExample::new("nested-cells", Relation::AtLeast, w, d)).with_vector("term", x.clone())
            });
        }
        match set {
            SetSpec::Box { lo, hi } => {
                let inside = ex
                    .limit
                    .iter()
                    .zip(lo.iter().zip(hi.iter()))
                    .fold(f64::INFINITY, |m, (x, (a, b))| m.min(x - a).min(b - x));
                worst.consider(j, Relation::AtLeast, inside, 0.0, || {
                    tag(CounterExample::new("limit-in-set", Relation::AtLeast, inside, 0.0))
                });
            }
            SetSpec::FiniteSet(points) => {
                let gap = points
                    .iter()
                    .map(|p| dist_inf(p, &ex.limit))
                    .fold(f64::INFINITY, f64::min);
                worst.consider(j, Relation::AtLeast, 0.0, gap, || {
                    tag(CounterExample::new("limit-in-set", Relation::AtLeast, 0.0, gap))
                });
            }
            SetSpec::UnboundedRay { .. } => unreachable!(),
        }
    }

    let extremes: Vec<Vector> = match set {
        SetSpec::Box { lo, hi } => {
            let far = lo
                .iter()
                .zip(hi.iter())
                .map(|(a, b)| a.abs().max(b.abs()))
                .collect::<Vec<_>>();
            vec![lo.clone(), hi.clone(), Vector::from(far)]
        }
        SetSpec::FiniteSet(points) => points.clone(),
        SetSpec::UnboundedRay { .. } => unreachable!(),
    };
    let bounded = check_fuzzy_bounded(norm, &extremes, config.r)?;
    let flag = f64::from(u8::from(bounded.bounded));
    worst.consider(config.sequences, Relation::AtLeast, flag, 1.0, || {
        CounterExample::new("bounded", Relation::AtLeast, flag, 1.0).with_scalar("r", config.r)
    });

    let mut report = worst.into_report(CheckId::Compactness, config.sequences + 1, 0.0);
    if let Some(shortest) = sampled.iter().map(|(_, ex)| ex.indices.len()).min() {
        let widest = sampled
            .iter()
            .filter_map(|(_, ex)| ex.cell_widths.last().copied())
            .fold(0.0f64, f64::max);
        report = report.with_note(format!(
            "shortest extracted subsequence has {shortest} terms; largest final cell width {widest:e}"
        ));
    }
    Ok(CompactnessOutcome {
        report,
        extractions: sampled.into_iter().map(|(_, ex)| ex).collect(),
        boundedness: vec![(extremes.len(), bounded)],
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
    fn bisection_on_a_line() {
        let pts: Vec<Vector> = [0.9, 0.1, 0.2, 0.8, 0.15, 0.3, 0.12].iter().map(|&x| v(&[x])).collect();
        let ex = extract_convergent_subsequence(&pts, &v(&[0.0]), &v(&[1.0]));
        // 0.9 is picked first; the lower half of [0,1] holds five of the six later terms
        assert_eq!(ex.indices[..2], [0, 1]);
        assert!(ex.indices.windows(2).all(|w| w[1] > w[0]));
        for (&i, &w) in ex.indices.iter().zip(&ex.cell_widths) {
            assert!(dist_inf(&pts[i], &ex.limit) <= w);
        }
    }

    #[test]
    fn finite_sets_give_constant_tails() {
        let pts = vec![v(&[1.0]), v(&[2.0]), v(&[1.0]), v(&[1.0]), v(&[2.0]), v(&[1.0])];
        let ex = extract_convergent_subsequence(&pts, &v(&[1.0]), &v(&[2.0]));
        assert!(ex.eventually_constant);
        assert_eq!(ex.limit, v(&[1.0]));
        assert_eq!(ex.indices, vec![0, 2, 3, 5]);
    }

    #[test]
    fn box_probe_passes() {
        let set = SetSpec::Box {
            lo: v(&[0.0, 0.0, 0.0]),
            hi: v(&[1.0, 1.0, 1.0]),
        };
        let out = probe_compactness(&rational(), &set, &CompactnessConfig::default()).unwrap();
        assert!(out.report.passed(), "{:?}", out.report);
        assert_eq!(out.extractions.len(), 20);
        assert!(out.extractions.iter().all(|e| e.indices.len() >= 5));
    }

    #[test]
    fn finite_set_probe_passes() {
        let pts: Vec<Vector> = (0..5).map(|i| v(&[i as f64, -(i as f64)])).collect();
        let out = probe_compactness(&rational(), &SetSpec::FiniteSet(pts), &CompactnessConfig::default()).unwrap();
        assert!(out.report.passed());
        assert!(out.extractions.iter().all(|e| e.eventually_constant));
    }

    #[test]
    fn ray_witness_grows() {
        let set = SetSpec::UnboundedRay {
            direction: v(&[1.0, 0.0, 0.0]),
        };
        let config = CompactnessConfig {
            horizon: 10_000,
            ..Default::default()
        };
        let out = probe_compactness(&rational(), &set, &config).unwrap();
        assert!(out.report.passed());
        let prefixes: Vec<usize> = out.boundedness.iter().map(|(p, _)| *p).collect();
        assert_eq!(prefixes, vec![10, 100, 1000, 10_000]);
        for (p, b) in &out.boundedness {
            assert!(b.witness_t.unwrap() > *p as f64);
        }
    }

    #[test]
    fn malformed_sets_are_rejected() {
        let bad = SetSpec::Box {
            lo: v(&[1.0]),
            hi: v(&[0.0]),
        };
        assert!(probe_compactness(&rational(), &bad, &CompactnessConfig::default()).is_err());
        assert!(probe_compactness(&rational(), &SetSpec::FiniteSet(vec![]), &CompactnessConfig::default()).is_err());
    }
}
