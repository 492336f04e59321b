use super::axioms::evaluate;
use crate::error::{Error, Result};
use crate::fuzzynorm::{FuzzyNormSpec, Vector};
use crate::report::{Binding, CheckId, CounterExample};

/// Upper bound on accepted shrink steps.
pub const MAX_SHRINK_STEPS: usize = 200;

/// A shrink candidate must keep at least this fraction of the incoming
/// witness's violation.
pub const KEEP_FRACTION: f64 = 0.5;

/// Simplifies a violating witness while keeping it violating.
///
/// Candidates are produced by halving one scalar or one vector coordinate at a
/// time, then by truncating one value to a short decimal (0 to 6 places). A
/// candidate is accepted when re-evaluation still shows a violation above
/// `tolerance` and at least [`KEEP_FRACTION`] of the original violation.
/// Magnitudes never grow. The loop stops at a fixed point or after
/// [`MAX_SHRINK_STEPS`] accepted steps.
pub fn shrink(
    norm: &FuzzyNormSpec,
    check: CheckId,
    witness: &CounterExample,
    tolerance: f64,
) -> Result<CounterExample> {
    let score =
        |w: &CounterExample| evaluate(norm, check, w).map(|(lhs, rhs)| (w.relation.violation(lhs, rhs), lhs, rhs));
    let original = match score(witness) {
        Some((v, _, _)) if v > tolerance => v,
        _ => return Err(Error::NotAViolation(format!("{check} ({})", witness.clause))),
    };
    let floor = tolerance.max(KEEP_FRACTION * original);

    let mut current = witness.clone();
    if let Some((_, lhs, rhs)) = score(&current) {
        current.lhs = lhs;
        current.rhs = rhs;
    }
    let mut steps = 0;
    let try_accept = |current: &mut CounterExample, candidate: CounterExample| -> bool {
        match score(&candidate) {
            Some((v, lhs, rhs)) if v >= floor && v.is_finite() => {
                *current = CounterExample { lhs, rhs, ..candidate };
                true
            }
            _ => false,
        }
    };

    'outer: loop {
        let mut changed = false;
        for edit in [Edit::Halve, Edit::Truncate] {
            for slot in slots(&current) {
                for candidate in edit.candidates(&current, slot) {
                    if steps >= MAX_SHRINK_STEPS {
                        break 'outer;
                    }
                    if try_accept(&mut current, candidate) {
                        steps += 1;
                        changed = true;
                        break;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(current)
}

#[derive(Clone, Copy)]
enum Edit {
    Halve,
    Truncate,
}

/// (variable position, coordinate) pairs in declaration order.
fn slots(w: &CounterExample) -> Vec<(usize, Option<usize>)> {
    w.vars
        .iter()
        .enumerate()
        .flat_map(|(i, v)| match &v.value {
            Binding::Scalar(_) => vec![(i, None)],
            Binding::Vector(x) => (0..x.dim()).map(|j| (i, Some(j))).collect(),
        })
        .collect()
}

fn get(w: &CounterExample, (i, j): (usize, Option<usize>)) -> f64 {
    match (&w.vars[i].value, j) {
        (Binding::Scalar(s), _) => *s,
        (Binding::Vector(x), Some(j)) => x[j],
        (Binding::Vector(_), None) => unreachable!(),
    }
}

fn set(w: &CounterExample, (i, j): (usize, Option<usize>), value: f64) -> CounterExample {
    let mut out = w.clone();
    out.vars[i].value = match (&w.vars[i].value, j) {
        (Binding::Scalar(_), _) => Binding::Scalar(value),
        (Binding::Vector(x), Some(j)) => {
            let mut coords = x.to_vec();
            coords[j] = value;
            Binding::Vector(Vector::from(coords))
        }
        (Binding::Vector(_), None) => unreachable!(),
    };
    out
}

impl Edit {
    fn candidates(self, w: &CounterExample, slot: (usize, Option<usize>)) -> Vec<CounterExample> {
        let v = get(w, slot);
        if v == 0.0 {
            return Vec::new();
        }
        match self {
            Edit::Halve => vec![set(w, slot, v / 2.0)],
            Edit::Truncate => (0..=6)
                .filter_map(|places| {
                    let scale = 10f64.powi(places);
                    let tv = (v * scale).trunc() / scale;
                    (tv != v && tv.abs() <= v.abs()).then(|| set(w, slot, tv))
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PhiSpec, TNorm};
    use crate::fuzzynorm::{CrispNorm, PowerForm};
    use crate::report::Relation;

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

    fn b4(x: f64, y: f64, s: f64, t: f64) -> CounterExample {
        CounterExample::new("b-triangle", Relation::AtLeast, 0.0, 0.0)
            .with_vector("x", Vector::from(vec![x]))
            .with_vector("y", Vector::from(vec![y]))
            .with_scalar("s", s)
            .with_scalar("t", t)
    }

    fn magnitudes(w: &CounterExample) -> Vec<f64> {
        slots(w).into_iter().map(|s| get(w, s).abs()).collect()
    }

    #[test]
    fn shrinking_keeps_violation_and_never_grows() {
        let norm = broken();
        let input = b4(3.7, 2.1, 5.3, 0.9);
        let out = shrink(&norm, CheckId::Bn4, &input, 1e-9).unwrap();
        let (lhs, rhs) = evaluate(&norm, CheckId::Bn4, &out).unwrap();
        assert!(rhs - lhs > 1e-9);
        assert_eq!((lhs, rhs), (out.lhs, out.rhs));
        for (a, b) in magnitudes(&out).iter().zip(magnitudes(&input)) {
            assert!(*a <= b);
        }
    }

    #[test]
    fn minimal_witness_is_a_fixed_point() {
        let norm = broken();
        let input = b4(1.0, 1.0, 1.0, 1.0);
        let out = shrink(&norm, CheckId::Bn4, &input, 1e-9).unwrap();
        assert_eq!(out.vars, input.vars);
        assert!((out.lhs - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(out.rhs, 0.5);
    }

    #[test]
    fn non_violating_input_is_an_error() {
        let norm = broken();
        let ok = b4(0.0, 0.0, 1.0, 1.0);
        assert!(matches!(
            shrink(&norm, CheckId::Bn4, &ok, 1e-9),
            Err(Error::NotAViolation(_))
        ));
    }
}
