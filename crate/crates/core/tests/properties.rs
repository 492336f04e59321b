use phib_core::analysis::{
    ball_contains, check_cauchy, check_convergence, check_fuzzy_bounded, default_t_grid, SequenceGen,
};
use phib_core::findim::{
    estimate_lemma1_constants, extract_convergent_subsequence, probe_completeness, verify_lemma1_certificate, BasisSet,
    CompletenessConfig,
};
use phib_core::fuzzynorm::{make_example_norm, ExampleKind, PowerForm};
use phib_core::verifier::{check_axiom, evaluate, shrink, SamplerConfig};
use phib_core::{CheckId, CounterExample, CrispNorm, FuzzyNormSpec, PhiSpec, Relation, TNorm, Vector};
use proptest::prelude::*;

fn builtin_tnorm() -> impl Strategy<Value = TNorm> {
    prop_oneof![Just(TNorm::Minimum), Just(TNorm::Product), Just(TNorm::Lukasiewicz)]
}

fn base_norm() -> impl Strategy<Value = CrispNorm> {
    prop_oneof![Just(CrispNorm::L1), Just(CrispNorm::L2), Just(CrispNorm::LInf)]
}

fn example_norm() -> impl Strategy<Value = FuzzyNormSpec> {
    (
        prop_oneof![Just(ExampleKind::Rational), Just(ExampleKind::Exponential)],
        prop_oneof![Just(0.25), Just(0.5), Just(1.0), 0.05..=1.0f64],
        base_norm(),
    )
        .prop_map(|(kind, p, base)| make_example_norm(kind, p, base, None).unwrap())
}

fn vector(dim: usize, scale: f64) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-scale..=scale, dim).prop_map(Vector::from)
}

fn unit() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), Just(1.0), 0.0..=1.0f64]
}

proptest! {
    #[test]
    fn tnorm_laws(t in builtin_tnorm(), a in unit(), b in unit(), c in unit(), d in unit()) {
        let ev = |x, y| t.eval(x, y).unwrap();
        prop_assert!((ev(a, b) - ev(b, a)).abs() <= 1e-12);
        prop_assert!((ev(ev(a, b), c) - ev(a, ev(b, c))).abs() <= 1e-12);
        prop_assert!((ev(a, 1.0) - a).abs() <= 1e-12);
        let (lo1, hi1) = (a.min(b), a.max(b));
        let (lo2, hi2) = (c.min(d), c.max(d));
        prop_assert!(ev(lo1, lo2) <= ev(hi1, hi2) + 1e-15);
        prop_assert!((0.0..=1.0).contains(&ev(a, b)));
    }

    #[test]
    fn phi_laws(p in 0.05..3.0f64, n in 1u32..4, a in 1e-6..1e6f64, f in 1.0001..100.0f64) {
        for phi in [PhiSpec::Abs, PhiSpec::AbsPower(p), PhiSpec::RationalEven(n)] {
            prop_assert_eq!(phi.apply(-a), phi.apply(a));
            prop_assert!((phi.apply(1.0) - 1.0).abs() <= 1e-12);
            prop_assert!(phi.apply(a * f) > phi.apply(a));
            prop_assert!(phi.apply(a) >= 0.0);
        }
        prop_assert_eq!(PhiSpec::AbsPower(1.0).apply(a), PhiSpec::Abs.apply(a));
    }

    #[test]
    fn crisp_norm_laws(base in base_norm(), x in vector(3, 100.0), y in vector(3, 100.0), c in -50.0..50.0f64) {
        prop_assert_eq!(base.value(&Vector::zeros(3)), 0.0);
        if !x.is_zero() {
            prop_assert!(base.value(&x) > 0.0);
        }
        prop_assert!((base.value(&x.scale(c)) - c.abs() * base.value(&x)).abs() <= 1e-9 * (1.0 + base.value(&x) * c.abs()));
        prop_assert!(base.value(&x.add(&y)) <= base.value(&x) + base.value(&y) + 1e-9);
    }

    #[test]
    fn zero_branch(norm in example_norm(), x in vector(2, 1e3), t in -1e6..=0.0f64) {
        prop_assert_eq!(norm.value(&x, t), 0.0);
    }

    #[test]
    fn scalar_axiom_is_exact(norm in example_norm(), x in vector(3, 1e3), t in 1e-6..1e6f64,
                             c in prop_oneof![-1e3..-1e-3f64, 1e-3..1e3f64]) {
        let (lhs, rhs) = norm.scalar_rescale_identity(&x, t, c).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9, "{lhs} vs {rhs}");
    }

    #[test]
    fn monotone_in_t_and_decreasing_in_base(norm in example_norm(), x in vector(2, 1e3),
                                            t1 in 1e-6..1e6f64, f in 1.0..1e3f64, g in 1.001..10.0f64) {
        prop_assert!(norm.value(&x, t1) <= norm.value(&x, t1 * f));
        if !x.is_zero() {
            let far = x.scale(g);
            prop_assert!(norm.value(&far, t1) <= norm.value(&x, t1));
        }
    }

    #[test]
    fn power_inequality(x in -1e6..1e6f64, y in -1e6..1e6f64, p in 0.01..=1.0f64) {
        let lhs = (x + y).abs().powf(p);
        let rhs = 2f64.powf(p) * x.abs().powf(p) + y.abs().powf(p);
        prop_assert!(lhs <= rhs * (1.0 + 1e-12));
    }

    #[test]
    fn ball_nesting(norm in example_norm(), x in vector(2, 10.0), y in vector(2, 10.0),
                    a1 in 0.001..0.999f64, da in 0.0..1.0f64, t1 in 1e-3..1e3f64, ft in 1.0..1e3f64) {
        let a2 = a1 + da * (1.0 - a1) * 0.999;
        if ball_contains(&norm, &x, a1, t1, &y).unwrap() {
            prop_assert!(ball_contains(&norm, &x, a2, t1 * ft, &y).unwrap());
        }
    }

    #[test]
    fn boundedness_is_monotone_in_r(norm in example_norm(),
                                    pts in prop::collection::vec(vector(2, 1e3), 1..6),
                                    r1 in 0.01..0.98f64, dr in 0.0..1.0f64) {
        let r2 = r1 + dr * (0.99 - r1);
        let b1 = check_fuzzy_bounded(&norm, &pts, r1).unwrap();
        let b2 = check_fuzzy_bounded(&norm, &pts, r2).unwrap();
        if let Some(t1) = b1.witness_t {
            prop_assert!(b2.witness_t.unwrap() <= t1);
        }
    }

    #[test]
    fn extracted_indices_increase(pts in prop::collection::vec(vector(2, 1.0), 2..200)) {
        let lo = Vector::from(vec![-1.0, -1.0]);
        let hi = Vector::from(vec![1.0, 1.0]);
        let ex = extract_convergent_subsequence(&pts, &lo, &hi);
        prop_assert!(ex.indices.windows(2).all(|w| w[1] > w[0]));
        prop_assert!(ex.limit.iter().all(|c| (-1.0..=1.0).contains(c)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn convergence_implies_cauchy_and_scales(norm in example_norm(), limit in vector(2, 5.0),
                                            dir in vector(2, 1.0), r in -0.9..0.9f64, c in 0.1..10.0f64,
                                            tol in prop_oneof![Just(1e-6), Just(1e-3), Just(0.1)]) {
        let seq = SequenceGen::geometric(limit.clone(), dir, r, 120).unwrap();
        let grid = default_t_grid();
        let conv = check_convergence(&norm, &seq, &limit, &grid, tol).unwrap();
        if conv.converges() {
            prop_assert!(check_cauchy(&norm, &seq, &grid, tol).unwrap().is_cauchy());
            // N(c·y, t) = N(y, t/φ(c)), so the rescaled grid sees the same values
            let phi_c = norm.phi().apply(c);
            let scaled_grid: Vec<f64> = grid.iter().map(|t| t * phi_c).collect();
            let scaled = check_convergence(&norm, &seq.scaled(c), &limit.scale(c), &scaled_grid, tol).unwrap();
            prop_assert!(scaled.converges(), "{scaled:?}");
        }
    }

    #[test]
    fn normalized_and_unnormalized_forms_agree(norm in example_norm(),
                                               alpha in prop::collection::vec(-1e3..1e3f64, 3),
                                               c in 1e-3..1.0f64) {
        let s: f64 = alpha.iter().map(|a| a.abs()).sum();
        prop_assume!(s > 0.0);
        let basis = BasisSet::standard(3).unwrap();
        let t = norm.k() * c;
        let unnormalized = norm.value(&basis.combine(&alpha), t / norm.phi().apply(1.0 / s));
        let beta: Vec<f64> = alpha.iter().map(|a| a / s).collect();
        let normalized = norm.value(&basis.combine(&beta), t);
        prop_assert!((unnormalized - normalized).abs() <= 1e-9, "{unnormalized} vs {normalized}");
    }

    #[test]
    fn smaller_c_gives_larger_delta(norm in example_norm(), c1 in 1e-4..1e-2f64, f in 1.0..10.0f64) {
        let basis = BasisSet::standard(2).unwrap();
        let small = estimate_lemma1_constants(&norm, &basis, 16, &[c1]);
        let large = estimate_lemma1_constants(&norm, &basis, 16, &[c1 * f]);
        if let (Ok(a), Ok(b)) = (small, large) {
            prop_assert!(a.delta >= b.delta);
        }
    }

    #[test]
    fn certificates_reverify(p in 0.2..=1.0f64, base in base_norm(),
                             coords in prop::collection::vec(-2.0..2.0f64, 6)) {
        let basis = BasisSet::new(vec![
            Vector::from(coords[..3].to_vec()),
            Vector::from(coords[3..].to_vec()),
        ]).unwrap();
        prop_assume!(basis.certified_independent() && basis.gram_determinant() > 1e-3);
        let norm = make_example_norm(ExampleKind::Rational, p, base, None).unwrap();
        if let Ok(est) = estimate_lemma1_constants(&norm, &basis, 16, &phib_core::findim::default_c_grid()) {
            let report = verify_lemma1_certificate(&norm, &basis, &est, 4).unwrap();
            prop_assert!(report.passed(), "{report:?}");
        }
    }

    #[test]
    fn shrinking_preserves_violation(x in 0.1..10.0f64, y in 0.1..10.0f64, s in 0.1..10.0f64, t in 0.1..10.0f64) {
        let broken = FuzzyNormSpec::power_form(PowerForm::Rational, 2.0, 1.0, PhiSpec::Abs, TNorm::Minimum, CrispNorm::L2).unwrap();
        let w = CounterExample::new("b-triangle", Relation::AtLeast, 0.0, 0.0)
            .with_vector("x", Vector::from(vec![x]))
            .with_vector("y", Vector::from(vec![y]))
            .with_scalar("s", s)
            .with_scalar("t", t);
        let (lhs, rhs) = evaluate(&broken, CheckId::Bn4, &w).unwrap();
        prop_assume!(rhs - lhs > 1e-9);
        let out = shrink(&broken, CheckId::Bn4, &w, 1e-9).unwrap();
        let (l2, r2) = evaluate(&broken, CheckId::Bn4, &out).unwrap();
        prop_assert!(r2 - l2 > 1e-9);
        prop_assert!(out.vector("x").unwrap()[0].abs() <= x);
        prop_assert!(out.vector("y").unwrap()[0].abs() <= y);
        prop_assert!(out.scalar("s").unwrap().abs() <= s);
        prop_assert!(out.scalar("t").unwrap().abs() <= t);
    }
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let norm = make_example_norm(ExampleKind::Exponential, 0.5, CrispNorm::L2, None).unwrap();
    let sampler = SamplerConfig::new(11, 20_000, 3);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| check_axiom(&norm, CheckId::Bn4, &sampler).unwrap())
    };
    assert_eq!(run(1), run(6));
}

#[test]
fn larger_budgets_never_hide_a_failure() {
    let broken = FuzzyNormSpec::power_form(
        PowerForm::Rational,
        2.0,
        1.0,
        PhiSpec::Abs,
        TNorm::Minimum,
        CrispNorm::L2,
    )
    .unwrap();
    let mut last_margin = f64::INFINITY;
    for budget in [100, 1_000, 10_000] {
        let r = check_axiom(&broken, CheckId::Bn4, &SamplerConfig::new(5, budget, 1)).unwrap();
        assert!(!r.passed());
        assert!(r.worst_margin <= last_margin);
        last_margin = r.worst_margin;
    }
}

#[test]
fn classical_reduction_probes_like_the_general_path() {
    let general = make_example_norm(ExampleKind::Rational, 1.0, CrispNorm::L2, None).unwrap();
    let classical = general.clone().with_k(1.0).unwrap();
    let basis = BasisSet::standard(1).unwrap();
    let config = CompletenessConfig {
        trials: 20,
        ..Default::default()
    };
    let a = probe_completeness(&general, &basis, &config).unwrap();
    let b = probe_completeness(&classical, &basis, &config).unwrap();
    assert!(a.passed());
    assert_eq!(a, b);
}
