use std::sync::{Arc, OnceLock};

use heckeps::expsums::{
    delta_sum_check, exp_sum, perron_check, shifted_convolution, slemma_ratio, vdc_bound, weyl_difference_check,
    ExpSumSpec, ShiftSign, SmoothWeightSpec,
};
use heckeps::gfunc::{identity_g, parse_g, RealFn};
use heckeps::hecke::{build_tau_table, TauTable};
use num_complex::Complex64;
use proptest::prelude::*;

fn table() -> &'static TauTable {
    static T: OnceLock<TauTable> = OnceLock::new();
    T.get_or_init(|| build_tau_table(5000).unwrap())
}

fn shifted_phase(spec_scale: f64, alpha: f64, n: u64, shift: f64) -> RealFn {
    let nf = n as f64;
    Arc::new(move |x: f64| spec_scale * (x / nf).powf(alpha) + shift)
}

fn zero() -> RealFn {
    Arc::new(|_| 0.0)
}

#[test]
fn constant_and_alternating_phases() {
    let spec = ExpSumSpec::new(zero(), [zero(), zero(), zero()], 10, 110, 1.0).unwrap();
    assert_eq!(exp_sum(&spec, None).unwrap(), Complex64::new(100.0, 0.0));
    let half: RealFn = Arc::new(|x| x / 2.0);
    let spec = ExpSumSpec::new(half, [zero(), zero(), zero()], 0, 11, 1.0).unwrap();
    let s = exp_sum(&spec, None).unwrap();
    assert!((s - Complex64::new(-1.0, 0.0)).norm() < 1e-12, "{s}");
    assert!(ExpSumSpec::new(zero(), [zero(), zero(), zero()], 5, 5, 1.0).is_err());
    assert!(ExpSumSpec::monomial(0.5, 1.5, 10, 20).is_err());
}

#[test]
fn vdc_bound_formula() {
    assert!((vdc_bound(0.25, 1.0, 0.0, 100.0).unwrap() - 52.0).abs() < 1e-12);
    assert!(vdc_bound(0.0, 1.0, 0.0, 1.0).is_err());
}

#[test]
fn slemma_preconditions() {
    let spec = ExpSumSpec::monomial(10.0, 1.5, 1000, 2000).unwrap();
    assert!(slemma_ratio(&spec, table()).is_err());
    let spec = ExpSumSpec::monomial(1000.0, 1.5, 1000, 2000).unwrap();
    let r = slemma_ratio(&spec, table()).unwrap();
    assert!(r.cauchy_ok && r.ratio > 0.0);
}

#[test]
fn delta_sum_hypotheses() {
    let r = delta_sum_check(&identity_g(), 5, 1000).unwrap();
    assert!(!r.hypotheses_hold);
    let r = delta_sum_check(&parse_g("power:1.05").unwrap(), 5, 1000).unwrap();
    assert!(r.hypotheses_hold, "{:?}", r.comparability);
    assert!(r.measured >= 0.0);
}

#[test]
fn shifted_convolution_preconditions() {
    let w = SmoothWeightSpec::new(100.0, 100.0, 1.0).unwrap();
    assert!(shifted_convolution(2, 4, 1, ShiftSign::Minus, &w, table()).is_err());
    assert!(shifted_convolution(1, 1, 0, ShiftSign::Minus, &w, table()).is_err());
    let r = shifted_convolution(1, 1, 3, ShiftSign::Minus, &w, table()).unwrap();
    assert!(!r.empty && r.ratio.is_finite());
    let tiny = build_tau_table(10).unwrap();
    assert!(shifted_convolution(1, 1, 3, ShiftSign::Plus, &w, &tiny).is_err());
}

#[test]
fn perron_constant_sequence() {
    let ones = |_: u64| Complex64::new(1.0, 0.0);
    let r = perron_check(&ones, 50.0, 50.0, 1.5, 4.0).unwrap();
    assert!(r.converged);
    assert!(r.ratio < 10.0);
    let big = |_: u64| Complex64::new(2.0, 0.0);
    assert!(perron_check(&big, 50.0, 50.0, 1.5, 4.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn weyl_inequality(
        z in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..=256),
        q in 1usize..512,
    ) {
        let z: Vec<Complex64> = z.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
        prop_assert!(weyl_difference_check(&z, q).unwrap().ok);
    }

    #[test]
    fn integer_shift_leaves_sum_unchanged(t in 1.0f64..4.0, alpha in 0.5f64..2.0, n in 1u64..200, len in 1u64..200) {
        let len = len.min(n);
        let spec = |shift| ExpSumSpec::new(shifted_phase(t, alpha, n, shift), [zero(), zero(), zero()], n, n + len, t).unwrap();
        let a = exp_sum(&spec(0.0), None).unwrap();
        let b = exp_sum(&spec(7.0), None).unwrap();
        prop_assert!((a - b).norm() <= 1e-12, "{} vs {}", a, b);
    }

    #[test]
    fn integer_shift_within_phase_rounding(t in 1.0f64..1000.0, alpha in 0.5f64..2.5, n in 1u64..500, len in 1u64..500) {
        let spec = |shift| ExpSumSpec::new(shifted_phase(t, alpha, n, shift), [zero(), zero(), zero()], n, n + len, t).unwrap();
        let a = exp_sum(&spec(0.0), None).unwrap();
        let b = exp_sum(&spec(7.0), None).unwrap();
        let top = t * ((n + len) as f64 / n as f64).powf(alpha) + 7.0;
        let tol = 4.0 * std::f64::consts::TAU * len as f64 * top * f64::EPSILON;
        prop_assert!((a - b).norm() <= tol, "{} vs {} (tol {})", a, b, tol);
    }

    #[test]
    fn triangle_inequality(t in 1.0f64..5000.0, alpha in 0.5f64..2.5, n in 1u64..2000, len in 1u64..2000) {
        let spec = ExpSumSpec::monomial(t, alpha, n, n + len).unwrap();
        let s = exp_sum(&spec, Some(table())).unwrap();
        let bound: f64 = (n + 1..=n + len).map(|k| table().lambda(k).abs()).sum();
        prop_assert!(s.norm() <= bound * (1.0 + 1e-12));
        prop_assert!(exp_sum(&spec, None).unwrap().norm() <= len as f64 * (1.0 + 1e-12));
    }
}
