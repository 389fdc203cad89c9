use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use proptest::prelude::*;

use phasekit::families::{eval_angle, eval_p, orthonormal_polynomials, recurrence_table, weight};
use phasekit::quadrature::{integrate_split, weight_moment, DEFAULT_TOLERANCE};
use phasekit::{AngleKind, FamilySpec, RecurrenceTable};

fn jacobi_param() -> impl Strategy<Value = f64> {
    -0.9f64..2.5
}

fn gram_error(spec: &FamilySpec, n_max: usize) -> f64 {
    let table = recurrence_table(spec, n_max + 1);
    let mut worst = 0.0f64;
    for n in 0..=n_max {
        for m in n..=n_max {
            let r = integrate_split(
                |node| {
                    let p = phasekit::families::eval_p_all(&table, spec, m + 1, &node.unit_point()).unwrap();
                    p[n] * p[m]
                },
                -1.0,
                1.0,
                DEFAULT_TOLERANCE,
            )
            .unwrap();
            let target = if n == m { 1.0 } else { 0.0 };
            worst = worst.max((r.value - target).abs());
        }
    }
    worst
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn jacobi_functions_are_orthonormal(mu in jacobi_param(), nu in jacobi_param()) {
        let spec = FamilySpec::jacobi(mu, nu).unwrap();
        prop_assert!(gram_error(&spec, 6) < 1e-8);
    }

    #[test]
    fn recurrence_holds_pointwise(mu in jacobi_param(), nu in jacobi_param(), x in -0.999f64..0.999) {
        let table = recurrence_table(&FamilySpec::jacobi(mu, nu).unwrap(), 16);
        let mut p = vec![0.0; 16];
        orthonormal_polynomials(&table, x, &mut p).unwrap();
        for n in 1..15 {
            let rhs = 0.5 * table.f(n) * p[n + 1] + 0.5 * table.f_prev(n) * p[n - 1] + table.g(n) * p[n];
            prop_assert!((x * p[n] - rhs).abs() <= 1e-10 * (1.0 + (x * p[n]).abs()));
        }
    }

    #[test]
    fn symmetric_families_have_parity(lambda in -0.45f64..3.0, x in 0.0f64..0.999) {
        prop_assume!(lambda != 0.0);
        let spec = FamilySpec::gegenbauer(lambda).unwrap();
        let table = recurrence_table(&spec, 12);
        for n in 0..12 {
            let a = eval_p(&table, &spec, n, x).unwrap();
            let b = eval_p(&table, &spec, n, -x).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((a - sign * b).abs() <= 1e-10 * (1.0 + a.abs()));
        }
        prop_assert!(table.g_values().iter().all(|g| *g == 0.0));
    }

    #[test]
    fn reflection_swaps_parameters(mu in jacobi_param(), nu in jacobi_param(), x in -0.99f64..0.99) {
        let spec = FamilySpec::jacobi(mu, nu).unwrap();
        let refl = spec.reflected();
        let t = recurrence_table(&spec, 8);
        let r = recurrence_table(&refl, 8);
        for n in 0..8 {
            let a = eval_p(&t, &spec, n, x).unwrap();
            let b = eval_p(&r, &refl, n, -x).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((a - sign * b).abs() <= 1e-9 * (1.0 + a.abs()));
        }
    }
}

#[test]
fn susskind_glogower_angle_functions() {
    let spec = FamilySpec::chebyshev_u();
    let table = recurrence_table(&spec, 10);
    assert!(table.f_values().iter().all(|f| *f == 1.0));
    for k in 1..20 {
        let theta = PI * k as f64 / 20.0;
        for n in 0..10 {
            let c = eval_angle(&table, &spec, n, theta, AngleKind::CosineAngle).unwrap();
            assert_abs_diff_eq!(c, (2.0 / PI).sqrt() * ((n + 1) as f64 * theta).sin(), epsilon = 1e-13);
        }
    }
}

#[test]
fn normalization_constants_match_weight_integrals() {
    for spec in [FamilySpec::legendre(), FamilySpec::chebyshev_t(), FamilySpec::jacobi(0.25, 0.5).unwrap()] {
        let table = recurrence_table(&spec, 4);
        let integral = weight_moment(&spec, 0, DEFAULT_TOLERANCE).unwrap();
        assert_abs_diff_eq!(table.d(0), integral, epsilon = 1e-9);
        assert!(weight(&spec, 0.3).unwrap() > 0.0);
    }
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!(FamilySpec::jacobi(-1.0, 0.0).is_err());
    assert!(FamilySpec::gegenbauer(-0.5).is_err());
    assert!(FamilySpec::gegenbauer(0.0).is_err());
    assert!(RecurrenceTable::from_coefficients(vec![1.0, 0.0], vec![0.0, 0.0]).is_err());
    assert!(RecurrenceTable::from_coefficients(vec![1.0], vec![0.0, 0.0]).is_err());
    let table = recurrence_table(&FamilySpec::legendre(), 4);
    assert!(eval_p(&table, &FamilySpec::legendre(), 0, 1.5).is_err());
}

#[test]
fn specs_compare_by_used_parameters() {
    assert_eq!(FamilySpec::chebyshev_t(), FamilySpec::chebyshev_t());
    assert_eq!(FamilySpec::legendre(), FamilySpec::legendre());
    assert_ne!(FamilySpec::legendre(), FamilySpec::chebyshev_u());
    assert_eq!(FamilySpec::jacobi(0.5, -0.25).unwrap().reflected(), FamilySpec::jacobi(-0.25, 0.5).unwrap());
    assert_ne!(FamilySpec::gegenbauer(1.0).unwrap(), FamilySpec::gegenbauer(2.0).unwrap());
}
