//! Tanh-sinh (double exponential) quadrature.
//!
//! This module is the numerical arbiter for the rest of the crate, so it never
//! touches recurrence tables or Jacobi matrices; Gauss rules would be built
//! from the very matrices they are meant to check. Integrands with algebraic
//! endpoint singularities (exponent > -1) converge at the usual
//! double-exponential rate when evaluated through [`integrate_split`], which
//! hands the integrand the exact distance of every node to both endpoints.

use std::cell::Cell;
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::families::{weight_at, FamilySpec, UnitPoint};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const MAX_EVALUATIONS: usize = 1 << 20;

/// Half-width of the truncated `t` range. Beyond it the node complements drop
/// under ~1e-300.
const T_MAX: f64 = 6.0;
const MIN_LEVELS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// A quadrature node on `(a, b)` with its distances to both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abscissa {
    pub x: f64,
    pub from_lower: f64,
    pub from_upper: f64,
}

impl Abscissa {
    /// For nodes on (-1, 1).
    pub fn unit_point(&self) -> UnitPoint {
        UnitPoint::with_complements(self.x, self.from_upper, self.from_lower)
    }
}

/// `∫_a^b f(x) dx` for an integrand that only needs the abscissa value.
pub fn integrate<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    integrate_split(|p: Abscissa| f(p.x), a, b, tol)
}

/// `∫_a^b f dx` where the integrand receives each node as an [`Abscissa`].
///
/// Levels halve the step until two successive estimates differ by less than
/// `tol` (after at least three levels).
pub fn integrate_split<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(Abscissa) -> f64,
{
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!("integration interval ({a}, {b}) is not a finite open interval")));
    }
    if !(tol > 0.0) {
        return Err(Error::ParameterOutOfRange(format!("tolerance {tol} must be positive")));
    }
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let evaluations = Cell::new(0usize);

    let eval = |p: Abscissa| -> Result<f64> {
        evaluations.set(evaluations.get() + 1);
        let v = f(p);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::QuadratureNonConvergence(format!("integrand is {v} at x = {}", p.x)))
        }
    };

    // Weighted contribution of the node pair at ±t, t > 0.
    let pair = |t: f64| -> Result<f64> {
        let u = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u).exp();
        // 1 - tanh(u) and the derivative of the map, both free of cancellation.
        let complement = 2.0 * e / (1.0 + e);
        let weight = FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
        let near = half * complement;
        if near == 0.0 || weight == 0.0 {
            return Ok(0.0);
        }
        let far = 2.0 * half - near;
        let upper = eval(Abscissa { x: b - near, from_lower: far, from_upper: near })?;
        let lower = eval(Abscissa { x: a + near, from_lower: near, from_upper: far })?;
        Ok(weight * (upper + lower))
    };

    let mut sum = FRAC_PI_2 * eval(Abscissa { x: mid, from_lower: half, from_upper: half })?;
    let mut k = 1usize;
    while (k as f64) <= T_MAX {
        sum += pair(k as f64)?;
        k += 1;
    }
    let mut h = 1.0;
    let mut estimate = half * h * sum;
    let mut level = 0usize;
    loop {
        level += 1;
        h *= 0.5;
        let mut j = 1usize;
        loop {
            let t = j as f64 * h;
            if t > T_MAX {
                break;
            }
            sum += pair(t)?;
            j += 2;
        }
        let next = half * h * sum;
        let diff = (next - estimate).abs();
        estimate = next;
        if level >= MIN_LEVELS && diff < tol {
            return Ok(QuadratureResult { value: estimate, error_estimate: diff, evaluations: evaluations.get() });
        }
        if evaluations.get() >= MAX_EVALUATIONS {
            return Err(Error::QuadratureNonConvergence(format!(
                "{} evaluations, last change {diff:e} exceeds tolerance {tol:e}",
                evaluations.get()
            )));
        }
    }
}

/// `μ_k = ∫ w(x) x^k dx`. Odd moments of even weights are returned as 0
/// without integrating.
pub fn weight_moment(spec: &FamilySpec, k: u32, tol: f64) -> Result<f64> {
    if spec.is_symmetric() && k % 2 == 1 {
        return Ok(0.0);
    }
    integrate_split(
        |p| weight_at(spec, &p.unit_point()) * p.x.powi(k as i32),
        -1.0,
        1.0,
        tol,
    )
    .map(|r| r.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{recurrence_table, FamilySpec};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn constant_integrand() {
        let r = integrate(|_| 1.0, -1.0, 1.0, 1e-14).unwrap();
        assert_abs_diff_eq!(r.value, 2.0, epsilon = 1e-14);
        assert!(r.error_estimate <= 1e-14);
        assert!(r.evaluations > 0);
    }

    #[test]
    fn arcsine_weight_integral() {
        let r = integrate_split(|p| 1.0 / (p.from_lower * p.from_upper).sqrt(), -1.0, 1.0, 1e-12).unwrap();
        assert_abs_diff_eq!(r.value, PI, epsilon = 1e-10);
    }

    #[test]
    fn jacobi_zeroth_moment_matches_d0() {
        let r = integrate_split(
            |p| p.from_upper.powf(-0.5) * p.from_lower.powf(0.5),
            -1.0,
            1.0,
            1e-12,
        )
        .unwrap();
        assert_abs_diff_eq!(r.value, PI, epsilon = 1e-10);
        let spec = FamilySpec::jacobi(-0.5, 0.5).unwrap();
        let d0 = recurrence_table(&spec, 0).d(0);
        assert_abs_diff_eq!(r.value, d0, epsilon = 1e-10);
    }

    #[test]
    fn beta_function_values() {
        // ∫_0^1 t^(a-1) (1-t)^(b-1) dt = B(a, b)
        let beta = |a: f64, b: f64| (libm::lgamma(a) + libm::lgamma(b) - libm::lgamma(a + b)).exp();
        for &(a, b) in &[(0.25, 0.5), (0.5, 0.5), (1.5, 0.3), (3.0, 2.0)] {
            let r = integrate_split(
                |p| p.from_lower.powf(a - 1.0) * p.from_upper.powf(b - 1.0),
                0.0,
                1.0,
                1e-12,
            )
            .unwrap();
            assert_abs_diff_eq!(r.value, beta(a, b), epsilon = 1e-10);
        }
    }

    #[test]
    fn general_interval_and_smooth_integrand() {
        let r = integrate(|x| x.sin(), 0.0, PI, 1e-12).unwrap();
        assert_abs_diff_eq!(r.value, 2.0, epsilon = 1e-12);
        let r = integrate(|x| x * x, -FRAC_PI_2, FRAC_PI_2, 1e-12).unwrap();
        assert_abs_diff_eq!(r.value, PI.powi(3) / 12.0, epsilon = 1e-12);
    }

    #[test]
    fn weight_moments() {
        assert_abs_diff_eq!(weight_moment(&FamilySpec::legendre(), 0, 1e-12).unwrap(), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            weight_moment(&FamilySpec::chebyshev_u(), 0, 1e-12).unwrap(),
            FRAC_PI_2,
            epsilon = 1e-12
        );
        for spec in [FamilySpec::legendre(), FamilySpec::chebyshev_t(), FamilySpec::gegenbauer(-0.25).unwrap()] {
            assert_eq!(weight_moment(&spec, 1, 1e-10).unwrap(), 0.0);
            assert_eq!(weight_moment(&spec, 5, 1e-10).unwrap(), 0.0);
        }
        let j = FamilySpec::jacobi(-0.5, 0.5).unwrap();
        // μ_1 / μ_0 = g_0 = 1/2 for this weight.
        let m1 = weight_moment(&j, 1, 1e-12).unwrap();
        assert_abs_diff_eq!(m1 / PI, 0.5, epsilon = 1e-10);
    }

    #[test]
    fn symmetry_shortcut_is_consistent_with_integration() {
        let spec = FamilySpec::gegenbauer(-0.25).unwrap();
        let tol = 1e-10;
        for k in [1, 3, 7] {
            let r = integrate_split(|p| weight_at(&spec, &p.unit_point()) * p.x.powi(k), -1.0, 1.0, tol).unwrap();
            assert!(r.value.abs() < tol, "k = {k}: {}", r.value);
        }
    }

    #[test]
    fn non_finite_integrand_is_an_error() {
        assert!(matches!(
            integrate(|x| 1.0 / (1.0 - x), -1.0, 1.0, 1e-10),
            Err(Error::QuadratureNonConvergence(_))
        ));
    }

    #[test]
    fn rejects_bad_interval() {
        assert!(integrate(|x| x, 1.0, -1.0, 1e-10).is_err());
        assert!(integrate(|x| x, 0.0, 1.0, 0.0).is_err());
    }
}
