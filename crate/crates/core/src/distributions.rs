//! Cosine, sine, arccosine and arcsine probability densities.
//!
//! With `b_n(x)` the basis functions of the chosen variable (`p_n` for the
//! cosine and sine, `c_n`, `s_n` for the angles)
//!
//! ```text
//! 𝒫(x) = Σ_n ρ_nn b_n(x)² + 2 Σ_{m>n} Re[ρ_mn χ^{m−n}] b_m(x) b_n(x)
//! ```
//!
//! where `χ = 1` for the cosine-type variables and `χ = −i` for the sine-type
//! ones. The double sum stops at the state's support.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::families::{eval_p_all, orthonormal_polynomials, AngleKind, FamilySpec, RecurrenceTable, UnitPoint};
use crate::format::{fmt_e, fmt_g};
use crate::par::Execution;
use crate::quadrature::{integrate_split, Abscissa};
use crate::states::DensityState;

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

pub const DEFAULT_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variable {
    Cosine,
    Sine,
    ArcCosine,
    ArcSine,
}

impl Variable {
    pub const ALL: [Variable; 4] = [Variable::Cosine, Variable::Sine, Variable::ArcCosine, Variable::ArcSine];

    /// Open domain `(lo, hi)`.
    pub fn domain(self) -> (f64, f64) {
        match self {
            Variable::Cosine | Variable::Sine => (-1.0, 1.0),
            Variable::ArcCosine => (0.0, PI),
            Variable::ArcSine => (-FRAC_PI_2, FRAC_PI_2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variable::Cosine => "cos",
            Variable::Sine => "sin",
            Variable::ArcCosine => "arccos",
            Variable::ArcSine => "arcsin",
        }
    }

    fn sine_type(self) -> bool {
        matches!(self, Variable::Sine | Variable::ArcSine)
    }

    fn node(self, x: f64) -> Result<Abscissa> {
        let (lo, hi) = self.domain();
        if !(x > lo && x < hi) {
            return Err(Error::Domain(format!("{x} outside the {} domain ({lo}, {hi})", self.name())));
        }
        Ok(Abscissa { x, from_lower: x - lo, from_upper: hi - x })
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cos" | "cosine" => Ok(Variable::Cosine),
            "sin" | "sine" => Ok(Variable::Sine),
            "arccos" | "arccosine" => Ok(Variable::ArcCosine),
            "arcsin" | "arcsine" => Ok(Variable::ArcSine),
            _ => Err(Error::Parse(format!("unknown variable '{s}' (expected cos, sin, arccos or arcsin)"))),
        }
    }
}

/// `b_0, ..., b_{count-1}` at a node of the variable's domain.
fn basis(
    table: &RecurrenceTable,
    spec: &FamilySpec,
    variable: Variable,
    node: Abscissa,
    count: usize,
) -> Result<Vec<f64>> {
    let kind = match variable {
        Variable::Cosine | Variable::Sine => {
            let p = UnitPoint::with_complements(node.x, node.from_upper, node.from_lower);
            return eval_p_all(table, spec, count, &p);
        }
        Variable::ArcCosine => AngleKind::CosineAngle,
        Variable::ArcSine => AngleKind::SineAngle,
    };
    // √(Jacobian)·√w in log form: next to an end of the angular range
    // 1 ∓ x = 2 sin²(δ/2) underflows long before the product does.
    let (p, jacobian) = kind.to_unit(node.x, node.from_lower, node.from_upper);
    let ln_half = |delta: f64| std::f64::consts::LN_2 + 2.0 * (0.5 * delta).sin().ln();
    let (ln_minus, ln_plus) = match kind {
        AngleKind::CosineAngle => (ln_half(node.from_lower), ln_half(node.from_upper)),
        AngleKind::SineAngle => (ln_half(node.from_upper), ln_half(node.from_lower)),
    };
    let (a, b) = spec.weight_exponents();
    let mut ln_scale = 0.5 * jacobian.ln();
    if a != 0.0 {
        ln_scale += 0.5 * a * ln_minus;
    }
    if b != 0.0 {
        ln_scale += 0.5 * b * ln_plus;
    }
    let scale = ln_scale.exp();
    let mut out = vec![0.0; count];
    orthonormal_polynomials(table, p.x, &mut out)?;
    out.iter_mut().for_each(|v| *v *= scale);
    Ok(out)
}

/// `(−i)ⁿ`.
fn minus_i_power(n: usize) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// `⟨x|ψ⟩ = Σ_n ψ_n χⁿ b_n(x)` for a normalized pure state.
pub fn representation(
    table: &RecurrenceTable,
    spec: &FamilySpec,
    psi: &[Complex64],
    x: f64,
    variable: Variable,
) -> Result<Complex64> {
    let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidState(format!("state vector has squared norm {norm}")));
    }
    let node = variable.node(x)?;
    let b = basis(table, spec, variable, node, psi.len())?;
    Ok(psi
        .iter()
        .zip(&b)
        .enumerate()
        .map(|(n, (z, bn))| {
            let phase = if variable.sine_type() { minus_i_power(n) } else { Complex64::new(1.0, 0.0) };
            z * phase * *bn
        })
        .sum())
}

/// A state prepared for repeated density evaluation: the real
/// lower-triangular kernel `A_mn = Re[ρ_mn χ^{m−n}]`, `m ≥ n`.
#[derive(Debug, Clone)]
pub struct DistributionModel<'a> {
    table: &'a RecurrenceTable,
    spec: &'a FamilySpec,
    variable: Variable,
    levels: usize,
    kernel: Vec<f64>,
}

impl<'a> DistributionModel<'a> {
    pub fn new(
        table: &'a RecurrenceTable,
        spec: &'a FamilySpec,
        state: &DensityState,
        variable: Variable,
    ) -> Result<Self> {
        let levels = state.support() + 1;
        if levels > table.len() {
            return Err(Error::SupportExceedsTruncation {
                support: state.support(),
                limit: table.len() as i64 - 1,
            });
        }
        let mut kernel = Vec::with_capacity(levels * (levels + 1) / 2);
        for m in 0..levels {
            for n in 0..=m {
                let mut z = state.entry(m, n);
                if variable.sine_type() {
                    z *= minus_i_power(m - n);
                }
                kernel.push(z.re);
            }
        }
        Ok(DistributionModel { table, spec, variable, levels, kernel })
    }

    pub fn variable(&self) -> Variable {
        self.variable
    }

    fn at_node(&self, node: Abscissa) -> Result<f64> {
        let b = basis(self.table, self.spec, self.variable, node, self.levels)?;
        let mut sum = 0.0;
        let mut idx = 0;
        for m in 0..self.levels {
            let row: f64 = self.kernel[idx..idx + m].iter().zip(&b[..m]).map(|(k, bn)| k * bn).sum();
            let diag = self.kernel[idx + m] * b[m];
            sum += b[m] * (diag + 2.0 * row);
            idx += m + 1;
        }
        Ok(sum)
    }

    pub fn density_at(&self, x: f64) -> Result<f64> {
        self.at_node(self.variable.node(x)?)
    }

    /// `∫ F(x) 𝒫(x) dx` over the whole domain by tanh-sinh quadrature.
    pub fn moment(&self, func: MomentFn<'_>, tol: f64) -> Result<f64> {
        let (lo, hi) = self.variable.domain();
        let failure = std::cell::Cell::new(None);
        let r = integrate_split(
            |node| match self.at_node(node) {
                Ok(p) => func.eval(node.x) * p,
                Err(e) => {
                    failure.set(Some(e));
                    f64::NAN
                }
            },
            lo,
            hi,
            tol,
        );
        if let Some(e) = failure.take() {
            return Err(e);
        }
        Ok(r?.value)
    }
}

/// The function whose expectation [`moment`] computes.
#[derive(Clone, Copy)]
pub enum MomentFn<'a> {
    Power(u32),
    Custom(&'a (dyn Fn(f64) -> f64 + Sync)),
}

impl MomentFn<'_> {
    fn eval(&self, x: f64) -> f64 {
        match self {
            MomentFn::Power(k) => x.powi(*k as i32),
            MomentFn::Custom(f) => f(x),
        }
    }
}

impl fmt::Debug for MomentFn<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MomentFn::Power(k) => write!(f, "Power({k})"),
            MomentFn::Custom(_) => f.write_str("Custom"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistributionMeta {
    pub family: String,
    pub state: String,
    /// Smallest distance between a grid point and the domain boundary.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistributionGrid {
    pub variable: Variable,
    pub points: Vec<f64>,
    pub density: Vec<f64>,
    pub meta: DistributionMeta,
}

impl DistributionGrid {
    /// `#` header lines, an `x,density` column line, then `%.12e` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# family: {}\n", self.meta.family));
        out.push_str(&format!("# state: {}\n", self.meta.state));
        out.push_str(&format!("# variable: {}\n", self.variable));
        out.push_str(&format!("# margin: {}\n", fmt_g(self.meta.margin, 6)));
        out.push_str(&format!("# version: phasekit {}\n", env!("CARGO_PKG_VERSION")));
        out.push_str("x,density\n");
        for (x, p) in self.points.iter().zip(&self.density) {
            out.push_str(&format!("{},{}\n", fmt_e(*x, 12), fmt_e(*p, 12)));
        }
        out
    }
}

/// `count` uniformly spaced points from `lo + margin` to `hi − margin`.
pub fn uniform_grid(variable: Variable, count: usize, margin: f64) -> Result<Vec<f64>> {
    let (lo, hi) = variable.domain();
    if !(margin > 0.0) || 2.0 * margin >= hi - lo {
        return Err(Error::ParameterOutOfRange(format!("grid margin {margin} must be positive and below half the domain")));
    }
    match count {
        0 => Err(Error::ParameterOutOfRange("grid needs at least one point".into())),
        1 => Ok(vec![0.5 * (lo + hi)]),
        _ => {
            let a = lo + margin;
            let b = hi - margin;
            let step = (b - a) / (count - 1) as f64;
            Ok((0..count).map(|i| if i + 1 == count { b } else { a + step * i as f64 }).collect())
        }
    }
}

fn check_points(variable: Variable, points: &[f64]) -> Result<f64> {
    let mut margin = f64::INFINITY;
    for (i, &x) in points.iter().enumerate() {
        let node = variable.node(x)?;
        if i > 0 && !(x > points[i - 1]) {
            return Err(Error::Domain(format!("grid is not strictly ascending at index {i}")));
        }
        margin = margin.min(node.from_lower).min(node.from_upper);
    }
    Ok(margin)
}

/// `𝒫(x)` at every grid point; order follows `points` for every strategy.
pub fn density(
    table: &RecurrenceTable,
    spec: &FamilySpec,
    state: &DensityState,
    points: &[f64],
    variable: Variable,
    exec: Execution,
) -> Result<DistributionGrid> {
    let margin = check_points(variable, points)?;
    let model = DistributionModel::new(table, spec, state, variable)?;
    let values = exec.try_map(points, |&x| model.density_at(x))?;
    Ok(DistributionGrid {
        variable,
        points: points.to_vec(),
        density: values,
        meta: DistributionMeta { family: spec.to_string(), state: state.describe(), margin },
    })
}

/// `1/(π√(1−x²))` for the cosine and sine, `1/π` for the angles.
pub fn classical_density_at(variable: Variable, x: f64) -> Result<f64> {
    let node = variable.node(x)?;
    Ok(classical_at_node(variable, node))
}

fn classical_at_node(variable: Variable, node: Abscissa) -> f64 {
    match variable {
        Variable::Cosine | Variable::Sine => 1.0 / (PI * (node.from_lower * node.from_upper).sqrt()),
        Variable::ArcCosine | Variable::ArcSine => 1.0 / PI,
    }
}

pub fn classical_density(variable: Variable, points: &[f64]) -> Result<DistributionGrid> {
    let margin = check_points(variable, points)?;
    let density = points.iter().map(|&x| classical_density_at(variable, x)).collect::<Result<_>>()?;
    Ok(DistributionGrid {
        variable,
        points: points.to_vec(),
        density,
        meta: DistributionMeta { family: "classical".into(), state: "classical".into(), margin },
    })
}

/// `∫ F(x) 𝒫(x) dx` for a state.
pub fn moment(
    table: &RecurrenceTable,
    spec: &FamilySpec,
    state: &DensityState,
    variable: Variable,
    func: MomentFn<'_>,
    tol: f64,
) -> Result<f64> {
    DistributionModel::new(table, spec, state, variable)?.moment(func, tol)
}

/// `∫ F(x) 𝒫_cl(x) dx` for the classical reference distribution.
pub fn classical_moment(variable: Variable, func: MomentFn<'_>, tol: f64) -> Result<f64> {
    let (lo, hi) = variable.domain();
    integrate_split(|node| func.eval(node.x) * classical_at_node(variable, node), lo, hi, tol).map(|r| r.value)
}

/// Compares `⟨n|Θ̂_c^k|n⟩` from the arccosine distribution with the binomial
/// expansion `Σ_l C(k,l) (π/2)^{k−l} (−1)^l ⟨n|Θ̂_s^l|n⟩` of arcsine moments.
pub fn moment_relation_check(
    table: &RecurrenceTable,
    spec: &FamilySpec,
    n: usize,
    k: u32,
    tol: f64,
) -> Result<(f64, f64)> {
    if k == 0 {
        return Err(Error::ParameterOutOfRange("moment order must be at least 1".into()));
    }
    let state = crate::states::fock(n, n + 3)?;
    let lhs = moment(table, spec, &state, Variable::ArcCosine, MomentFn::Power(k), tol)?;
    let arcsin = DistributionModel::new(table, spec, &state, Variable::ArcSine)?;
    let mut rhs = FRAC_PI_2.powi(k as i32);
    let mut binom = 1.0;
    for l in 1..=k {
        binom *= (k - l + 1) as f64 / l as f64;
        let sign = if l % 2 == 1 { -1.0 } else { 1.0 };
        rhs += sign * binom * FRAC_PI_2.powi((k - l) as i32) * arcsin.moment(MomentFn::Power(l), tol)?;
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{eval_p, recurrence_table};
    use crate::states::{coherent, fock};
    use approx::assert_abs_diff_eq;

    const TOL: f64 = 1e-10;

    #[test]
    fn representation_examples() {
        let t = FamilySpec::chebyshev_t();
        let table = recurrence_table(&t, 20);
        let vac = [Complex64::new(1.0, 0.0)];
        let z = representation(&table, &t, &vac, 0.0, Variable::Cosine).unwrap();
        assert_abs_diff_eq!(z.re, (1.0 / PI).sqrt(), epsilon = 1e-15);

        let j = FamilySpec::jacobi(0.5, -0.25).unwrap();
        let table = recurrence_table(&j, 20);
        let mut psi = vec![Complex64::new(0.0, 0.0); 4];
        psi[3] = Complex64::new(1.0, 0.0);
        let x = 0.3;
        let cos = representation(&table, &j, &psi, x, Variable::Cosine).unwrap();
        let sin = representation(&table, &j, &psi, x, Variable::Sine).unwrap();
        let p3 = eval_p(&table, &j, 3, x).unwrap();
        assert_abs_diff_eq!(cos.re, p3, epsilon = 1e-14);
        assert_abs_diff_eq!(sin.im, p3, epsilon = 1e-14);
        assert_abs_diff_eq!(sin.re, 0.0, epsilon = 1e-14);

        assert!(matches!(representation(&table, &j, &psi, 1.0, Variable::Cosine), Err(Error::Domain(_))));
        psi[0] = Complex64::new(1.0, 0.0);
        assert!(matches!(representation(&table, &j, &psi, 0.0, Variable::Cosine), Err(Error::InvalidState(_))));
    }

    #[test]
    fn vacuum_density_examples() {
        let pts = uniform_grid(Variable::Cosine, 11, DEFAULT_MARGIN).unwrap();
        let leg = FamilySpec::legendre();
        let table = recurrence_table(&leg, 10);
        let vac = fock(0, 8).unwrap();
        let d = density(&table, &leg, &vac, &pts, Variable::Cosine, Execution::default()).unwrap();
        for p in &d.density {
            assert_abs_diff_eq!(*p, 0.5, epsilon = 1e-15);
        }

        let u = FamilySpec::chebyshev_u();
        let table = recurrence_table(&u, 10);
        let model = DistributionModel::new(&table, &u, &vac, Variable::Cosine).unwrap();
        assert_abs_diff_eq!(model.density_at(0.0).unwrap(), 2.0 / PI, epsilon = 1e-15);

        let t = FamilySpec::chebyshev_t();
        let table = recurrence_table(&t, 10);
        let pts = uniform_grid(Variable::ArcCosine, 21, DEFAULT_MARGIN).unwrap();
        let d = density(&table, &t, &vac, &pts, Variable::ArcCosine, Execution::Sequential).unwrap();
        for p in &d.density {
            assert_abs_diff_eq!(*p, 1.0 / PI, epsilon = 1e-14);
        }
    }

    #[test]
    fn fock_cosine_and_sine_agree() {
        let j = FamilySpec::jacobi(-0.5, 0.5).unwrap();
        let table = recurrence_table(&j, 20);
        let st = fock(3, 8).unwrap();
        let c = DistributionModel::new(&table, &j, &st, Variable::Cosine).unwrap();
        let s = DistributionModel::new(&table, &j, &st, Variable::Sine).unwrap();
        for x in [-0.9, -0.2, 0.35, 0.99] {
            let p = eval_p(&table, &j, 3, x).unwrap();
            assert_abs_diff_eq!(c.density_at(x).unwrap(), p * p, epsilon = 1e-13);
            assert_abs_diff_eq!(s.density_at(x).unwrap(), p * p, epsilon = 1e-13);
        }
    }

    #[test]
    fn classical_examples() {
        assert_abs_diff_eq!(classical_density_at(Variable::Cosine, 0.0).unwrap(), 1.0 / PI, epsilon = 1e-16);
        assert_abs_diff_eq!(classical_density_at(Variable::ArcSine, 0.7).unwrap(), 1.0 / PI, epsilon = 1e-16);
        assert_abs_diff_eq!(classical_moment(Variable::Cosine, MomentFn::Power(0), TOL).unwrap(), 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(classical_moment(Variable::Cosine, MomentFn::Power(1), TOL).unwrap(), 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(classical_moment(Variable::Cosine, MomentFn::Power(2), TOL).unwrap(), 0.5, epsilon = 1e-9);
        assert_abs_diff_eq!(
            classical_moment(Variable::ArcSine, MomentFn::Power(2), TOL).unwrap(),
            PI * PI / 12.0,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(classical_moment(Variable::ArcCosine, MomentFn::Power(1), TOL).unwrap(), FRAC_PI_2, epsilon = 1e-9);
        assert!(classical_density_at(Variable::ArcCosine, -0.1).is_err());
    }

    #[test]
    fn fock_first_moment_is_g() {
        let j = FamilySpec::jacobi(0.25, -0.5).unwrap();
        let table = recurrence_table(&j, 20);
        for n in 0..4 {
            let st = fock(n, n + 3).unwrap();
            let m = moment(&table, &j, &st, Variable::Cosine, MomentFn::Power(1), TOL).unwrap();
            assert_abs_diff_eq!(m, table.g(n), epsilon = 1e-8);
            let norm = moment(&table, &j, &st, Variable::Sine, MomentFn::Power(0), TOL).unwrap();
            assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn moment_relation_examples() {
        let leg = FamilySpec::legendre();
        let table = recurrence_table(&leg, 20);
        let (lhs, rhs) = moment_relation_check(&table, &leg, 2, 1, TOL).unwrap();
        assert_abs_diff_eq!(lhs, FRAC_PI_2, epsilon = 1e-8);
        assert_abs_diff_eq!(rhs, FRAC_PI_2, epsilon = 1e-8);

        let st = fock(2, 5).unwrap();
        let var = |v: Variable| {
            let m1 = moment(&table, &leg, &st, v, MomentFn::Power(1), TOL).unwrap();
            moment(&table, &leg, &st, v, MomentFn::Power(2), TOL).unwrap() - m1 * m1
        };
        assert_abs_diff_eq!(var(Variable::ArcCosine), var(Variable::ArcSine), epsilon = 1e-8);

        let j = FamilySpec::jacobi(-0.5, 0.5).unwrap();
        let table = recurrence_table(&j, 20);
        let st = fock(0, 3).unwrap();
        let acos = moment(&table, &j, &st, Variable::ArcCosine, MomentFn::Power(1), TOL).unwrap();
        let asin = moment(&table, &j, &st, Variable::ArcSine, MomentFn::Power(1), TOL).unwrap();
        assert_abs_diff_eq!(acos + asin, FRAC_PI_2, epsilon = 1e-8);
        for k in 1..5 {
            let (l, r) = moment_relation_check(&table, &j, 1, k, TOL).unwrap();
            assert_abs_diff_eq!(l, r, epsilon = 1e-8);
        }
    }

    #[test]
    fn grids_and_csv() {
        let g = uniform_grid(Variable::ArcSine, 5, 1e-6).unwrap();
        assert_eq!(g.len(), 5);
        assert_abs_diff_eq!(g[0], -FRAC_PI_2 + 1e-6, epsilon = 1e-15);
        assert_abs_diff_eq!(g[4], FRAC_PI_2 - 1e-6, epsilon = 1e-15);
        assert!(uniform_grid(Variable::Cosine, 5, 0.0).is_err());
        assert!(density(
            &recurrence_table(&FamilySpec::legendre(), 4),
            &FamilySpec::legendre(),
            &fock(0, 3).unwrap(),
            &[0.5, 0.1],
            Variable::Cosine,
            Execution::Sequential
        )
        .is_err());

        let d = classical_density(Variable::Cosine, &[0.0]).unwrap();
        let csv = d.to_csv();
        assert!(csv.starts_with("# family: classical\n"));
        assert!(csv.contains("# variable: cos\n"));
        assert!(csv.ends_with("x,density\n0.000000000000e+00,3.183098861838e-01\n"));
    }

    #[test]
    fn coherent_phase_relations() {
        let j = FamilySpec::jacobi(0.5, -0.25).unwrap();
        let table = recurrence_table(&j, 80);
        let phi = 0.6;
        let a = 1.4;
        let st = coherent(Complex64::from_polar(a, phi), 40, 1e-15).unwrap();
        let shifted = coherent(Complex64::from_polar(a, phi - FRAC_PI_2), 40, 1e-15).unwrap();
        let mirrored = coherent(Complex64::from_polar(a, -phi), 40, 1e-15).unwrap();
        let s = DistributionModel::new(&table, &j, &st, Variable::Sine).unwrap();
        let c_shift = DistributionModel::new(&table, &j, &shifted, Variable::Cosine).unwrap();
        let c = DistributionModel::new(&table, &j, &st, Variable::Cosine).unwrap();
        let c_mirror = DistributionModel::new(&table, &j, &mirrored, Variable::Cosine).unwrap();
        for x in [-0.95, -0.4, 0.0, 0.5, 0.9] {
            assert_abs_diff_eq!(s.density_at(x).unwrap(), c_shift.density_at(x).unwrap(), epsilon = 1e-10);
            assert_abs_diff_eq!(c.density_at(x).unwrap(), c_mirror.density_at(x).unwrap(), epsilon = 1e-12);
        }
    }

    #[test]
    fn support_beyond_table_is_rejected() {
        let leg = FamilySpec::legendre();
        let table = recurrence_table(&leg, 3);
        let st = fock(6, 10).unwrap();
        assert!(matches!(
            DistributionModel::new(&table, &leg, &st, Variable::Cosine),
            Err(Error::SupportExceedsTruncation { .. })
        ));
    }
}
