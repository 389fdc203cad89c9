//! Classical orthogonal polynomial families on [-1, 1].
//!
//! Each family is described by its weight `w(x) = (1-x)^a (1+x)^b` and by the
//! coefficients of the three-term recurrence satisfied by the orthonormal
//! polynomials,
//!
//! ```text
//! x P̄_n(x) = (f_n / 2) P̄_{n+1}(x) + (f_{n-1} / 2) P̄_{n-1}(x) + g_n P̄_n(x),   f_{-1} = 0,
//! ```
//!
//! together with the normalization constants `d_n` of the conventional
//! (non-normalized) polynomials. The eigenfunction systems used by the phase
//! operators are `p_n(x) = sqrt(w(x)) P̄_n(x)` and their angular versions
//! `c_n(θ) = sqrt(sin θ) p_n(cos θ)` and `s_n(θ) = sqrt(cos θ) p_n(sin θ)`.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Jacobi,
    Gegenbauer,
    Legendre,
    ChebyshevT,
    ChebyshevU,
}

/// A validated polynomial family together with its real parameters.
#[derive(Debug, Clone, Copy)]
pub struct FamilySpec {
    kind: FamilyKind,
    mu: f64,
    nu: f64,
    lambda: f64,
}

impl FamilySpec {
    pub fn jacobi(mu: f64, nu: f64) -> Result<Self> {
        if !(mu > -1.0) || !mu.is_finite() {
            return Err(Error::ParameterOutOfRange(format!("jacobi mu = {mu} must exceed -1")));
        }
        if !(nu > -1.0) || !nu.is_finite() {
            return Err(Error::ParameterOutOfRange(format!("jacobi nu = {nu} must exceed -1")));
        }
        Ok(FamilySpec { kind: FamilyKind::Jacobi, mu, nu, lambda: f64::NAN })
    }

    pub fn gegenbauer(lambda: f64) -> Result<Self> {
        if !(lambda > -0.5) || !lambda.is_finite() {
            return Err(Error::ParameterOutOfRange(format!(
                "gegenbauer lambda = {lambda} must exceed -1/2"
            )));
        }
        if lambda == 0.0 {
            return Err(Error::GegenbauerLambdaZero);
        }
        Ok(FamilySpec { kind: FamilyKind::Gegenbauer, mu: f64::NAN, nu: f64::NAN, lambda })
    }

    pub fn legendre() -> Self {
        Self::fixed(FamilyKind::Legendre)
    }

    pub fn chebyshev_t() -> Self {
        Self::fixed(FamilyKind::ChebyshevT)
    }

    pub fn chebyshev_u() -> Self {
        Self::fixed(FamilyKind::ChebyshevU)
    }

    fn fixed(kind: FamilyKind) -> Self {
        FamilySpec { kind, mu: f64::NAN, nu: f64::NAN, lambda: f64::NAN }
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn mu(&self) -> Option<f64> {
        (self.kind == FamilyKind::Jacobi).then_some(self.mu)
    }

    pub fn nu(&self) -> Option<f64> {
        (self.kind == FamilyKind::Jacobi).then_some(self.nu)
    }

    pub fn lambda(&self) -> Option<f64> {
        (self.kind == FamilyKind::Gegenbauer).then_some(self.lambda)
    }

    /// True when the weight is even, in which case every `g_n` vanishes.
    pub fn is_symmetric(&self) -> bool {
        self.kind != FamilyKind::Jacobi || self.mu == self.nu
    }

    /// Exponents `(a, b)` of the weight `(1-x)^a (1+x)^b`.
    pub fn weight_exponents(&self) -> (f64, f64) {
        match self.kind {
            FamilyKind::Jacobi => (self.mu, self.nu),
            FamilyKind::Gegenbauer => (self.lambda - 0.5, self.lambda - 0.5),
            FamilyKind::Legendre => (0.0, 0.0),
            FamilyKind::ChebyshevT => (-0.5, -0.5),
            FamilyKind::ChebyshevU => (0.5, 0.5),
        }
    }

    /// True when the weight diverges at either endpoint.
    pub fn is_endpoint_singular(&self) -> bool {
        let (a, b) = self.weight_exponents();
        a < 0.0 || b < 0.0
    }

    /// The family obtained by `x -> -x`; swaps the Jacobi indices.
    pub fn reflected(&self) -> Self {
        match self.kind {
            FamilyKind::Jacobi => FamilySpec { mu: self.nu, nu: self.mu, ..*self },
            _ => *self,
        }
    }
}

/// Parameters a kind does not use are ignored.
impl PartialEq for FamilySpec {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.mu() == other.mu() && self.nu() == other.nu() && self.lambda() == other.lambda()
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FamilyKind::Jacobi => write!(f, "jacobi(mu={},nu={})", self.mu, self.nu),
            FamilyKind::Gegenbauer => write!(f, "gegenbauer(lambda={})", self.lambda),
            FamilyKind::Legendre => f.write_str("legendre"),
            FamilyKind::ChebyshevT => f.write_str("chebyshev-t"),
            FamilyKind::ChebyshevU => f.write_str("chebyshev-u"),
        }
    }
}

/// Builds a family from its kind and parameter list: `[mu, nu]` for Jacobi,
/// `[lambda]` for Gegenbauer, nothing otherwise.
pub fn make_family(kind: FamilyKind, params: &[f64]) -> Result<FamilySpec> {
    let expect = |n: usize| {
        if params.len() == n {
            Ok(())
        } else {
            Err(Error::ParameterOutOfRange(format!(
                "{kind:?} takes {n} parameter(s), got {}",
                params.len()
            )))
        }
    };
    match kind {
        FamilyKind::Jacobi => {
            expect(2)?;
            FamilySpec::jacobi(params[0], params[1])
        }
        FamilyKind::Gegenbauer => {
            expect(1)?;
            FamilySpec::gegenbauer(params[0])
        }
        FamilyKind::Legendre => expect(0).map(|_| FamilySpec::legendre()),
        FamilyKind::ChebyshevT => expect(0).map(|_| FamilySpec::chebyshev_t()),
        FamilyKind::ChebyshevU => expect(0).map(|_| FamilySpec::chebyshev_u()),
    }
}

/// Recurrence coefficients `f_n`, `g_n` and normalization constants `d_n`
/// for `n = 0..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceTable {
    f: Vec<f64>,
    g: Vec<f64>,
    d: Vec<f64>,
}

impl RecurrenceTable {
    /// A table from arbitrary coefficient sequences. The normalization
    /// constants are set to 1, so evaluation routines treat the sequences as
    /// already orthonormal; operator construction only uses `f` and `g`.
    pub fn from_coefficients(f: Vec<f64>, g: Vec<f64>) -> Result<Self> {
        let d = vec![1.0; f.len()];
        Self::from_parts(f, g, d)
    }

    pub fn from_parts(f: Vec<f64>, g: Vec<f64>, d: Vec<f64>) -> Result<Self> {
        if f.is_empty() || f.len() != g.len() || f.len() != d.len() {
            return Err(Error::InvalidTable(format!(
                "sequence lengths f={}, g={}, d={} must be equal and nonzero",
                f.len(),
                g.len(),
                d.len()
            )));
        }
        if let Some((n, v)) = f.iter().enumerate().find(|(_, v)| !(**v > 0.0 && v.is_finite())) {
            return Err(Error::InvalidTable(format!("f_{n} = {v} is not strictly positive")));
        }
        if let Some((n, v)) = g.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidTable(format!("g_{n} = {v} is not finite")));
        }
        if let Some((n, v)) = d.iter().enumerate().find(|(_, v)| !(**v > 0.0 && v.is_finite())) {
            return Err(Error::InvalidTable(format!("d_{n} = {v} is not positive and finite")));
        }
        Ok(RecurrenceTable { f, g, d })
    }

    /// Number of levels, `n_max + 1`.
    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    pub fn f(&self, n: usize) -> f64 {
        self.f[n]
    }

    /// `f_{n-1}`, with `f_{-1} = 0`.
    pub fn f_prev(&self, n: usize) -> f64 {
        if n == 0 {
            0.0
        } else {
            self.f[n - 1]
        }
    }

    pub fn g(&self, n: usize) -> f64 {
        self.g[n]
    }

    pub fn d(&self, n: usize) -> f64 {
        self.d[n]
    }

    pub fn f_values(&self) -> &[f64] {
        &self.f
    }

    pub fn g_values(&self) -> &[f64] {
        &self.g
    }

    pub fn d_values(&self) -> &[f64] {
        &self.d
    }

    pub(crate) fn check_len(&self, needed: usize) -> Result<()> {
        if self.len() < needed {
            Err(Error::TableTooShort { len: self.len(), needed })
        } else {
            Ok(())
        }
    }
}

fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    libm::lgamma(x)
}

fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// Closed-form coefficients of the family for `n = 0..=n_max`.
pub fn recurrence_table(spec: &FamilySpec, n_max: usize) -> RecurrenceTable {
    let len = n_max + 1;
    let mut f = Vec::with_capacity(len);
    let mut g = Vec::with_capacity(len);
    let mut d = Vec::with_capacity(len);
    for n in 0..len {
        let (fn_, gn, dn) = match spec.kind {
            FamilyKind::Jacobi => jacobi_coefficients(spec.mu, spec.nu, n),
            FamilyKind::Gegenbauer => gegenbauer_coefficients(spec.lambda, n),
            FamilyKind::Legendre => {
                let m = n as f64;
                ((m + 1.0) / ((m + 0.5) * (m + 1.5)).sqrt(), 0.0, 2.0 / (2.0 * m + 1.0))
            }
            FamilyKind::ChebyshevT => {
                let tau = if n == 0 { 2.0 } else { 1.0 };
                (f64::sqrt(tau), 0.0, FRAC_PI_2 * tau)
            }
            FamilyKind::ChebyshevU => (1.0, 0.0, FRAC_PI_2),
        };
        f.push(fn_);
        g.push(if spec.is_symmetric() { 0.0 } else { gn });
        d.push(dn);
    }
    RecurrenceTable { f, g, d }
}

fn jacobi_coefficients(mu: f64, nu: f64, n: usize) -> (f64, f64, f64) {
    let s = mu + nu;
    let m = n as f64;
    if n == 0 {
        // (n + s + 1) / (2n + s + 1) cancels at n = 0, which matters when s = -1.
        let f0 = 4.0 / (s + 2.0) * ((mu + 1.0) * (nu + 1.0) / (s + 3.0)).sqrt();
        let g0 = (nu - mu) / (s + 2.0);
        let ln_d0 = (s + 1.0) * LN_2 + ln_gamma(mu + 1.0) + ln_gamma(nu + 1.0) - ln_gamma(s + 2.0);
        return (f0, g0, ln_d0.exp());
    }
    let f = 4.0 / (2.0 * m + s + 2.0)
        * ((m + 1.0) * (m + mu + 1.0) * (m + nu + 1.0) * (m + s + 1.0)
            / ((2.0 * m + s + 1.0) * (2.0 * m + s + 3.0)))
            .sqrt();
    let g = (nu * nu - mu * mu) / ((2.0 * m + s) * (2.0 * m + s + 2.0));
    let ln_d = (s + 1.0) * LN_2 + ln_gamma(m + mu + 1.0) + ln_gamma(m + nu + 1.0)
        - ln_factorial(n)
        - (2.0 * m + s + 1.0).ln()
        - ln_gamma(m + s + 1.0);
    (f, g, ln_d.exp())
}

fn gegenbauer_coefficients(lambda: f64, n: usize) -> (f64, f64, f64) {
    let m = n as f64;
    // Γ(λ)² = Γ(λ+1)² / λ² keeps every log-gamma argument positive for λ > -1/2.
    if n == 0 {
        let f0 = (2.0 / (lambda + 1.0)).sqrt();
        let ln_d0 = PI.ln() + (1.0 - 2.0 * lambda) * LN_2 + ln_gamma(2.0 * lambda + 1.0)
            - LN_2
            - 2.0 * ln_gamma(lambda + 1.0);
        return (f0, 0.0, ln_d0.exp());
    }
    let f = ((m + 1.0) * (m + 2.0 * lambda) / ((m + lambda) * (m + lambda + 1.0))).sqrt();
    let ln_d = PI.ln() + (1.0 - 2.0 * lambda) * LN_2 + ln_gamma(m + 2.0 * lambda)
        + 2.0 * lambda.abs().ln()
        - ln_factorial(n)
        - (m + lambda).ln()
        - 2.0 * ln_gamma(lambda + 1.0);
    (f, 0.0, ln_d.exp())
}

/// A point of [-1, 1] carried together with its distances to both
/// endpoints, so that weights can be evaluated accurately next to a
/// singular endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitPoint {
    pub x: f64,
    pub one_minus: f64,
    pub one_plus: f64,
}

impl UnitPoint {
    pub fn new(x: f64) -> Self {
        UnitPoint { x, one_minus: 1.0 - x, one_plus: 1.0 + x }
    }

    pub fn with_complements(x: f64, one_minus: f64, one_plus: f64) -> Self {
        UnitPoint { x, one_minus, one_plus }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AngleKind {
    /// `x = cos θ`, `θ ∈ (0, π)`.
    CosineAngle,
    /// `x = sin θ`, `θ ∈ (-π/2, π/2)`.
    SineAngle,
}

impl AngleKind {
    pub fn range(self) -> (f64, f64) {
        match self {
            AngleKind::CosineAngle => (0.0, PI),
            AngleKind::SineAngle => (-FRAC_PI_2, FRAC_PI_2),
        }
    }

    /// Maps an angle, given with its distances to the lower and upper ends of
    /// the angular range, to the corresponding point of [-1, 1] and the
    /// Jacobian `sin θ` (resp. `cos θ`).
    pub fn to_unit(self, theta: f64, from_lower: f64, from_upper: f64) -> (UnitPoint, f64) {
        let half_lower = (0.5 * from_lower).sin();
        let half_upper = (0.5 * from_upper).sin();
        let jacobian = from_lower.min(from_upper).sin();
        match self {
            AngleKind::CosineAngle => (
                UnitPoint::with_complements(
                    theta.cos(),
                    2.0 * half_lower * half_lower,
                    2.0 * half_upper * half_upper,
                ),
                jacobian,
            ),
            AngleKind::SineAngle => (
                UnitPoint::with_complements(
                    theta.sin(),
                    2.0 * half_upper * half_upper,
                    2.0 * half_lower * half_lower,
                ),
                jacobian,
            ),
        }
    }

    pub(crate) fn point(self, theta: f64) -> Result<(UnitPoint, f64)> {
        let (lo, hi) = self.range();
        if !(theta > lo && theta < hi) {
            return Err(Error::Domain(format!("angle {theta} outside ({lo}, {hi})")));
        }
        Ok(self.to_unit(theta, theta - lo, hi - theta))
    }
}

/// `w(x)`; returns `+inf` at an endpoint where the weight diverges.
pub fn weight(spec: &FamilySpec, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("x = {x} outside [-1, 1]")));
    }
    Ok(weight_at(spec, &UnitPoint::new(x)))
}

pub fn weight_at(spec: &FamilySpec, p: &UnitPoint) -> f64 {
    let (a, b) = spec.weight_exponents();
    endpoint_power(p.one_minus, a) * endpoint_power(p.one_plus, b)
}

fn sqrt_weight_at(spec: &FamilySpec, p: &UnitPoint) -> f64 {
    let (a, b) = spec.weight_exponents();
    endpoint_power(p.one_minus, 0.5 * a) * endpoint_power(p.one_plus, 0.5 * b)
}

fn endpoint_power(base: f64, exponent: f64) -> f64 {
    if exponent == 0.0 {
        1.0
    } else if base == 0.0 {
        if exponent < 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    } else {
        base.powf(exponent)
    }
}

/// Orthonormal polynomials `P̄_0(x), ..., P̄_{out.len()-1}(x)` by forward
/// recurrence.
pub fn orthonormal_polynomials(table: &RecurrenceTable, x: f64, out: &mut [f64]) -> Result<()> {
    if out.is_empty() {
        return Ok(());
    }
    // P̄_{n+1} needs f_n, so the last requested level needs f_{len-2}.
    table.check_len(out.len())?;
    out[0] = 1.0 / table.d(0).sqrt();
    if out.len() > 1 {
        out[1] = 2.0 * (x - table.g(0)) * out[0] / table.f(0);
    }
    for n in 1..out.len() - 1 {
        out[n + 1] = 2.0 * ((x - table.g(n)) * out[n] - 0.5 * table.f(n - 1) * out[n - 1]) / table.f(n);
    }
    Ok(())
}

fn check_unit_domain(spec: &FamilySpec, x: f64) -> Result<()> {
    let ok = if spec.is_endpoint_singular() { x > -1.0 && x < 1.0 } else { (-1.0..=1.0).contains(&x) };
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!("x = {x} outside the evaluation domain of {spec}")))
    }
}

fn check_index(table: &RecurrenceTable, n: usize) -> Result<()> {
    if n >= table.len() {
        Err(Error::Index { index: n, len: table.len() })
    } else {
        Ok(())
    }
}

/// `p_n(x) = sqrt(w(x)) P̄_n(x)`.
pub fn eval_p(table: &RecurrenceTable, spec: &FamilySpec, n: usize, x: f64) -> Result<f64> {
    check_unit_domain(spec, x)?;
    eval_p_at(table, spec, n, &UnitPoint::new(x))
}

pub fn eval_p_at(table: &RecurrenceTable, spec: &FamilySpec, n: usize, p: &UnitPoint) -> Result<f64> {
    check_index(table, n)?;
    let mut buf = vec![0.0; n + 1];
    orthonormal_polynomials(table, p.x, &mut buf)?;
    Ok(sqrt_weight_at(spec, p) * buf[n])
}

/// `p_0(x), ..., p_{count-1}(x)` in one recurrence pass.
pub fn eval_p_all(
    table: &RecurrenceTable,
    spec: &FamilySpec,
    count: usize,
    p: &UnitPoint,
) -> Result<Vec<f64>> {
    let mut buf = vec![0.0; count];
    orthonormal_polynomials(table, p.x, &mut buf)?;
    let sw = sqrt_weight_at(spec, p);
    buf.iter_mut().for_each(|v| *v *= sw);
    Ok(buf)
}

/// `c_n(θ) = sqrt(sin θ) p_n(cos θ)` or `s_n(θ) = sqrt(cos θ) p_n(sin θ)`.
pub fn eval_angle(
    table: &RecurrenceTable,
    spec: &FamilySpec,
    n: usize,
    theta: f64,
    kind: AngleKind,
) -> Result<f64> {
    let (p, jacobian) = kind.point(theta)?;
    Ok(jacobian.sqrt() * eval_p_at(table, spec, n, &p)?)
}
