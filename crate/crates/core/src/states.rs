//! Density states in the truncated Fock basis and the expectation values of
//! the phase operators.
//!
//! Three routes produce an [`ExpectationReport`]:
//!
//! * [`closed_form_report`]: finite sums over `ρ_nn`, `ρ_{n+1,n}` and
//!   `ρ_{n+2,n}` weighted by the recurrence coefficients;
//! * [`trace_report`]: `Tr(ρ Â)` with explicitly multiplied matrices;
//! * [`coherent_report`]: the `|α|`-dependent series [`FGFunctions`] combined
//!   with the phase of `α`.
//!
//! The trace route is the arbiter; the tests hold the other two to it.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::families::RecurrenceTable;
use crate::operators::{
    anticommutator, build_cosine, build_sine, commutator, TruncatedOperator, PRODUCT_MARGIN,
};

pub const DEFAULT_TAIL_TOL: f64 = 1e-15;
pub const MAX_SERIES_TERMS: usize = 100_000;

const HERMITIAN_TOL: f64 = 1e-14;
const TRACE_TOL: f64 = 1e-12;
const PSD_FLOOR: f64 = -1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateOrigin {
    Fock(usize),
    Coherent { alpha: Complex64, tail_tol: f64 },
    Custom,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    rho: DMatrix<Complex64>,
    support: usize,
    origin: StateOrigin,
}

impl DensityState {
    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn rho(&self) -> &DMatrix<Complex64> {
        &self.rho
    }

    /// `ρ_{m,n}`.
    pub fn entry(&self, m: usize, n: usize) -> Complex64 {
        self.rho[(m, n)]
    }

    /// Highest Fock level the state occupies.
    pub fn support(&self) -> usize {
        self.support
    }

    pub fn origin(&self) -> StateOrigin {
        self.origin
    }

    /// `fock:n`, `coherent:re,im` or `custom`.
    pub fn describe(&self) -> String {
        match self.origin {
            StateOrigin::Fock(n) => format!("fock:{n}"),
            StateOrigin::Coherent { alpha, .. } => format!("coherent:{},{}", alpha.re, alpha.im),
            StateOrigin::Custom => "custom".into(),
        }
    }

    fn require_margin(&self, margin: usize) -> Result<()> {
        let limit = self.dim().checked_sub(1 + margin);
        match limit {
            Some(limit) if self.support <= limit => Ok(()),
            _ => Err(Error::SupportExceedsTruncation {
                support: self.support,
                limit: limit.map_or(-1, |l| l as i64),
            }),
        }
    }
}

/// `|n⟩⟨n|` in `dim` levels; requires `n ≤ dim − 3`.
pub fn fock(n: usize, dim: usize) -> Result<DensityState> {
    if n + PRODUCT_MARGIN + 1 > dim {
        return Err(Error::SupportExceedsTruncation {
            support: n,
            limit: dim as i64 - 1 - PRODUCT_MARGIN as i64,
        });
    }
    let mut rho = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    rho[(n, n)] = Complex64::new(1.0, 0.0);
    Ok(DensityState { rho, support: n, origin: StateOrigin::Fock(n) })
}

/// `ln(|α|^{2n} e^{−|α|²} / n!)`.
fn log_poisson(a: f64, n: usize) -> f64 {
    let log_power = if n == 0 { 0.0 } else { 2.0 * n as f64 * a.ln() };
    log_power - a * a - libm::lgamma(n as f64 + 1.0)
}

/// Smallest `n` whose Poisson tail `Σ_{k>n} P_k` is at most `tail_tol`.
pub fn coherent_support(alpha_abs: f64, tail_tol: f64) -> Result<usize> {
    check_tail_tol(tail_tol)?;
    if !(alpha_abs >= 0.0) || !alpha_abs.is_finite() {
        return Err(Error::ParameterOutOfRange(format!("|alpha| = {alpha_abs} must be finite and nonnegative")));
    }
    if alpha_abs == 0.0 {
        return Ok(0);
    }
    // Far enough past the peak that the remaining mass is below 1e-300.
    let mean = alpha_abs * alpha_abs;
    let end = (mean + 40.0 * alpha_abs + 200.0).ceil() as usize;
    let mut tail = 0.0;
    let mut n = end;
    while n > 0 {
        let next = tail + log_poisson(alpha_abs, n).exp();
        if next > tail_tol {
            return Ok(n);
        }
        tail = next;
        n -= 1;
    }
    Ok(0)
}

fn check_tail_tol(tail_tol: f64) -> Result<()> {
    if tail_tol > 0.0 && tail_tol < 1.0 {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange(format!("tail tolerance {tail_tol} must lie in (0, 1)")))
    }
}

/// Smallest dimension that holds a coherent state with the two-level margin.
pub fn coherent_required_dim(alpha_abs: f64, tail_tol: f64) -> Result<usize> {
    Ok(coherent_support(alpha_abs, tail_tol)? + PRODUCT_MARGIN + 1)
}

/// `ρ_{m,n} = e^{−|α|²} α^m (α*)^n / √(m! n!)` for `m, n < dim`.
pub fn coherent(alpha: Complex64, dim: usize, tail_tol: f64) -> Result<DensityState> {
    if !alpha.re.is_finite() || !alpha.im.is_finite() {
        return Err(Error::ParameterOutOfRange(format!("alpha = {alpha} is not finite")));
    }
    let a = alpha.norm();
    let support = coherent_support(a, tail_tol)?;
    let required = support + PRODUCT_MARGIN + 1;
    if required > dim {
        return Err(Error::TruncationInsufficient { dim, required });
    }
    let phi = alpha.arg();
    let psi: Vec<Complex64> = (0..dim)
        .map(|n| {
            if a == 0.0 {
                return Complex64::new(if n == 0 { 1.0 } else { 0.0 }, 0.0);
            }
            Complex64::from_polar((0.5 * log_poisson(a, n)).exp(), n as f64 * phi)
        })
        .collect();
    let rho = DMatrix::from_fn(dim, dim, |m, n| psi[m] * psi[n].conj());
    Ok(DensityState { rho, support, origin: StateOrigin::Coherent { alpha, tail_tol } })
}

/// [`coherent`] in the smallest admissible dimension.
pub fn coherent_auto(alpha: Complex64, tail_tol: f64) -> Result<DensityState> {
    coherent(alpha, coherent_required_dim(alpha.norm(), tail_tol)?, tail_tol)
}

/// Validates a user-supplied density matrix. No repair is attempted.
pub fn custom(rho: DMatrix<Complex64>) -> Result<DensityState> {
    let n = rho.nrows();
    if n != rho.ncols() {
        return Err(Error::DimensionMismatch(n, rho.ncols()));
    }
    if n == 0 {
        return Err(Error::InvalidState("empty density matrix".into()));
    }
    if rho.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidState("non-finite entry".into()));
    }
    let mut dev = 0.0f64;
    for j in 0..n {
        for k in j..n {
            dev = dev.max((rho[(j, k)] - rho[(k, j)].conj()).norm());
        }
    }
    if dev > HERMITIAN_TOL {
        return Err(Error::InvalidState(format!("not Hermitian (deviation {dev:e})")));
    }
    let trace = rho.trace();
    if (trace - Complex64::new(1.0, 0.0)).norm() > TRACE_TOL {
        return Err(Error::InvalidState(format!("trace is {trace}, expected 1")));
    }
    let eig = SymmetricEigen::new(rho.clone());
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min < PSD_FLOOR {
        return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
    }
    let support = (0..n)
        .rev()
        .find(|&k| (0..n).any(|j| rho[(j, k)] != Complex64::new(0.0, 0.0) || rho[(k, j)] != Complex64::new(0.0, 0.0)))
        .unwrap_or(0);
    Ok(DensityState { rho, support, origin: StateOrigin::Custom })
}

/// Parses the `row,col,re,im` matrix format (header optional, missing
/// entries are zero) and validates the result with [`custom`].
pub fn custom_from_csv(text: &str) -> Result<DensityState> {
    let mut entries = Vec::new();
    let mut dim = 0usize;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || (lineno == 0 && line.starts_with("row")) {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let bad = || Error::Parse(format!("line {}: expected row,col,re,im but found '{line}'", lineno + 1));
        if fields.len() != 4 {
            return Err(bad());
        }
        let r: usize = fields[0].parse().map_err(|_| bad())?;
        let c: usize = fields[1].parse().map_err(|_| bad())?;
        let re: f64 = fields[2].parse().map_err(|_| bad())?;
        let im: f64 = fields[3].parse().map_err(|_| bad())?;
        dim = dim.max(r + 1).max(c + 1);
        entries.push((r, c, Complex64::new(re, im)));
    }
    if dim == 0 {
        return Err(Error::Parse("density matrix file has no entries".into()));
    }
    let mut rho = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for (r, c, z) in entries {
        rho[(r, c)] = z;
    }
    custom(rho)
}

/// `Tr(ρ Â)`. Operators built from products require the state to stay
/// clear of their inexact boundary rows.
pub fn expect(state: &DensityState, op: &TruncatedOperator) -> Result<Complex64> {
    if state.dim() != op.dim() {
        return Err(Error::DimensionMismatch(state.dim(), op.dim()));
    }
    if op.margin() > 0 {
        state.require_margin(op.margin())?;
    }
    let n = state.dim();
    let a = op.entries();
    let mut sum = Complex64::new(0.0, 0.0);
    for m in 0..n {
        for k in 0..n {
            sum += state.rho[(m, k)] * a[(k, m)];
        }
    }
    Ok(sum)
}

/// Means, second moments, commutators, covariances and uncertainty products
/// of `Ĉ`, `Ŝ` and `N̂`.
///
/// Commutators `[Â,B̂]₋` of Hermitian operators are purely imaginary; the
/// `comm_*` fields hold the imaginary parts. Covariances are symmetrized:
/// `cov_AB = ⟨[Â,B̂]₊⟩/2 − ⟨Â⟩⟨B̂⟩`. Each uncertainty pair is
/// `(σ_AA σ_BB, |⟨[Â,B̂]₋⟩|²/4)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ExpectationReport {
    pub mean_c: f64,
    pub mean_s: f64,
    pub mean_c2: f64,
    pub mean_s2: f64,
    pub comm_cs: f64,
    pub acomm_cs: f64,
    pub comm_nc: f64,
    pub comm_ns: f64,
    pub acomm_nc: f64,
    pub acomm_ns: f64,
    pub var_c: f64,
    pub var_s: f64,
    pub cov_cs: f64,
    pub cov_nc: f64,
    pub cov_ns: f64,
    pub uncertainty_cs_lhs: f64,
    pub uncertainty_cs_rhs: f64,
    pub uncertainty_nc_lhs: f64,
    pub uncertainty_nc_rhs: f64,
    pub uncertainty_ns_lhs: f64,
    pub uncertainty_ns_rhs: f64,
    pub mean_n: f64,
    pub var_n: f64,
}

/// Raw expectation values from which every report field follows.
struct Moments {
    mean_c: f64,
    mean_s: f64,
    mean_c2: f64,
    mean_s2: f64,
    comm_cs: f64,
    acomm_cs: f64,
    comm_nc: f64,
    comm_ns: f64,
    acomm_nc: f64,
    acomm_ns: f64,
    mean_n: f64,
    var_n: f64,
}

impl ExpectationReport {
    pub const FIELD_NAMES: [&'static str; 23] = [
        "mean_C",
        "mean_S",
        "mean_C2",
        "mean_S2",
        "comm_CS",
        "acomm_CS",
        "comm_NC",
        "comm_NS",
        "acomm_NC",
        "acomm_NS",
        "var_C",
        "var_S",
        "cov_CS",
        "cov_NC",
        "cov_NS",
        "uncertainty_CS_lhs",
        "uncertainty_CS_rhs",
        "uncertainty_NC_lhs",
        "uncertainty_NC_rhs",
        "uncertainty_NS_lhs",
        "uncertainty_NS_rhs",
        "mean_N",
        "var_N",
    ];

    pub fn values(&self) -> [f64; 23] {
        [
            self.mean_c,
            self.mean_s,
            self.mean_c2,
            self.mean_s2,
            self.comm_cs,
            self.acomm_cs,
            self.comm_nc,
            self.comm_ns,
            self.acomm_nc,
            self.acomm_ns,
            self.var_c,
            self.var_s,
            self.cov_cs,
            self.cov_nc,
            self.cov_ns,
            self.uncertainty_cs_lhs,
            self.uncertainty_cs_rhs,
            self.uncertainty_nc_lhs,
            self.uncertainty_nc_rhs,
            self.uncertainty_ns_lhs,
            self.uncertainty_ns_rhs,
            self.mean_n,
            self.var_n,
        ]
    }

    pub fn fields(&self) -> impl Iterator<Item = (&'static str, f64)> {
        Self::FIELD_NAMES.into_iter().zip(self.values())
    }

    /// `⟨Ĉ² + Ŝ²⟩`.
    pub fn mean_c2_plus_s2(&self) -> f64 {
        self.mean_c2 + self.mean_s2
    }

    fn from_moments(m: Moments) -> Self {
        let var_c = m.mean_c2 - m.mean_c * m.mean_c;
        let var_s = m.mean_s2 - m.mean_s * m.mean_s;
        ExpectationReport {
            mean_c: m.mean_c,
            mean_s: m.mean_s,
            mean_c2: m.mean_c2,
            mean_s2: m.mean_s2,
            comm_cs: m.comm_cs,
            acomm_cs: m.acomm_cs,
            comm_nc: m.comm_nc,
            comm_ns: m.comm_ns,
            acomm_nc: m.acomm_nc,
            acomm_ns: m.acomm_ns,
            var_c,
            var_s,
            cov_cs: 0.5 * m.acomm_cs - m.mean_c * m.mean_s,
            cov_nc: 0.5 * m.acomm_nc - m.mean_n * m.mean_c,
            cov_ns: 0.5 * m.acomm_ns - m.mean_n * m.mean_s,
            uncertainty_cs_lhs: var_c * var_s,
            uncertainty_cs_rhs: 0.25 * m.comm_cs * m.comm_cs,
            uncertainty_nc_lhs: m.var_n * var_c,
            uncertainty_nc_rhs: 0.25 * m.comm_nc * m.comm_nc,
            uncertainty_ns_lhs: m.var_n * var_s,
            uncertainty_ns_rhs: 0.25 * m.comm_ns * m.comm_ns,
            mean_n: m.mean_n,
            var_n: m.var_n,
        }
    }
}

fn check_report_inputs(table: &RecurrenceTable, state: &DensityState) -> Result<()> {
    state.require_margin(PRODUCT_MARGIN)?;
    table.check_len(state.dim())
}

/// Report from the closed-form sums over the first three diagonals of `ρ`.
pub fn closed_form_report(table: &RecurrenceTable, state: &DensityState) -> Result<ExpectationReport> {
    check_report_inputs(table, state)?;
    let dim = state.dim();
    let f = |n: usize| table.f(n);
    let g = |n: usize| table.g(n);

    let mut m = Moments {
        mean_c: 0.0,
        mean_s: 0.0,
        mean_c2: 0.0,
        mean_s2: 0.0,
        comm_cs: 0.0,
        acomm_cs: 0.0,
        comm_nc: 0.0,
        comm_ns: 0.0,
        acomm_nc: 0.0,
        acomm_ns: 0.0,
        mean_n: 0.0,
        var_n: 0.0,
    };
    let mut mean_n2 = 0.0;
    for n in 0..dim {
        let p = state.rho[(n, n)].re;
        let nf = n as f64;
        let (fn_, fp, gn) = (f(n), table.f_prev(n), g(n));
        let diag2 = 0.25 * (fn_ * fn_ + fp * fp + 4.0 * gn * gn) * p;
        m.mean_c += gn * p;
        m.mean_s += gn * p;
        m.mean_c2 += diag2;
        m.mean_s2 += diag2;
        m.comm_cs += 0.5 * (fn_ * fn_ - fp * fp) * p;
        m.acomm_cs += 2.0 * gn * gn * p;
        m.acomm_nc += 2.0 * nf * gn * p;
        m.acomm_ns += 2.0 * nf * gn * p;
        m.mean_n += nf * p;
        mean_n2 += nf * nf * p;

        if n + 1 < dim {
            let r1 = state.rho[(n + 1, n)];
            let gsum = fn_ * (gn + g(n + 1));
            let gdiff = fn_ * (gn - g(n + 1));
            m.mean_c += fn_ * r1.re;
            m.mean_s += fn_ * r1.im;
            m.mean_c2 += gsum * r1.re;
            m.mean_s2 += gsum * r1.im;
            m.comm_cs -= gdiff * (r1.re + r1.im);
            m.acomm_cs += gsum * (r1.re + r1.im);
            m.comm_nc -= fn_ * r1.im;
            m.comm_ns += fn_ * r1.re;
            m.acomm_nc += (2.0 * nf + 1.0) * fn_ * r1.re;
            m.acomm_ns += (2.0 * nf + 1.0) * fn_ * r1.im;
        }
        if n + 2 < dim {
            let r2 = state.rho[(n + 2, n)];
            let ff = fn_ * f(n + 1);
            m.mean_c2 += 0.5 * ff * r2.re;
            m.mean_s2 -= 0.5 * ff * r2.re;
            m.acomm_cs += ff * r2.im;
        }
    }
    m.var_n = mean_n2 - m.mean_n * m.mean_n;
    Ok(ExpectationReport::from_moments(m))
}

/// Report from `Tr(ρ Â)` with explicitly built operator products.
pub fn trace_report(table: &RecurrenceTable, state: &DensityState) -> Result<ExpectationReport> {
    check_report_inputs(table, state)?;
    let dim = state.dim();
    let c = build_cosine(table, dim)?;
    let s = build_sine(table, dim)?;
    let n = TruncatedOperator::number(dim);
    let re = |op: &TruncatedOperator| expect(state, op).map(|z| z.re);
    let im = |op: &TruncatedOperator| expect(state, op).map(|z| z.im);
    let mean_n = re(&n)?;
    let m = Moments {
        mean_c: re(&c)?,
        mean_s: re(&s)?,
        mean_c2: re(&c.matmul(&c)?)?,
        mean_s2: re(&s.matmul(&s)?)?,
        comm_cs: im(&commutator(&c, &s)?)?,
        acomm_cs: re(&anticommutator(&c, &s)?)?,
        comm_nc: im(&commutator(&n, &c)?)?,
        comm_ns: im(&commutator(&n, &s)?)?,
        acomm_nc: re(&anticommutator(&n, &c)?)?,
        acomm_ns: re(&anticommutator(&n, &s)?)?,
        mean_n,
        var_n: re(&n.matmul(&n)?)? - mean_n * mean_n,
    };
    Ok(ExpectationReport::from_moments(m))
}

/// The `|α|`-dependent series of a coherent state, each a Poisson average
/// `Σ P_n(|α|) · t_n`:
///
/// ```text
/// F1 = Σ P_n f_n |α|/√(n+1)             G± = Σ P_n f_n (g_n ± g_{n+1}) |α|/√(n+1)
/// F2 = Σ P_n f_n f_{n+1} |α|²/√((n+1)(n+2))
/// F± = Σ P_n (f_n² ± f_{n−1}²)/2         G1 = Σ P_n g_n,   G2 = Σ P_n g_n²
/// H1 = Σ P_n (2n+1) f_n |α|/√(n+1)      K1 = Σ P_n n g_n
/// ```
///
/// `H1` and `K1` give the number-operator anticommutators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FGFunctions {
    pub f1: f64,
    pub f2: f64,
    pub f_plus: f64,
    pub f_minus: f64,
    pub g1: f64,
    pub g2: f64,
    pub g_plus: f64,
    pub g_minus: f64,
    pub h1: f64,
    pub k1: f64,
    pub alpha_abs: f64,
    pub terms_used: usize,
}

/// Number of Poisson terms kept for `|α|`: the series stops at the first
/// weight below `tail_tol` times the largest weight so far.
pub fn coherent_series_terms(alpha_abs: f64, tail_tol: f64) -> Result<usize> {
    check_tail_tol(tail_tol)?;
    if !(alpha_abs >= 0.0) || !alpha_abs.is_finite() {
        return Err(Error::ParameterOutOfRange(format!("|alpha| = {alpha_abs} must be finite and nonnegative")));
    }
    if alpha_abs == 0.0 {
        return Ok(1);
    }
    let log_tol = tail_tol.ln();
    let mut best = f64::NEG_INFINITY;
    for n in 0..MAX_SERIES_TERMS {
        let lp = log_poisson(alpha_abs, n);
        best = best.max(lp);
        if lp < best + log_tol {
            return Ok(n);
        }
    }
    Err(Error::NonConvergence(MAX_SERIES_TERMS))
}

/// Table length needed by [`coherent_fg`] at `|α|`.
pub fn coherent_table_len(alpha_abs: f64, tail_tol: f64) -> Result<usize> {
    Ok(coherent_series_terms(alpha_abs, tail_tol)? + 1)
}

pub fn coherent_fg(table: &RecurrenceTable, alpha_abs: f64, tail_tol: f64) -> Result<FGFunctions> {
    let terms = coherent_series_terms(alpha_abs, tail_tol)?;
    table.check_len(terms + 1)?;
    let a = alpha_abs;
    let mut out = FGFunctions {
        f1: 0.0,
        f2: 0.0,
        f_plus: 0.0,
        f_minus: 0.0,
        g1: 0.0,
        g2: 0.0,
        g_plus: 0.0,
        g_minus: 0.0,
        h1: 0.0,
        k1: 0.0,
        alpha_abs,
        terms_used: terms,
    };
    for n in 0..terms {
        let p = if a == 0.0 { 1.0 } else { log_poisson(a, n).exp() };
        let nf = n as f64;
        let (fn_, fp, fnext) = (table.f(n), table.f_prev(n), table.f(n + 1));
        let (gn, gnext) = (table.g(n), table.g(n + 1));
        let r1 = a / (nf + 1.0).sqrt();
        let r2 = a * a / ((nf + 1.0) * (nf + 2.0)).sqrt();
        out.f1 += p * fn_ * r1;
        out.f2 += p * fn_ * fnext * r2;
        out.f_plus += p * 0.5 * (fn_ * fn_ + fp * fp);
        out.f_minus += p * 0.5 * (fn_ * fn_ - fp * fp);
        out.g1 += p * gn;
        out.g2 += p * gn * gn;
        out.g_plus += p * fn_ * (gn + gnext) * r1;
        out.g_minus += p * fn_ * (gn - gnext) * r1;
        out.h1 += p * (2.0 * nf + 1.0) * fn_ * r1;
        out.k1 += p * nf * gn;
    }
    Ok(out)
}

/// Coherent-state report from [`coherent_fg`] and the phase `φ = arg α`.
pub fn coherent_report(table: &RecurrenceTable, alpha: Complex64, tail_tol: f64) -> Result<ExpectationReport> {
    let fg = coherent_fg(table, alpha.norm(), tail_tol)?;
    Ok(report_from_fg(&fg, alpha.arg()))
}

pub fn report_from_fg(fg: &FGFunctions, phi: f64) -> ExpectationReport {
    let (sin, cos) = phi.sin_cos();
    let mean_n = fg.alpha_abs * fg.alpha_abs;
    let m = Moments {
        mean_c: fg.f1 * cos + fg.g1,
        mean_s: fg.f1 * sin + fg.g1,
        mean_c2: 0.5 * fg.f_plus + fg.g2 + 0.5 * fg.f2 * (cos * cos - sin * sin) + fg.g_plus * cos,
        mean_s2: 0.5 * fg.f_plus + fg.g2 - 0.5 * fg.f2 * (cos * cos - sin * sin) + fg.g_plus * sin,
        comm_cs: fg.f_minus - fg.g_minus * (cos + sin),
        acomm_cs: 2.0 * fg.g2 + 2.0 * fg.f2 * sin * cos + fg.g_plus * (cos + sin),
        comm_nc: -fg.f1 * sin,
        comm_ns: fg.f1 * cos,
        acomm_nc: fg.h1 * cos + 2.0 * fg.k1,
        acomm_ns: fg.h1 * sin + 2.0 * fg.k1,
        mean_n,
        var_n: mean_n,
    };
    ExpectationReport::from_moments(m)
}
