//! Truncated Fock-basis matrices of the cosine, sine, shift, inverse
//! trigonometric and unitary phase operators.
//!
//! For a recurrence table `{f_n}, {g_n}`:
//!
//! ```text
//! Ĉ = Σ (f_n/2)(|n⟩⟨n+1| + |n+1⟩⟨n|) + g_n |n⟩⟨n|
//! Ŝ = Σ (f_n/2i)(|n⟩⟨n+1| − |n+1⟩⟨n|) + g_n |n⟩⟨n|
//! Ê = Σ f_n |n⟩⟨n+1|,  Ê₀ = Σ g_n |n⟩⟨n|
//! ```
//!
//! Truncating to `N` levels keeps every matrix entry exact, so linear
//! identities (`Ĉ = (Ê+Ê†)/2 + Ê₀`, the `N̂` commutators, the rotation
//! `Ŝ = D Ĉ D†`) hold to round-off. Products are only exact away from the
//! last rows; each operator therefore carries a boundary margin that
//! [`crate::states::expect`] compares against the state's support.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::families::RecurrenceTable;
use crate::format::fmt_g;
use crate::tridiag::tridiagonal_eigen;

pub const DEFAULT_DIM: usize = 64;

/// Boundary rows required by any operator built from a matrix product.
pub const PRODUCT_MARGIN: usize = 2;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpLabel {
    C,
    S,
    E,
    Edag,
    E0,
    ThetaC,
    ThetaS,
    Uc,
    Us,
    Number,
    Identity,
    Derived,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    label: OpLabel,
    entries: DMatrix<Complex64>,
    margin: usize,
}

impl TruncatedOperator {
    pub fn new(label: OpLabel, entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch(entries.nrows(), entries.ncols()));
        }
        Ok(TruncatedOperator { label, entries, margin: 0 })
    }

    fn with_margin(label: OpLabel, entries: DMatrix<Complex64>, margin: usize) -> Self {
        let margin = margin.min(entries.nrows());
        TruncatedOperator { label, entries, margin }
    }

    pub fn identity(dim: usize) -> Self {
        Self::with_margin(OpLabel::Identity, DMatrix::identity(dim, dim), 0)
    }

    /// `N̂ = diag(0, 1, ..., N-1)`.
    pub fn number(dim: usize) -> Self {
        let diag = nalgebra::DVector::from_fn(dim, |n, _| Complex64::new(n as f64, 0.0));
        Self::with_margin(OpLabel::Number, DMatrix::from_diagonal(&diag), 0)
    }

    pub fn zeros(dim: usize) -> Self {
        Self::with_margin(OpLabel::Derived, DMatrix::zeros(dim, dim), 0)
    }

    /// `diag(iⁿ)` for `sign = +1`, `diag((−i)ⁿ)` for `sign = −1`; the
    /// quarter-turn rotations `exp(±i π N̂ / 2)`.
    pub fn quarter_turn(dim: usize, sign: i32) -> Self {
        let diag = nalgebra::DVector::from_fn(dim, |n, _| i_power(sign * n as i32));
        Self::with_margin(OpLabel::Derived, DMatrix::from_diagonal(&diag), 0)
    }

    pub fn label(&self) -> OpLabel {
        self.label
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    /// Number of trailing rows/columns that are not exact images of the
    /// infinite-dimensional operator.
    pub fn margin(&self) -> usize {
        self.margin
    }

    pub fn relabel(mut self, label: OpLabel) -> Self {
        self.label = label;
        self
    }

    /// `max |A_jk − conj(A_kj)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for j in 0..n {
            for k in j..n {
                worst = worst.max((self.entries[(j, k)] - self.entries[(k, j)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_dim(other)?;
        Ok(max_norm(&(&self.entries - &other.entries)))
    }

    /// Largest entrywise deviation restricted to rows and columns `0..rows`.
    pub fn max_abs_diff_block(&self, other: &Self, rows: usize) -> Result<f64> {
        self.check_dim(other)?;
        let rows = rows.min(self.dim());
        let mut worst = 0.0f64;
        for j in 0..rows {
            for k in 0..rows {
                worst = worst.max((self.entries[(j, k)] - other.entries[(j, k)]).norm());
            }
        }
        Ok(worst)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.dim(), other.dim()))
        }
    }

    pub fn adjoint(&self) -> Self {
        let label = match self.label {
            OpLabel::E => OpLabel::Edag,
            OpLabel::Edag => OpLabel::E,
            OpLabel::C | OpLabel::S | OpLabel::E0 | OpLabel::ThetaC | OpLabel::ThetaS => self.label,
            OpLabel::Number | OpLabel::Identity => self.label,
            _ => OpLabel::Derived,
        };
        Self::with_margin(label, self.entries.adjoint(), self.margin)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let margin = self.margin.max(other.margin) + PRODUCT_MARGIN;
        Ok(Self::with_margin(OpLabel::Derived, &self.entries * &other.entries, margin))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::with_margin(
            OpLabel::Derived,
            &self.entries + &other.entries,
            self.margin.max(other.margin),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::with_margin(
            OpLabel::Derived,
            &self.entries - &other.entries,
            self.margin.max(other.margin),
        ))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::with_margin(OpLabel::Derived, &self.entries * factor, self.margin)
    }

    /// Matrix dump: header `row,col,re,im`, row-major, `%.17g` floats.
    pub fn to_csv(&self) -> String {
        let n = self.dim();
        let mut out = String::with_capacity(n * n * 48 + 16);
        out.push_str("row,col,re,im\n");
        for r in 0..n {
            for c in 0..n {
                let z = self.entries[(r, c)];
                let _ = writeln!(out, "{r},{c},{},{}", fmt_g(z.re, 17), fmt_g(z.im, 17));
            }
        }
        out
    }
}

fn max_norm(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

/// `iᵏ` as an exact unit.
fn i_power(k: i32) -> Complex64 {
    match k.rem_euclid(4) {
        0 => ONE,
        1 => I,
        2 => -ONE,
        _ => -I,
    }
}

/// `[A, B]₋ = AB − BA`.
pub fn commutator(a: &TruncatedOperator, b: &TruncatedOperator) -> Result<TruncatedOperator> {
    a.matmul(b)?.sub(&b.matmul(a)?)
}

/// `[A, B]₊ = AB + BA`.
pub fn anticommutator(a: &TruncatedOperator, b: &TruncatedOperator) -> Result<TruncatedOperator> {
    a.matmul(b)?.add(&b.matmul(a)?)
}

pub fn build_cosine(table: &RecurrenceTable, dim: usize) -> Result<TruncatedOperator> {
    check_table(table, dim)?;
    let mut m = DMatrix::from_element(dim, dim, ZERO);
    for n in 0..dim {
        m[(n, n)] = Complex64::new(table.g(n), 0.0);
        if n + 1 < dim {
            let half = Complex64::new(0.5 * table.f(n), 0.0);
            m[(n, n + 1)] = half;
            m[(n + 1, n)] = half;
        }
    }
    Ok(TruncatedOperator::with_margin(OpLabel::C, m, 0))
}

pub fn build_sine(table: &RecurrenceTable, dim: usize) -> Result<TruncatedOperator> {
    check_table(table, dim)?;
    let mut m = DMatrix::from_element(dim, dim, ZERO);
    for n in 0..dim {
        m[(n, n)] = Complex64::new(table.g(n), 0.0);
        if n + 1 < dim {
            m[(n, n + 1)] = Complex64::new(0.0, -0.5 * table.f(n));
            m[(n + 1, n)] = Complex64::new(0.0, 0.5 * table.f(n));
        }
    }
    Ok(TruncatedOperator::with_margin(OpLabel::S, m, 0))
}

/// `(Ê, Ê†, Ê₀)`: lowering part with `f_n` on the superdiagonal, its
/// adjoint, and the diagonal part `g_n`.
pub fn shift_ops(
    table: &RecurrenceTable,
    dim: usize,
) -> Result<(TruncatedOperator, TruncatedOperator, TruncatedOperator)> {
    check_table(table, dim)?;
    let mut e = DMatrix::from_element(dim, dim, ZERO);
    let mut e0 = DMatrix::from_element(dim, dim, ZERO);
    for n in 0..dim {
        e0[(n, n)] = Complex64::new(table.g(n), 0.0);
        if n + 1 < dim {
            e[(n, n + 1)] = Complex64::new(table.f(n), 0.0);
        }
    }
    let edag = e.adjoint();
    Ok((
        TruncatedOperator::with_margin(OpLabel::E, e, 0),
        TruncatedOperator::with_margin(OpLabel::Edag, edag, 0),
        TruncatedOperator::with_margin(OpLabel::E0, e0, 0),
    ))
}

fn check_table(table: &RecurrenceTable, dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::ParameterOutOfRange("dimension must be positive".into()));
    }
    table.check_len(dim)
}

/// Ascending eigenvalues with orthonormal eigenvectors as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
}

impl Spectrum {
    /// `V f(Λ) V†`.
    pub fn apply<F: Fn(f64) -> Complex64>(&self, f: F) -> DMatrix<Complex64> {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (c, &v) in self.values.iter().enumerate() {
            let fv = f(v);
            for r in 0..n {
                scaled[(r, c)] *= fv;
            }
        }
        scaled * self.vectors.adjoint()
    }

    pub fn reconstruct(&self) -> DMatrix<Complex64> {
        self.apply(|v| Complex64::new(v, 0.0))
    }
}

const HERMITIAN_TOL: f64 = 1e-12;

/// Eigen-decomposition of a Hermitian operator.
///
/// Real symmetric tridiagonal matrices (Ĉ) go through the implicit QL
/// solver. Matrices that become real tridiagonal after the quarter-turn
/// `D† A D`, `D = diag(iⁿ)` (Ŝ), are solved in that frame and rotated back.
/// Anything else uses a dense Hermitian solver.
pub fn eigendecompose(op: &TruncatedOperator) -> Result<Spectrum> {
    let dev = op.hermitian_deviation();
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    if let Some((diag, off)) = real_tridiagonal(op, 0) {
        let (values, v) = tridiagonal_eigen(&diag, &off)?;
        return Ok(Spectrum { values, vectors: v.map(|x| Complex64::new(x, 0.0)) });
    }
    if let Some((diag, off)) = real_tridiagonal(op, 1) {
        let (values, v) = tridiagonal_eigen(&diag, &off)?;
        let n = op.dim();
        let vectors = DMatrix::from_fn(n, n, |r, c| i_power(r as i32) * v[(r, c)]);
        return Ok(Spectrum { values, vectors });
    }
    dense_hermitian_eigen(op)
}

/// Diagonal and off-diagonal of `D^{-k} A D^{k}` (D = diag(iⁿ)) when that
/// matrix is real symmetric tridiagonal.
fn real_tridiagonal(op: &TruncatedOperator, k: i32) -> Option<(Vec<f64>, Vec<f64>)> {
    let n = op.dim();
    let a = &op.entries;
    for r in 0..n {
        for c in 0..n {
            if r.abs_diff(c) > 1 && a[(r, c)] != ZERO {
                return None;
            }
        }
    }
    let rotated = |r: usize, c: usize| i_power(k * (c as i32 - r as i32)) * a[(r, c)];
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for r in 0..n {
        let z = rotated(r, r);
        if z.im.abs() > 1e-15 {
            return None;
        }
        diag.push(z.re);
        if r + 1 < n {
            let up = rotated(r, r + 1);
            let down = rotated(r + 1, r);
            if up.im.abs() > 1e-15 || down.im.abs() > 1e-15 {
                return None;
            }
            off.push(0.5 * (up.re + down.re));
        }
    }
    Some((diag, off))
}

fn dense_hermitian_eigen(op: &TruncatedOperator) -> Result<Spectrum> {
    let n = op.dim();
    let sym = (&op.entries + op.entries.adjoint()) * Complex64::new(0.5, 0.0);
    let max_iter = 200 * n.max(1);
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, max_iter).ok_or(Error::ConvergenceFailure(max_iter))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]).then(a.cmp(&b)));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::from_element(n, n, ZERO);
    for (col, &src) in order.iter().enumerate() {
        let mut v = eig.eigenvectors.column(src).into_owned();
        if let Some(first) = v.iter().copied().find(|z| z.norm() > 1e-12) {
            let phase = first.conj() / first.norm();
            v *= phase;
        }
        vectors.set_column(col, &v);
    }
    Ok(Spectrum { values, vectors })
}

/// `f(A)` for Hermitian `A` and real-valued `f`, via the spectral
/// decomposition. The result is Hermitian by construction.
pub fn spectral_map<F: Fn(f64) -> f64>(
    op: &TruncatedOperator,
    f: F,
    label: OpLabel,
) -> Result<TruncatedOperator> {
    let spectrum = eigendecompose(op)?;
    Ok(hermitian_from_spectrum(&spectrum, f, label))
}

fn hermitian_from_spectrum<F: Fn(f64) -> f64>(spectrum: &Spectrum, f: F, label: OpLabel) -> TruncatedOperator {
    let m = spectrum.apply(|v| Complex64::new(f(v), 0.0));
    let sym = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    TruncatedOperator::with_margin(label, sym, 0)
}

fn check_unit_spectrum(spectrum: &Spectrum) -> Result<()> {
    match spectrum.values.iter().find(|v| v.abs() >= 1.0) {
        Some(&v) => Err(Error::SpectrumOutOfRange(v)),
        None => Ok(()),
    }
}

/// `Θ̂_c = arccos Ĉ`, eigenvalues in `(0, π)`.
pub fn arccos_op(c: &TruncatedOperator) -> Result<TruncatedOperator> {
    let spectrum = eigendecompose(c)?;
    check_unit_spectrum(&spectrum)?;
    Ok(hermitian_from_spectrum(&spectrum, f64::acos, OpLabel::ThetaC))
}

/// `Θ̂_s = arcsin Ŝ`, eigenvalues in `(−π/2, π/2)`.
pub fn arcsin_op(s: &TruncatedOperator) -> Result<TruncatedOperator> {
    let spectrum = eigendecompose(s)?;
    check_unit_spectrum(&spectrum)?;
    Ok(hermitian_from_spectrum(&spectrum, f64::asin, OpLabel::ThetaS))
}

/// A truncated power series together with the size of its last term.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesResult {
    pub operator: TruncatedOperator,
    pub residual: f64,
}

/// `Σ_{k<K} binom(2k,k) / (4ᵏ (2k+1)) A^{2k+1}`, the Maclaurin series of
/// `arcsin`. The residual is the max-entry size of the last term.
fn arcsin_power_series(a: &TruncatedOperator, terms: usize) -> Result<(DMatrix<Complex64>, f64)> {
    if terms == 0 {
        return Err(Error::ParameterOutOfRange("series needs at least one term".into()));
    }
    let spectrum = eigendecompose(a)?;
    check_unit_spectrum(&spectrum)?;
    let square = &a.entries * &a.entries;
    let mut power = a.entries.clone();
    let mut coeff = 1.0f64;
    let mut sum = DMatrix::from_element(a.dim(), a.dim(), ZERO);
    let mut residual = 0.0;
    for k in 0..terms {
        let term = &power * Complex64::new(coeff / (2 * k + 1) as f64, 0.0);
        residual = max_norm(&term);
        sum += term;
        power = &power * &square;
        coeff *= (2 * k + 1) as f64 / (2 * k + 2) as f64;
    }
    Ok((sum, residual))
}

/// `(π/2) I − Σ_{k<K} binom(2k,k)/(4ᵏ(2k+1)) Ĉ^{2k+1}`.
pub fn arccos_series(c: &TruncatedOperator, terms: usize) -> Result<SeriesResult> {
    let (sum, residual) = arcsin_power_series(c, terms)?;
    let n = c.dim();
    let m = DMatrix::<Complex64>::identity(n, n) * Complex64::new(FRAC_PI_2, 0.0) - sum;
    Ok(SeriesResult { operator: TruncatedOperator::with_margin(OpLabel::ThetaC, m, n), residual })
}

/// `Σ_{k<K} binom(2k,k)/(4ᵏ(2k+1)) Ŝ^{2k+1}`.
pub fn arcsin_series(s: &TruncatedOperator, terms: usize) -> Result<SeriesResult> {
    let (sum, residual) = arcsin_power_series(s, terms)?;
    let n = s.dim();
    Ok(SeriesResult { operator: TruncatedOperator::with_margin(OpLabel::ThetaS, sum, n), residual })
}

/// `exp(iΘ)` for Hermitian `Θ`.
pub fn unitary_exp(theta: &TruncatedOperator) -> Result<TruncatedOperator> {
    let spectrum = eigendecompose(theta)?;
    let label = match theta.label {
        OpLabel::ThetaC => OpLabel::Uc,
        OpLabel::ThetaS => OpLabel::Us,
        _ => OpLabel::Derived,
    };
    let m = spectrum.apply(|v| Complex64::from_polar(1.0, v));
    Ok(TruncatedOperator::with_margin(label, m, 0))
}
