//! Self-contained complex linear algebra for the fitting pipeline.
//!
//! Dense row-major matrices over `Complex64`, Gaussian elimination with
//! partial pivoting, Householder least squares, generalized Vandermonde
//! assembly, and (in [`poly`]) Aberth-Ehrlich polynomial root finding.
//! Everything runs in double precision; the systems built by this crate are
//! small, tens of rows at most, so no blocking or pivot scaling is needed.

mod poly;

pub use poly::{roots, Polynomial};

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// Relative pivot threshold below which elimination reports a singular
/// matrix: pivots are compared against `1e-13 * max |a_ij|`.
const PIVOT_REL_TOL: f64 = 1e-13;

/// Relative threshold on the triangular factor's diagonal below which the
/// least-squares solver reports rank deficiency.
const RANK_REL_TOL: f64 = 1e-12;

/// Relative tolerance for the consistency check of rank-deficient systems.
const CONSISTENCY_REL_TOL: f64 = 1e-8;

/// Errors from matrix construction and the solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinalgError {
    /// A dimension is zero, or the entry count does not match `rows * cols`.
    InvalidDimensions,
    /// A matrix or vector entry is NaN or infinite.
    NonFiniteEntry,
    /// Operand shapes do not agree.
    DimensionMismatch,
    /// Elimination hit a pivot below the singularity threshold.
    SingularMatrix,
    /// The triangular factor's diagonal fell below the rank threshold.
    RankDeficient,
    /// Iteration did not converge within the iteration cap.
    NoConvergence,
    /// Vandermonde nodes must be nonzero.
    ZeroNode,
    /// Empty coefficient list, or the leading coefficient is zero.
    InvalidPolynomial,
    /// Root extraction needs a polynomial of degree at least one.
    DegreeTooSmall,
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            LinalgError::InvalidDimensions => "invalid matrix dimensions",
            LinalgError::NonFiniteEntry => "non-finite entry",
            LinalgError::DimensionMismatch => "operand dimensions do not match",
            LinalgError::SingularMatrix => "matrix is singular to working precision",
            LinalgError::RankDeficient => "matrix is rank-deficient to working precision",
            LinalgError::NoConvergence => "iteration did not converge",
            LinalgError::ZeroNode => "Vandermonde nodes must be nonzero",
            LinalgError::InvalidPolynomial => "invalid polynomial coefficients",
            LinalgError::DegreeTooSmall => "polynomial degree must be at least 1",
        };
        f.write_str(msg)
    }
}

impl core::error::Error for LinalgError {}

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Wraps row-major `entries`; both dimensions must be positive, the
    /// length must be `rows * cols`, and every entry must be finite.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(LinalgError::InvalidDimensions);
        }
        if entries.iter().any(|e| !is_finite(*e)) {
            return Err(LinalgError::NonFiniteEntry);
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Identity of order `n`; `n` must be positive.
    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "identity needs a positive order");
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            entries[i * n + i] = Complex64::new(1.0, 0.0);
        }
        Self {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at `(row, col)`; panics when out of bounds.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.entries[row * self.cols + col]
    }

    /// Matrix-vector product; panics when `x.len() != cols`.
    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|r| {
                let row = &self.entries[r * self.cols..(r + 1) * self.cols];
                row.iter().zip(x).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    fn max_abs_entry(&self) -> f64 {
        self.entries.iter().fold(0.0_f64, |m, e| m.max(e.norm()))
    }
}

fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

fn check_rhs(a: &ComplexMatrix, b: &[Complex64]) -> Result<(), LinalgError> {
    if b.len() != a.rows {
        return Err(LinalgError::DimensionMismatch);
    }
    if b.iter().any(|e| !is_finite(*e)) {
        return Err(LinalgError::NonFiniteEntry);
    }
    Ok(())
}

/// Solution of a square system together with the residual it achieves.
#[derive(Clone, Debug)]
pub struct LinearSolution {
    pub x: Vec<Complex64>,
    /// `max_i |(A x - b)_i|`, computed from the original operands.
    pub residual: f64,
}

/// Solves the square system `a x = b` by Gaussian elimination with partial
/// pivoting.
///
/// Reports [`LinalgError::SingularMatrix`] when a pivot falls below
/// `1e-13 * max |a_ij|`.
pub fn solve(a: &ComplexMatrix, b: &[Complex64]) -> Result<LinearSolution, LinalgError> {
    if a.rows != a.cols {
        return Err(LinalgError::DimensionMismatch);
    }
    check_rhs(a, b)?;

    let n = a.rows;
    let mut work = a.entries.clone();
    let mut rhs = b.to_vec();
    let scale = a.max_abs_entry();
    if scale == 0.0 {
        return Err(LinalgError::SingularMatrix);
    }
    let tol = PIVOT_REL_TOL * scale;

    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r, &s| {
                work[r * n + col]
                    .norm()
                    .total_cmp(&work[s * n + col].norm())
            })
            .expect("pivot range is nonempty");
        if work[pivot_row * n + col].norm() < tol {
            return Err(LinalgError::SingularMatrix);
        }
        if pivot_row != col {
            for j in 0..n {
                work.swap(col * n + j, pivot_row * n + j);
            }
            rhs.swap(col, pivot_row);
        }
        let pivot = work[col * n + col];
        for r in col + 1..n {
            let factor = work[r * n + col] / pivot;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in col..n {
                let sub = factor * work[col * n + j];
                work[r * n + j] -= sub;
            }
            let sub = factor * rhs[col];
            rhs[r] -= sub;
        }
    }

    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut acc = rhs[i];
        for j in i + 1..n {
            acc -= work[i * n + j] * x[j];
        }
        x[i] = acc / work[i * n + i];
    }

    let residual = a
        .mul_vec(&x)
        .iter()
        .zip(b)
        .fold(0.0_f64, |m, (ax, bi)| m.max((ax - bi).norm()));
    Ok(LinearSolution { x, residual })
}

/// Particular solution of a possibly singular but consistent square system.
///
/// Free variables are set to zero. An inconsistent system is reported as
/// [`LinalgError::SingularMatrix`].
pub(crate) fn solve_consistent(
    a: &ComplexMatrix,
    b: &[Complex64],
) -> Result<Vec<Complex64>, LinalgError> {
    if a.rows != a.cols {
        return Err(LinalgError::DimensionMismatch);
    }
    check_rhs(a, b)?;

    let n = a.rows;
    let mut work = a.entries.clone();
    let mut rhs = b.to_vec();
    let scale = a.max_abs_entry();
    let rhs_scale = b.iter().fold(0.0_f64, |m, e| m.max(e.norm()));
    let pivot_tol = PIVOT_REL_TOL * scale;
    let consistency_tol = CONSISTENCY_REL_TOL * scale.max(rhs_scale);

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == n {
            break;
        }
        let pivot_row = (row..n)
            .max_by(|&r, &s| {
                work[r * n + col]
                    .norm()
                    .total_cmp(&work[s * n + col].norm())
            })
            .expect("pivot range is nonempty");
        if work[pivot_row * n + col].norm() <= pivot_tol {
            continue;
        }
        if pivot_row != row {
            for j in 0..n {
                work.swap(row * n + j, pivot_row * n + j);
            }
            rhs.swap(row, pivot_row);
        }
        let pivot = work[row * n + col];
        for r in row + 1..n {
            let factor = work[r * n + col] / pivot;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in col..n {
                let sub = factor * work[row * n + j];
                work[r * n + j] -= sub;
            }
            let sub = factor * rhs[row];
            rhs[r] -= sub;
        }
        pivots.push((row, col));
        row += 1;
    }

    if rhs[row..n].iter().any(|v| v.norm() > consistency_tol) {
        return Err(LinalgError::SingularMatrix);
    }

    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for &(r, c) in pivots.iter().rev() {
        let mut acc = rhs[r];
        for j in c + 1..n {
            acc -= work[r * n + j] * x[j];
        }
        x[c] = acc / work[r * n + c];
    }
    Ok(x)
}

/// Solves the overdetermined (or square) full-rank system `a x ~ b` in the
/// least-squares sense via Householder QR.
///
/// Reports [`LinalgError::RankDeficient`] when a diagonal entry of the
/// triangular factor falls below `1e-12` times the largest initial column
/// norm. Normal equations are never formed.
pub fn least_squares(a: &ComplexMatrix, b: &[Complex64]) -> Result<Vec<Complex64>, LinalgError> {
    if a.rows < a.cols {
        return Err(LinalgError::DimensionMismatch);
    }
    check_rhs(a, b)?;

    let (m, n) = (a.rows, a.cols);
    let mut r = a.entries.clone();
    let mut qtb = b.to_vec();

    let mut max_col_norm = 0.0_f64;
    for k in 0..n {
        let norm_sqr: f64 = (0..m).map(|i| r[i * n + k].norm_sqr()).sum();
        max_col_norm = max_col_norm.max(norm_sqr.sqrt());
    }
    let thresh = RANK_REL_TOL * max_col_norm;

    let mut v = vec![Complex64::new(0.0, 0.0); m];
    for k in 0..n {
        let norm_sqr: f64 = (k..m).map(|i| r[i * n + k].norm_sqr()).sum();
        let norm = norm_sqr.sqrt();
        if norm <= thresh {
            return Err(LinalgError::RankDeficient);
        }

        // Reflect column k onto alpha * e_1 with alpha = -exp(i arg x_1) * |x|,
        // the sign choice that keeps v = x - alpha e_1 away from cancellation.
        let x1 = r[k * n + k];
        let phase = if x1 == Complex64::new(0.0, 0.0) {
            Complex64::new(1.0, 0.0)
        } else {
            x1 / x1.norm()
        };
        let alpha = -phase * norm;

        for i in k..m {
            v[i] = r[i * n + k];
        }
        v[k] -= alpha;
        let v_norm_sqr: f64 = (k..m).map(|i| v[i].norm_sqr()).sum();
        let beta = 2.0 / v_norm_sqr;

        for j in k..n {
            let mut w = Complex64::new(0.0, 0.0);
            for i in k..m {
                w += v[i].conj() * r[i * n + j];
            }
            w *= beta;
            for i in k..m {
                let sub = w * v[i];
                r[i * n + j] -= sub;
            }
        }
        let mut w = Complex64::new(0.0, 0.0);
        for i in k..m {
            w += v[i].conj() * qtb[i];
        }
        w *= beta;
        for i in k..m {
            let sub = w * v[i];
            qtb[i] -= sub;
        }
    }

    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut acc = qtb[i];
        for j in i + 1..n {
            acc -= r[i * n + j] * x[j];
        }
        x[i] = acc / r[i * n + i];
    }
    Ok(x)
}

/// Generalized Vandermonde matrix: entry `(i, k)` is `nodes[k]` raised to the
/// real power `powers[i]`, through the principal logarithm. This matches how
/// exponential models are evaluated, so `V c` stacks the model values at the
/// powers' sample positions.
pub fn vandermonde(nodes: &[Complex64], powers: &[f64]) -> Result<ComplexMatrix, LinalgError> {
    if nodes.is_empty() || powers.is_empty() {
        return Err(LinalgError::InvalidDimensions);
    }
    if nodes.iter().any(|z| !is_finite(*z)) || powers.iter().any(|t| !t.is_finite()) {
        return Err(LinalgError::NonFiniteEntry);
    }
    if nodes.iter().any(|z| z.norm_sqr() == 0.0) {
        return Err(LinalgError::ZeroNode);
    }
    let mut entries = Vec::with_capacity(nodes.len() * powers.len());
    for &t in powers {
        for &z in nodes {
            entries.push((z.ln() * t).exp());
        }
    }
    ComplexMatrix::new(powers.len(), nodes.len(), entries)
}
