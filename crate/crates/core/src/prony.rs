//! Exponential-sum models and Prony-type fitting.
//!
//! A model is a finite sum `x(t) = sum_k c_k * exp(s_k * t)` with complex
//! amplitudes `c_k` and pairwise distinct complex exponents `s_k`. Given `N`
//! unit-spaced samples and an order `p`, the classical construction runs in
//! three linear-algebra stages:
//!
//! 1. linear prediction: solve for recurrence coefficients `a_j` with
//!    `x_{k+p} = a_0 x_k + ... + a_{p-1} x_{k+p-1}`;
//! 2. characteristic roots: the roots `z_k` of
//!    `z^p - a_{p-1} z^{p-1} - ... - a_0` give the exponents through the
//!    principal logarithm, `s_k = ln z_k`;
//! 3. amplitudes: solve the Vandermonde system `x_{t_i} = sum_k c_k z_k^{t_i}`.
//!
//! `N = 2p` interpolates the samples exactly; `N > 2p` makes stages 1 and 3
//! least-squares problems. Real input data gives a model that is conjugate
//! symmetric up to rounding; [`conjugate_symmetrize`] makes the symmetry
//! exact so that evaluation is real up to cancellation noise.

use crate::linalg::{self, ComplexMatrix, LinalgError, Polynomial};
use crate::series::TimeSeries;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// Sampling step of the model's time variable. Fits require the abscissas
/// to advance by exactly this step (up to [`SPACING_TOL`]).
const DT: f64 = 1.0;

/// Tolerance on `t_{i+1} - t_i - DT`.
const SPACING_TOL: f64 = 1e-9;

/// Characteristic roots closer than this are treated as confluent.
const ROOT_SEPARATION_TOL: f64 = 1e-10;

/// Two model exponents may not coincide within this distance.
const EXPONENT_DISTINCT_TOL: f64 = 1e-12;

/// Relative tolerance for real snapping and conjugate pairing.
const SYMMETRY_REL_TOL: f64 = 1e-6;

/// One model term `amplitude * exp(exponent * t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpTerm {
    pub amplitude: Complex64,
    pub exponent: Complex64,
}

impl ExpTerm {
    pub fn new(amplitude: Complex64, exponent: Complex64) -> Self {
        Self {
            amplitude,
            exponent,
        }
    }

    /// This term's value at `t`.
    pub fn eval(&self, t: f64) -> Complex64 {
        self.amplitude * (self.exponent * t).exp()
    }

    fn is_finite(&self) -> bool {
        self.amplitude.re.is_finite()
            && self.amplitude.im.is_finite()
            && self.exponent.re.is_finite()
            && self.exponent.im.is_finite()
    }
}

/// How the sample count relates to the model order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitMode {
    /// Interpolate: the series length must equal `2 * terms`.
    Exact,
    /// Approximate: the series length must be at least `2 * terms`, and both
    /// the prediction and amplitude stages minimize the 2-norm residual.
    LeastSquares,
}

/// Options for [`fit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FitOptions {
    /// Number of exponential terms `p`; must be at least 1.
    pub terms: usize,
    pub mode: FitMode,
    /// Enforce exact conjugate symmetry on the fitted terms. On by default;
    /// real-valued inputs then evaluate to real values up to rounding.
    pub symmetrize: bool,
}

impl FitOptions {
    pub fn exact(terms: usize) -> Self {
        Self {
            terms,
            mode: FitMode::Exact,
            symmetrize: true,
        }
    }

    pub fn least_squares(terms: usize) -> Self {
        Self {
            terms,
            mode: FitMode::LeastSquares,
            symmetrize: true,
        }
    }
}

/// Fit and model-construction failures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitError {
    /// The model order must be at least 1.
    InvalidOrder,
    /// Fewer samples than the order requires.
    TooFewSamples { len: usize, needed: usize },
    /// Exact interpolation needs exactly `needed = 2 * terms` samples.
    ExactLengthMismatch { len: usize, needed: usize },
    /// Abscissas are not unit-spaced at `index`.
    NodeMismatch { index: usize },
    /// The linear-prediction system has no solution.
    SingularPredictionSystem,
    /// A characteristic root is zero, so its logarithm is undefined.
    ZeroRoot,
    /// Two characteristic roots nearly coincide; confluent exponentials are
    /// not representable in this model class.
    RepeatedRoot,
    /// Root iteration did not converge.
    NoConvergence,
    /// The amplitude system is rank-deficient or could not be assembled.
    AmplitudeSystem,
    /// The term at `index` has no conjugate partner within tolerance.
    UnpairedTerm { index: usize },
    /// Models need at least one term.
    EmptyModel,
    /// A term's amplitude or exponent is not finite.
    NonFiniteTerm,
    /// Two exponents coincide within 1e-12.
    DuplicateExponent,
}

impl fmt::Display for FitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitError::InvalidOrder => write!(f, "model order must be at least 1"),
            FitError::TooFewSamples { len, needed } => {
                write!(
                    f,
                    "series has {len} samples but the order needs at least {needed}"
                )
            }
            FitError::ExactLengthMismatch { len, needed } => {
                write!(
                    f,
                    "exact interpolation needs exactly {needed} samples, got {len}"
                )
            }
            FitError::NodeMismatch { index } => {
                write!(f, "abscissas must advance by 1 (violated at point {index})")
            }
            FitError::SingularPredictionSystem => {
                write!(f, "linear-prediction system has no solution")
            }
            FitError::ZeroRoot => write!(f, "characteristic root at zero has no logarithm"),
            FitError::RepeatedRoot => write!(f, "characteristic roots are not distinct"),
            FitError::NoConvergence => write!(f, "root iteration did not converge"),
            FitError::AmplitudeSystem => write!(f, "amplitude system could not be solved"),
            FitError::UnpairedTerm { index } => {
                write!(f, "term {index} has no conjugate partner within tolerance")
            }
            FitError::EmptyModel => write!(f, "model needs at least one term"),
            FitError::NonFiniteTerm => write!(f, "term has non-finite amplitude or exponent"),
            FitError::DuplicateExponent => write!(f, "model exponents must be pairwise distinct"),
        }
    }
}

impl core::error::Error for FitError {}

/// Sum of exponential terms in canonical order: ascending imaginary part of
/// the exponent, ties broken by ascending real part.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentialModel {
    terms: Vec<ExpTerm>,
    dt: f64,
}

impl ExponentialModel {
    /// Sorts `terms` canonically and validates them: at least one term, all
    /// components finite, no two exponents within 1e-12 of each other.
    pub fn new(terms: Vec<ExpTerm>) -> Result<Self, FitError> {
        if terms.is_empty() {
            return Err(FitError::EmptyModel);
        }
        if terms.iter().any(|t| !t.is_finite()) {
            return Err(FitError::NonFiniteTerm);
        }
        let mut terms = terms;
        terms.sort_by(|a, b| {
            a.exponent
                .im
                .total_cmp(&b.exponent.im)
                .then(a.exponent.re.total_cmp(&b.exponent.re))
        });
        for i in 0..terms.len() {
            for j in i + 1..terms.len() {
                if (terms[i].exponent - terms[j].exponent).norm() <= EXPONENT_DISTINCT_TOL {
                    return Err(FitError::DuplicateExponent);
                }
            }
        }
        Ok(Self { terms, dt: DT })
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    /// Sampling step the model was fitted against.
    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Model value at `t`, summed in canonical term order.
    pub fn evaluate(&self, t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for term in &self.terms {
            acc += term.eval(t);
        }
        acc
    }

    /// Real part at `t`, alongside the magnitude of the imaginary remainder
    /// as a conjugate-symmetry diagnostic.
    pub fn evaluate_real(&self, t: f64) -> (f64, f64) {
        let value = self.evaluate(t);
        (value.re, value.im.abs())
    }
}

/// Recurrence coefficients `a_0 .. a_{p-1}` of the best linear prediction
/// `x_{k+p} ~ a_0 x_k + ... + a_{p-1} x_{k+p-1}` over the series ordinates.
///
/// The stacked system has `N - p` rows: square (solved exactly) when
/// `N = 2p`, overdetermined (least squares) when `N > 2p`. Rank-deficient
/// but consistent systems, a constant series for instance, fall back to a
/// particular solution with free coefficients set to zero.
pub fn linear_prediction(series: &TimeSeries, p: usize) -> Result<Vec<Complex64>, FitError> {
    if p == 0 {
        return Err(FitError::InvalidOrder);
    }
    let y = series.ordinates();
    let n = y.len();
    if n < 2 * p {
        return Err(FitError::TooFewSamples {
            len: n,
            needed: 2 * p,
        });
    }

    let rows = n - p;
    let mut entries = Vec::with_capacity(rows * p);
    for k in 0..rows {
        for j in 0..p {
            entries.push(Complex64::new(y[k + j], 0.0));
        }
    }
    let a = ComplexMatrix::new(rows, p, entries).expect("series ordinates are finite");
    let b: Vec<Complex64> = y[p..].iter().map(|&v| Complex64::new(v, 0.0)).collect();

    if rows == p {
        match linalg::solve(&a, &b) {
            Ok(sol) => Ok(sol.x),
            Err(LinalgError::SingularMatrix) => {
                // Singular but possibly consistent (low-order structure in
                // the data); take any exact solution or report failure.
                linalg::solve_consistent(&a, &b).map_err(|_| FitError::SingularPredictionSystem)
            }
            Err(_) => Err(FitError::SingularPredictionSystem),
        }
    } else {
        match linalg::least_squares(&a, &b) {
            Ok(x) => Ok(x),
            Err(LinalgError::RankDeficient) => {
                // The normal equations of a least-squares problem are always
                // consistent, so a particular solution exists.
                let (ata, atb) = normal_equations(&a, &b);
                linalg::solve_consistent(&ata, &atb).map_err(|_| FitError::SingularPredictionSystem)
            }
            Err(_) => Err(FitError::SingularPredictionSystem),
        }
    }
}

fn normal_equations(a: &ComplexMatrix, b: &[Complex64]) -> (ComplexMatrix, Vec<Complex64>) {
    let (m, n) = (a.rows(), a.cols());
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..m {
                acc += a.get(k, i).conj() * a.get(k, j);
            }
            entries[i * n + j] = acc;
        }
    }
    let ata = ComplexMatrix::new(n, n, entries).expect("products of finite entries are finite");
    let atb = (0..n)
        .map(|i| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, rhs) in b.iter().enumerate() {
                acc += a.get(k, i).conj() * rhs;
            }
            acc
        })
        .collect();
    (ata, atb)
}

/// Fits an exponential-sum model of order `options.terms` to a unit-spaced
/// series.
///
/// Runs the full pipeline: linear prediction, characteristic-root
/// extraction, principal-logarithm exponents, and the Vandermonde amplitude
/// solve; with `options.symmetrize` the terms are conjugate-symmetrized
/// afterwards. In exact mode the model interpolates all `2p` samples up to
/// conditioning; in least-squares mode it minimizes the stage-wise 2-norm
/// residuals.
pub fn fit(series: &TimeSeries, options: &FitOptions) -> Result<ExponentialModel, FitError> {
    let p = options.terms;
    if p == 0 {
        return Err(FitError::InvalidOrder);
    }
    let n = series.len();
    match options.mode {
        FitMode::Exact if n != 2 * p => {
            return Err(FitError::ExactLengthMismatch {
                len: n,
                needed: 2 * p,
            });
        }
        FitMode::LeastSquares if n < 2 * p => {
            return Err(FitError::TooFewSamples {
                len: n,
                needed: 2 * p,
            });
        }
        _ => {}
    }
    let t = series.abscissas();
    for index in 1..n {
        if (t[index] - t[index - 1] - DT).abs() > SPACING_TOL {
            return Err(FitError::NodeMismatch { index });
        }
    }

    let prediction = linear_prediction(series, p)?;

    // Characteristic polynomial z^p - a_{p-1} z^{p-1} - ... - a_0.
    let mut char_coeffs: Vec<Complex64> = prediction.iter().map(|&a| -a).collect();
    char_coeffs.push(Complex64::new(1.0, 0.0));
    let char_poly = match Polynomial::new(char_coeffs) {
        Ok(p) => p,
        Err(_) => return Err(FitError::SingularPredictionSystem),
    };
    let roots = linalg::roots(&char_poly).map_err(|err| match err {
        LinalgError::NonFiniteEntry => FitError::SingularPredictionSystem,
        _ => FitError::NoConvergence,
    })?;

    if roots.iter().any(|z| *z == Complex64::new(0.0, 0.0)) {
        return Err(FitError::ZeroRoot);
    }
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if (roots[i] - roots[j]).norm() <= ROOT_SEPARATION_TOL {
                return Err(FitError::RepeatedRoot);
            }
        }
    }

    let exponents: Vec<Complex64> = roots.iter().map(|z| z.ln() / DT).collect();

    let vand = linalg::vandermonde(&roots, &t).map_err(|_| FitError::AmplitudeSystem)?;
    let rhs: Vec<Complex64> = series
        .ordinates()
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    let amplitudes = linalg::least_squares(&vand, &rhs).map_err(|_| FitError::AmplitudeSystem)?;

    let mut terms: Vec<ExpTerm> = amplitudes
        .into_iter()
        .zip(exponents)
        .map(|(amplitude, exponent)| ExpTerm::new(amplitude, exponent))
        .collect();
    if options.symmetrize {
        terms = symmetrize_terms(terms)?;
    }
    ExponentialModel::new(terms)
}

/// Enforces exact conjugate symmetry on a model's terms.
///
/// Terms whose exponent and amplitude are within `1e-6` (relative) of real
/// are snapped to real; every remaining term is paired with its best
/// conjugate partner, and each pair is replaced by exact conjugates of the
/// pair average. A leftover term at the Nyquist frequency (exponent within
/// tolerance of `Re s + i pi`, i.e. a real negative characteristic root) is
/// self-conjugate and snapped onto the axis. Any other term with no partner
/// within tolerance is an error.
pub fn conjugate_symmetrize(model: &ExponentialModel) -> Result<ExponentialModel, FitError> {
    let terms = symmetrize_terms(model.terms.clone())?;
    ExponentialModel::new(terms)
}

fn symmetrize_terms(terms: Vec<ExpTerm>) -> Result<Vec<ExpTerm>, FitError> {
    let exp_scale = terms
        .iter()
        .map(|t| t.exponent.norm())
        .fold(1.0_f64, f64::max);
    let amp_scale = terms
        .iter()
        .map(|t| t.amplitude.norm())
        .fold(0.0_f64, f64::max);
    let exp_tol = SYMMETRY_REL_TOL * exp_scale;
    let amp_tol = SYMMETRY_REL_TOL * amp_scale;

    let n = terms.len();
    let mut used = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        if used[i] {
            continue;
        }
        used[i] = true;
        let term = terms[i];

        if term.exponent.im.abs() <= exp_tol && term.amplitude.im.abs() <= amp_tol {
            out.push(ExpTerm::new(
                Complex64::new(term.amplitude.re, 0.0),
                Complex64::new(term.exponent.re, 0.0),
            ));
            continue;
        }

        let mut best: Option<(usize, f64)> = None;
        for j in i + 1..n {
            if used[j] {
                continue;
            }
            let exp_dist = (terms[j].exponent - term.exponent.conj()).norm();
            let amp_dist = (terms[j].amplitude - term.amplitude.conj()).norm();
            if exp_dist <= exp_tol && amp_dist <= amp_tol {
                let score = exp_dist / exp_scale + amp_dist / amp_scale.max(f64::MIN_POSITIVE);
                if best.is_none_or(|(_, s)| score < s) {
                    best = Some((j, score));
                }
            }
        }
        let Some((j, _)) = best else {
            // A negative real characteristic root lands at Im s = ±pi under
            // the principal log and has no partner, but the root is its own
            // conjugate. Snap it onto the axis instead of failing; its
            // contribution at unit-spaced nodes is the real alternating
            // sequence c (-r)^t.
            if (term.exponent.im.abs() - PI).abs() <= exp_tol && term.amplitude.im.abs() <= amp_tol
            {
                out.push(ExpTerm::new(
                    Complex64::new(term.amplitude.re, 0.0),
                    Complex64::new(term.exponent.re, PI),
                ));
                continue;
            }
            return Err(FitError::UnpairedTerm { index: i });
        };
        used[j] = true;

        let exponent = (term.exponent + terms[j].exponent.conj()) * 0.5;
        let amplitude = (term.amplitude + terms[j].amplitude.conj()) * 0.5;
        out.push(ExpTerm::new(amplitude, exponent));
        out.push(ExpTerm::new(amplitude.conj(), exponent.conj()));
    }
    Ok(out)
}
