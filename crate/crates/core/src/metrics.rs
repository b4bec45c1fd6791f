//! Residual reports and loss functionals.
//!
//! Residuals are always real: the model's real part is compared against the
//! observed ordinates, while the imaginary remainder is tracked separately
//! as a conjugate-symmetry diagnostic. The loss functions themselves are
//! plain functionals on a residual vector, so they can also be applied to
//! residuals from any other source.

use crate::prony::ExponentialModel;
use crate::series::TimeSeries;
use alloc::vec::Vec;
use core::fmt;
#[allow(unused_imports)]
use num_traits::Float;

/// Default zero tolerance of [`LossKind::RobustCount`], relative to the
/// largest observed ordinate magnitude.
const ROBUST_ZERO_REL_TOL: f64 = 1e-9;

/// Identifies a loss functional, independent of its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LossKind {
    /// Largest absolute residual.
    Chebyshev,
    /// Number of residuals exceeding a zero tolerance.
    RobustCount,
    /// `(sum |r|^p)^(1/p)` for a positive exponent `p`.
    Lp,
    /// Sum of absolute residuals.
    L1,
    /// Sum of squared residuals.
    LeastSquares,
    /// Weighted sum of squared residuals with weights applied as `w^2 r^2`.
    WeightedLeastSquares,
}

impl LossKind {
    /// Stable identifier used in reports and serialized output.
    pub fn name(&self) -> &'static str {
        match self {
            LossKind::Chebyshev => "chebyshev",
            LossKind::RobustCount => "robust_count",
            LossKind::Lp => "lp",
            LossKind::L1 => "l1",
            LossKind::LeastSquares => "ls",
            LossKind::WeightedLeastSquares => "wls",
        }
    }
}

impl fmt::Display for LossKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A loss functional together with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum LossSpec {
    Chebyshev,
    /// Counts residuals with `|r| > zero_tolerance`.
    RobustCount {
        zero_tolerance: f64,
    },
    /// `(sum |r|^exponent)^(1/exponent)`; the exponent must be positive and
    /// finite (an exponent of zero is rejected, its limit is not a norm).
    Lp {
        exponent: f64,
    },
    L1,
    LeastSquares,
    /// Weights must match the residuals in length; each residual enters as
    /// `(w r)^2`.
    WeightedLeastSquares {
        weights: Vec<f64>,
    },
}

impl LossSpec {
    pub fn kind(&self) -> LossKind {
        match self {
            LossSpec::Chebyshev => LossKind::Chebyshev,
            LossSpec::RobustCount { .. } => LossKind::RobustCount,
            LossSpec::Lp { .. } => LossKind::Lp,
            LossSpec::L1 => LossKind::L1,
            LossSpec::LeastSquares => LossKind::LeastSquares,
            LossSpec::WeightedLeastSquares { .. } => LossKind::WeightedLeastSquares,
        }
    }
}

/// An invalid loss specification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvalidSpec(pub &'static str);

impl fmt::Display for InvalidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid loss spec: {}", self.0)
    }
}

impl core::error::Error for InvalidSpec {}

/// Evaluates a loss functional over a residual vector.
///
/// Only `spec` is validated; residual values are taken as given, so
/// non-finite residuals propagate into the result.
pub fn loss(residuals: &[f64], spec: &LossSpec) -> Result<f64, InvalidSpec> {
    if residuals.is_empty() {
        return Err(InvalidSpec("residual vector must be nonempty"));
    }
    match spec {
        LossSpec::Chebyshev => Ok(residuals.iter().fold(0.0_f64, |m, r| m.max(r.abs()))),
        LossSpec::RobustCount { zero_tolerance } => {
            if !zero_tolerance.is_finite() || *zero_tolerance < 0.0 {
                return Err(InvalidSpec("zero tolerance must be finite and nonnegative"));
            }
            Ok(residuals
                .iter()
                .filter(|r| r.abs() > *zero_tolerance)
                .count() as f64)
        }
        LossSpec::Lp { exponent } => {
            if !exponent.is_finite() || *exponent <= 0.0 {
                return Err(InvalidSpec("Lp exponent must be positive and finite"));
            }
            let sum: f64 = residuals.iter().map(|r| r.abs().powf(*exponent)).sum();
            Ok(sum.powf(1.0 / exponent))
        }
        LossSpec::L1 => Ok(residuals.iter().map(|r| r.abs()).sum()),
        LossSpec::LeastSquares => Ok(residuals.iter().map(|r| r * r).sum()),
        LossSpec::WeightedLeastSquares { weights } => {
            if weights.len() != residuals.len() {
                return Err(InvalidSpec("weights must match residuals in length"));
            }
            if weights.iter().any(|w| !w.is_finite()) {
                return Err(InvalidSpec("weights must be finite"));
            }
            Ok(residuals
                .iter()
                .zip(weights)
                .map(|(r, w)| (w * r) * (w * r))
                .sum())
        }
    }
}

/// Residual of one node: `residual = observed - predicted`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NodeResidual {
    pub t: f64,
    pub observed: f64,
    pub predicted: f64,
    pub residual: f64,
}

/// How well a model reproduces a series at its nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct FitReport {
    /// Largest `|residual|` over the nodes.
    pub max_abs_residual: f64,
    /// Root mean square of the residuals.
    pub rms_residual: f64,
    /// Largest imaginary remainder of the model over the nodes.
    pub max_imag: f64,
    /// Per-node breakdown, in series order.
    pub nodes: Vec<NodeResidual>,
    /// Standard losses over the residual vector, keyed by [`LossKind`]:
    /// Chebyshev, L1, least squares, and the robust count at the default
    /// zero tolerance (`1e-9` times the largest observed magnitude).
    pub losses: Vec<(LossKind, f64)>,
}

impl FitReport {
    /// Looks up a loss by kind.
    pub fn loss(&self, kind: LossKind) -> Option<f64> {
        self.losses
            .iter()
            .find(|(k, _)| *k == kind)
            .map(|(_, v)| *v)
    }
}

/// Evaluates `model` at every node of `series` and summarizes the residuals.
pub fn residual_report(model: &ExponentialModel, series: &TimeSeries) -> FitReport {
    let mut nodes = Vec::with_capacity(series.len());
    let mut max_abs_residual = 0.0_f64;
    let mut max_imag = 0.0_f64;
    let mut sum_sq = 0.0_f64;
    for point in series.points() {
        let (predicted, imag) = model.evaluate_real(point.t);
        let residual = point.y - predicted;
        max_abs_residual = max_abs_residual.max(residual.abs());
        max_imag = max_imag.max(imag);
        sum_sq += residual * residual;
        nodes.push(NodeResidual {
            t: point.t,
            observed: point.y,
            predicted,
            residual,
        });
    }
    let rms_residual = (sum_sq / series.len() as f64).sqrt();

    let residuals: Vec<f64> = nodes.iter().map(|n| n.residual).collect();
    let zero_tolerance = ROBUST_ZERO_REL_TOL * series.max_abs_ordinate();
    let standard = [
        LossSpec::Chebyshev,
        LossSpec::RobustCount { zero_tolerance },
        LossSpec::L1,
        LossSpec::LeastSquares,
    ];
    let losses = standard
        .iter()
        .map(|spec| {
            let value = loss(&residuals, spec).expect("standard specs are valid");
            (spec.kind(), value)
        })
        .collect();

    FitReport {
        max_abs_residual,
        rms_residual,
        max_imag,
        nodes,
        losses,
    }
}
