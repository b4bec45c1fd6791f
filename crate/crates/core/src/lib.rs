//! Exponential-sum modelling of tabulated numerical series.
//!
//! The crate covers the pipeline from raw observations to an analytic
//! interpolant:
//!
//! - [`series`]: validated series types; [`fixtures`] embeds the Hungarian
//!   GDP reference data.
//! - [`smooth`]: triangle-centroid smoothing, mapping every run of three
//!   consecutive points to the centroid of the triangle they span.
//! - [`linalg`]: self-contained complex linear algebra (partial-pivoting
//!   elimination, Householder least squares, Aberth-Ehrlich root finding).
//! - [`prony`]: fits sums of complex exponentials `sum c_k * exp(s_k * t)`
//!   to unit-spaced samples, exactly (N = 2p) or in the least-squares sense
//!   (N > 2p).
//! - [`metrics`]: residual reports and the classical loss functionals
//!   (Chebyshev, robust counting, Lp, L1, least squares, weighted least
//!   squares).
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the command
//! line live in the companion `expseries-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod fixtures;
pub mod linalg;
pub mod metrics;
pub mod prony;
pub mod series;
pub mod smooth;

pub use num_complex::Complex64;

pub use prony::{ExpTerm, ExponentialModel, FitMode, FitOptions};
pub use series::{DataPoint, TimeSeries};
