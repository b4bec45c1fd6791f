//! Smoothing by triangle centroids.
//!
//! Every run of three consecutive points spans a triangle in the `(t, y)`
//! plane; one smoothing pass replaces the run by the centroid of that
//! triangle, mapping `n` points to `n - 2`. The centroid (the intersection
//! of the medians, equal to the vertex mean) is well defined even when the
//! three points are collinear or coincide, so the pass never rejects
//! degenerate geometry. On equally spaced abscissas the ordinates come out
//! as the 3-point moving average.

use crate::series::{DataPoint, SeriesError, TimeSeries};
use alloc::vec::Vec;
use core::fmt;
use core::num::NonZeroU32;

/// How many times the `n -> n - 2` centroid pass is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmoothingConfig {
    pub passes: NonZeroU32,
}

impl SmoothingConfig {
    /// Returns `None` when `passes` is zero.
    pub fn new(passes: u32) -> Option<Self> {
        NonZeroU32::new(passes).map(|passes| Self { passes })
    }
}

impl Default for SmoothingConfig {
    fn default() -> Self {
        Self {
            passes: NonZeroU32::MIN,
        }
    }
}

/// Why smoothing failed.
#[derive(Clone, Debug, PartialEq)]
pub enum SmoothError {
    /// A pass needs at least three points; `len` were left entering `pass`.
    SeriesTooShort { len: usize, pass: u32 },
    /// The centroids no longer form a valid series (abscissa gaps collapsed
    /// below rounding resolution).
    Degenerate(SeriesError),
}

impl fmt::Display for SmoothError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SmoothError::SeriesTooShort { len, pass } => write!(
                f,
                "smoothing pass {pass} needs at least 3 points, but only {len} remain"
            ),
            SmoothError::Degenerate(err) => write!(f, "smoothed points are degenerate: {err}"),
        }
    }
}

impl core::error::Error for SmoothError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            SmoothError::Degenerate(err) => Some(err),
            SmoothError::SeriesTooShort { .. } => None,
        }
    }
}

/// Centroid (vertex mean) of the triangle spanned by three points.
pub fn centroid(p1: DataPoint, p2: DataPoint, p3: DataPoint) -> DataPoint {
    DataPoint::new((p1.t + p2.t + p3.t) / 3.0, (p1.y + p2.y + p3.y) / 3.0)
}

/// Applies `config.passes` centroid passes to `series`.
///
/// Each pass keeps the point order and shortens the series by two, so the
/// result has `n - 2 * passes` points.
pub fn smooth(series: &TimeSeries, config: SmoothingConfig) -> Result<TimeSeries, SmoothError> {
    let mut points: Vec<DataPoint> = series.points().to_vec();
    for pass in 1..=config.passes.get() {
        if points.len() < 3 {
            return Err(SmoothError::SeriesTooShort {
                len: points.len(),
                pass,
            });
        }
        points = points
            .windows(3)
            .map(|w| centroid(w[0], w[1], w[2]))
            .collect();
    }
    TimeSeries::new(series.name(), points).map_err(SmoothError::Degenerate)
}
