//! Validated observation series.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// One observation: abscissa `t` (typically a year index) and ordinate `y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DataPoint {
    pub t: f64,
    pub y: f64,
}

impl DataPoint {
    pub fn new(t: f64, y: f64) -> Self {
        Self { t, y }
    }

    pub(crate) fn is_finite(&self) -> bool {
        self.t.is_finite() && self.y.is_finite()
    }
}

/// Why a point sequence was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesError {
    /// The sequence contains no points.
    EmptySeries,
    /// `t` or `y` is NaN or infinite at `index`.
    NonFiniteValue { index: usize },
    /// Abscissas must be strictly increasing; violated at `index`.
    NonIncreasingAbscissa { index: usize },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::EmptySeries => write!(f, "series has no points"),
            SeriesError::NonFiniteValue { index } => {
                write!(f, "non-finite coordinate at point {index}")
            }
            SeriesError::NonIncreasingAbscissa { index } => {
                write!(
                    f,
                    "abscissas must be strictly increasing (violated at point {index})"
                )
            }
        }
    }
}

impl core::error::Error for SeriesError {}

/// An ordered series of observations with strictly increasing abscissas.
///
/// The invariants (nonempty, all coordinates finite, abscissas strictly
/// increasing) are checked once at construction; the points are immutable
/// afterwards.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeries {
    name: String,
    points: Vec<DataPoint>,
}

impl TimeSeries {
    pub fn new(name: impl Into<String>, points: Vec<DataPoint>) -> Result<Self, SeriesError> {
        if points.is_empty() {
            return Err(SeriesError::EmptySeries);
        }
        for (index, point) in points.iter().enumerate() {
            if !point.is_finite() {
                return Err(SeriesError::NonFiniteValue { index });
            }
        }
        for index in 1..points.len() {
            if points[index - 1].t >= points[index].t {
                return Err(SeriesError::NonIncreasingAbscissa { index });
            }
        }
        Ok(Self {
            name: name.into(),
            points,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn points(&self) -> &[DataPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; an empty series cannot be constructed.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn abscissas(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.t).collect()
    }

    pub fn ordinates(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.y).collect()
    }

    /// Largest ordinate magnitude, the scale used by relative tolerances.
    pub fn max_abs_ordinate(&self) -> f64 {
        self.points.iter().fold(0.0_f64, |m, p| m.max(p.y.abs()))
    }
}
