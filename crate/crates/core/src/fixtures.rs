//! Embedded reference series: Hungary's annual GDP in billion current USD.
//!
//! Two variants of the indicator are kept because the sources disagree on
//! several overlapping years; neither replaces the other.
//!
//! - [`gdp_hu_table1`]: 32 values, year index `t = 1..=32` (1991..=2022).
//! - [`gdp_hu_eq1`]: 30 values, year index `t = 1..=30` (1992..=2021); the
//!   series reproduced node-for-node by the 15-term reference interpolant.

use crate::series::{DataPoint, TimeSeries};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Name of the 32-point variant (1991..=2022).
pub const GDP_HU_TABLE1: &str = "gdp_hu_table1";
/// Name of the 30-point variant (1992..=2021).
pub const GDP_HU_EQ1: &str = "gdp_hu_eq1";

const TABLE1_VALUES: [f64; 32] = [
    34.75, 38.73, 40.12, 43.17, 46.43, 46.66, 47.3, 48.71, 48.0, 49.66, 55.66, 68.33, 85.33,
    100.66, 110.66, 122.66, 140.19, 158.33, 131.07, 132.18, 141.94, 128.81, 135.68, 141.03, 125.17,
    128.61, 143.11, 160.75, 164.02, 157.23, 182.28, 178.79,
];

const EQ1_VALUES: [f64; 30] = [
    37.33, 40.33, 43.0, 45.0, 46.33, 47.0, 48.0, 48.0, 49.66, 55.66, 68.33, 85.33, 100.66, 110.66,
    122.66, 137.66, 143.0, 140.33, 134.66, 133.66, 134.66, 134.66, 133.66, 131.33, 132.0, 143.66,
    155.66, 160.33, 167.66, 172.33,
];

/// The requested name is not in the registry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownFixture {
    pub name: String,
}

impl fmt::Display for UnknownFixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown fixture `{}`, expected one of: {}, {}",
            self.name, GDP_HU_TABLE1, GDP_HU_EQ1
        )
    }
}

impl core::error::Error for UnknownFixture {}

/// Names of all embedded fixtures.
pub fn names() -> [&'static str; 2] {
    [GDP_HU_TABLE1, GDP_HU_EQ1]
}

/// Looks a fixture up by name.
pub fn load(name: &str) -> Result<TimeSeries, UnknownFixture> {
    match name {
        GDP_HU_TABLE1 => Ok(gdp_hu_table1()),
        GDP_HU_EQ1 => Ok(gdp_hu_eq1()),
        other => Err(UnknownFixture { name: other.into() }),
    }
}

/// The 32-point series, `t = 1..=32` mapping to 1991..=2022.
pub fn gdp_hu_table1() -> TimeSeries {
    series_from(GDP_HU_TABLE1, &TABLE1_VALUES)
}

/// The 30-point series, `t = 1..=30` mapping to 1992..=2021.
pub fn gdp_hu_eq1() -> TimeSeries {
    series_from(GDP_HU_EQ1, &EQ1_VALUES)
}

fn series_from(name: &str, values: &[f64]) -> TimeSeries {
    let points: Vec<DataPoint> = values
        .iter()
        .enumerate()
        .map(|(i, &y)| DataPoint::new((i + 1) as f64, y))
        .collect();
    TimeSeries::new(name, points).expect("embedded fixture data is valid")
}
