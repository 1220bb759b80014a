//! Empirical CDF and simultaneous confidence bands for it.
//!
//! Three constructions are provided. DKW and Kolmogorov-Smirnov bands have
//! constant width around the eCDF; LD bands bound the CDF at each order
//! statistic with a Beta interval, calibrated by simulating the null law of
//! the largest interval coverage so that all intervals hold jointly.

mod bands;
mod calibration;
mod ld;
mod sample;
mod step;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use bands::{dkw_bands, dkw_epsilon, ks_bands, ks_critical_value, CdfBands, KsNull};
pub use calibration::{build_bands, BandCalibration, BandNull};
pub use ld::{ld_bands, simulate_ln_null, LdCalibration, LnNull};
pub use sample::Sample;
pub use step::{ecdf, StepCdf};

use crate::error::{Error, Result};
use crate::numerics::IntervalKind;

/// Replicates used for simulated null distributions unless overridden.
pub const DEFAULT_REPLICATES: usize = 100_000;
/// Fewer replicates than this give too noisy a quantile.
pub const MIN_REPLICATES: usize = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BandMethod {
    Dkw,
    Ks,
    #[serde(rename = "ld-et")]
    LdEqualTailed,
    #[serde(rename = "ld-hd")]
    LdHighestDensity,
}

impl BandMethod {
    pub const ALL: [BandMethod; 4] = [
        BandMethod::Dkw,
        BandMethod::Ks,
        BandMethod::LdEqualTailed,
        BandMethod::LdHighestDensity,
    ];

    pub fn interval_kind(self) -> Option<IntervalKind> {
        match self {
            BandMethod::LdEqualTailed => Some(IntervalKind::EqualTailed),
            BandMethod::LdHighestDensity => Some(IntervalKind::HighestDensity),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BandMethod::Dkw => "dkw",
            BandMethod::Ks => "ks",
            BandMethod::LdEqualTailed => "ld-et",
            BandMethod::LdHighestDensity => "ld-hd",
        }
    }
}

impl fmt::Display for BandMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BandMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BandMethod::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::domain(format!("unknown band method `{s}`")))
    }
}

/// Non-fatal conditions attached to results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Warning {
    /// The sample has repeated scores, so the continuity assumption fails and
    /// the bands are only expected to be conservative.
    TiesPresent,
    /// The lower support bound is infinite and receives mass.
    VacuousLower,
    /// The upper support bound is infinite and receives mass.
    VacuousUpper,
}

/// Index into sorted null draws for a `confidence` quantile: the
/// `ceil(confidence * R)`-th smallest draw.
pub(crate) fn empirical_threshold(sorted: &[f64], confidence: f64) -> f64 {
    let r = sorted.len();
    let rank = ((confidence * r as f64) * (1.0 - 1e-12)).ceil() as usize;
    sorted[rank.clamp(1, r) - 1]
}

pub(crate) fn check_replicates(replicates: usize) -> Result<()> {
    if replicates < MIN_REPLICATES {
        return Err(Error::domain(format!(
            "at least {MIN_REPLICATES} replicates are required, got {replicates}"
        )));
    }
    Ok(())
}

pub(crate) fn check_confidence(confidence: f64) -> Result<()> {
    if (0.0..1.0).contains(&confidence) {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "confidence must lie in [0, 1), got {confidence}"
        )))
    }
}
