//! Tuning curves and their confidence bands.
//!
//! The best score after `k` random-search rounds has CDF `F^k`, so raising a
//! pair of CDF bands to the power `k` bounds the CDF of the best score.
//! Taking the median or the mean of the powered bands gives bands for the
//! median or mean tuning curve.

mod compare;
mod curves;
mod estimators;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use compare::{
    compare_curves, ComparisonReport, Grade, GradeFraction, DEFAULT_NONTRIVIAL_FRACTION,
};
pub use curves::{
    curve_bands, mean_curve_bands, mean_of_powered_cdf, median_curve_bands, median_of_powered_cdf,
    median_upper_horizon, power_transform, CurveBandSet,
};
pub use estimators::{point_estimate_mean_u, point_estimate_mean_v, point_estimate_median};

use crate::error::{Error, Result};

/// Bounds on the score, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupportBounds {
    pub lo: f64,
    pub hi: f64,
}

impl SupportBounds {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan()
            || hi.is_nan()
            || !(lo < hi)
            || lo == f64::INFINITY
            || hi == f64::NEG_INFINITY
        {
            return Err(Error::domain(format!(
                "support needs lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(SupportBounds { lo, hi })
    }

    pub fn unbounded() -> Self {
        SupportBounds {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        }
    }

    /// `[0, 1]`, the range of accuracy-like metrics.
    pub fn unit() -> Self {
        SupportBounds { lo: 0.0, hi: 1.0 }
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains(&self, y: f64) -> bool {
        self.lo <= y && y <= self.hi
    }
}

impl FromStr for SupportBounds {
    type Err = Error;

    /// Parses `LO:HI`; `inf`, `-inf` and empty sides mean unbounded.
    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| Error::domain(format!("support must look like LO:HI, got `{s}`")))?;
        let side = |t: &str, default: f64| -> Result<f64> {
            let t = t.trim();
            if t.is_empty() {
                return Ok(default);
            }
            t.parse::<f64>()
                .map_err(|_| Error::domain(format!("bad support bound `{t}`")))
        };
        SupportBounds::new(side(lo, f64::NEG_INFINITY)?, side(hi, f64::INFINITY)?)
    }
}

/// Budgets (numbers of search rounds) at which curves are evaluated.
///
/// `cost_multiplier` converts rounds to another cost unit (for example
/// training epochs) and only affects [`KGrid::cost_axis`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KGrid {
    budgets: Vec<f64>,
    cost_multiplier: f64,
}

impl KGrid {
    pub fn new(budgets: Vec<f64>) -> Result<Self> {
        if budgets.is_empty() {
            return Err(Error::domain("budget grid is empty"));
        }
        if budgets.iter().any(|&k| !(k > 0.0 && k.is_finite())) {
            return Err(Error::domain("budgets must be positive and finite"));
        }
        if budgets.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::domain("budgets must be strictly ascending"));
        }
        Ok(KGrid {
            budgets,
            cost_multiplier: 1.0,
        })
    }

    /// The integers `1..=max`.
    pub fn integers(max: usize) -> Result<Self> {
        Self::new((1..=max).map(|k| k as f64).collect())
    }

    pub fn budgets(&self) -> &[f64] {
        &self.budgets
    }

    pub fn len(&self) -> usize {
        self.budgets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.budgets.is_empty()
    }

    pub fn max_budget(&self) -> f64 {
        *self.budgets.last().expect("grid is nonempty")
    }

    pub fn cost_multiplier(&self) -> f64 {
        self.cost_multiplier
    }

    /// Budgets expressed in cost units.
    pub fn cost_axis(&self) -> Vec<f64> {
        self.budgets
            .iter()
            .map(|k| k * self.cost_multiplier)
            .collect()
    }
}

/// Rescales the cost of one search round by `multiplier`.
pub fn scale_cost(grid: &KGrid, multiplier: f64) -> Result<KGrid> {
    if !(multiplier > 0.0 && multiplier.is_finite()) {
        return Err(Error::domain(format!(
            "cost multiplier must be positive, got {multiplier}"
        )));
    }
    Ok(KGrid {
        budgets: grid.budgets.clone(),
        cost_multiplier: grid.cost_multiplier * multiplier,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Median,
    Mean,
}

impl CurveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveKind::Median => "median",
            CurveKind::Mean => "mean",
        }
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CurveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "median" => Ok(CurveKind::Median),
            "mean" => Ok(CurveKind::Mean),
            _ => Err(Error::domain(format!("unknown curve kind `{s}`"))),
        }
    }
}

fn check_budget(k: f64) -> Result<()> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "budget must be positive and finite, got {k}"
        )))
    }
}
