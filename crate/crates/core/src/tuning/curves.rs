use serde::Serialize;

use super::{check_budget, CurveKind, KGrid, SupportBounds};
use crate::cdfbands::{ecdf, BandMethod, CdfBands, StepCdf, Warning};
use crate::error::Result;

/// Lower band, point estimate and upper band of a tuning curve on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveBandSet {
    pub kind: CurveKind,
    pub confidence: f64,
    pub method: BandMethod,
    pub grid: KGrid,
    pub lower: Vec<f64>,
    pub point: Vec<f64>,
    pub upper: Vec<f64>,
    pub warnings: Vec<Warning>,
}

impl CurveBandSet {
    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }
}

/// CDF of the best of `k` draws: every value `v` becomes `v^k`.
pub fn power_transform(cdf: &StepCdf, k: f64) -> Result<StepCdf> {
    check_budget(k)?;
    Ok(cdf.map_values(|v| v.powf(k)))
}

/// Median of `cdf^k`: the smallest `y` with `cdf(y)^k >= 0.5`.
///
/// Returns `-inf` when the value left of the first knot already qualifies
/// and `+inf` when no value does.
pub fn median_of_powered_cdf(cdf: &StepCdf, k: f64) -> Result<f64> {
    check_budget(k)?;
    let reaches = |v: f64| v.powf(k) >= 0.5;
    if reaches(cdf.value_before_first()) {
        return Ok(f64::NEG_INFINITY);
    }
    let j = cdf.values().partition_point(|&v| !reaches(v));
    Ok(cdf.knots().get(j).copied().unwrap_or(f64::INFINITY))
}

/// Mean of `cdf^k`, with mass left of the first knot placed at `support.lo`
/// and mass right of the last knot placed at `support.hi`.
///
/// An infinite bound that receives mass makes the mean infinite; if both do
/// the result is NaN.
pub fn mean_of_powered_cdf(cdf: &StepCdf, k: f64, support: SupportBounds) -> Result<f64> {
    check_budget(k)?;
    let before = cdf.value_before_first().powf(k);
    let after = 1.0 - cdf.last_value().powf(k);
    let mut total = 0.0;
    let mut prev = before;
    for (&y, &v) in cdf.knots().iter().zip(cdf.values()) {
        let v = v.powf(k);
        total += y * (v - prev);
        prev = v;
    }
    let low_tail = before > 0.0 && support.lo.is_infinite();
    let high_tail = after > 0.0 && support.hi.is_infinite();
    Ok(match (low_tail, high_tail) {
        (true, true) => f64::NAN,
        (true, false) => f64::NEG_INFINITY,
        (false, true) => f64::INFINITY,
        (false, false) => {
            let mut ends = 0.0;
            if before > 0.0 {
                ends += support.lo * before;
            }
            if after > 0.0 {
                ends += support.hi * after;
            }
            total + ends
        }
    })
}

/// Median tuning-curve bands: the lower curve is the median of the powered
/// upper CDF band and the upper curve the median of the powered lower band.
pub fn median_curve_bands(bands: &CdfBands, grid: &KGrid) -> Result<CurveBandSet> {
    let center = ecdf(&bands.sample);
    let mut set = empty_set(bands, grid, CurveKind::Median);
    for &k in grid.budgets() {
        set.lower.push(median_of_powered_cdf(&bands.upper, k)?);
        set.point.push(median_of_powered_cdf(&center, k)?);
        set.upper.push(median_of_powered_cdf(&bands.lower, k)?);
    }
    Ok(set)
}

/// Mean tuning-curve bands. Unassigned probability floats to `support.lo`
/// for the lower curve and to `support.hi` for the upper curve, so an
/// infinite bound makes that side vacuous.
pub fn mean_curve_bands(
    bands: &CdfBands,
    grid: &KGrid,
    support: SupportBounds,
) -> Result<CurveBandSet> {
    let center = ecdf(&bands.sample);
    let mut set = empty_set(bands, grid, CurveKind::Mean);
    for &k in grid.budgets() {
        set.lower
            .push(mean_of_powered_cdf(&bands.upper, k, support)?);
        set.point.push(mean_of_powered_cdf(&center, k, support)?);
        set.upper
            .push(mean_of_powered_cdf(&bands.lower, k, support)?);
    }
    if support.lo.is_infinite() {
        set.warnings.push(Warning::VacuousLower);
    }
    if support.hi.is_infinite() {
        set.warnings.push(Warning::VacuousUpper);
    }
    Ok(set)
}

/// Dispatches on `kind`; `support` is only used by mean curves.
pub fn curve_bands(
    bands: &CdfBands,
    grid: &KGrid,
    kind: CurveKind,
    support: SupportBounds,
) -> Result<CurveBandSet> {
    match kind {
        CurveKind::Median => median_curve_bands(bands, grid),
        CurveKind::Mean => mean_curve_bands(bands, grid, support),
    }
}

/// Largest budget for which the upper median band stays finite.
///
/// The upper curve is finite while the top of the lower CDF band, raised to
/// the `k`, still reaches one half. This depends only on `n`, the method and
/// the confidence, not on the scores.
pub fn median_upper_horizon(bands: &CdfBands) -> f64 {
    let top = bands.lower.last_value();
    if top >= 1.0 {
        f64::INFINITY
    } else {
        0.5f64.ln() / top.ln()
    }
}

fn empty_set(bands: &CdfBands, grid: &KGrid, kind: CurveKind) -> CurveBandSet {
    CurveBandSet {
        kind,
        confidence: bands.confidence,
        method: bands.method,
        grid: grid.clone(),
        lower: Vec::with_capacity(grid.len()),
        point: Vec::with_capacity(grid.len()),
        upper: Vec::with_capacity(grid.len()),
        warnings: bands.warnings.clone(),
    }
}
