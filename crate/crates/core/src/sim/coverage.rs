use rayon::prelude::*;
use serde::Serialize;

use super::{true_mean_curve, true_median_curve, GroundTruth};
use crate::cdfbands::{BandMethod, BandNull, CdfBands, Sample};
use crate::error::{Error, Result};
use crate::numerics::{beta_quantile, BetaParams, ProbabilityInterval};
use crate::rng::{self, Domain};
use crate::tuning::{mean_curve_bands, CurveBandSet, CurveKind, KGrid};

/// Confidence of the interval reported around empirical coverage rates.
pub const REPORT_CONFIDENCE: f64 = 0.99;
/// Smallest number of replications a coverage experiment accepts.
pub const MIN_REPS: usize = 100;

/// Exact binomial interval for a success probability.
pub fn clopper_pearson(
    successes: u64,
    trials: u64,
    confidence: f64,
) -> Result<ProbabilityInterval> {
    if trials == 0 || successes > trials {
        return Err(Error::domain(format!(
            "need 0 <= successes <= trials > 0, got {successes}/{trials}"
        )));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::domain(format!(
            "confidence must lie in (0, 1), got {confidence}"
        )));
    }
    let tail = (1.0 - confidence) / 2.0;
    let (s, t) = (successes as f64, trials as f64);
    let lo = if successes == 0 {
        0.0
    } else {
        beta_quantile(&BetaParams::new(s, t - s + 1.0)?, tail)?
    };
    let hi = if successes == trials {
        1.0
    } else {
        beta_quantile(&BetaParams::new(s + 1.0, t - s)?, 1.0 - tail)?
    };
    ProbabilityInterval::new(lo, hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoverageResult {
    pub successes: u64,
    pub trials: u64,
    pub rate: f64,
    /// Clopper-Pearson interval at [`REPORT_CONFIDENCE`] around `rate`.
    pub cp_interval: ProbabilityInterval,
    pub nominal: f64,
}

impl CoverageResult {
    pub fn new(successes: u64, trials: u64, nominal: f64) -> Result<Self> {
        Ok(CoverageResult {
            successes,
            trials,
            rate: successes as f64 / trials as f64,
            cp_interval: clopper_pearson(successes, trials, REPORT_CONFIDENCE)?,
            nominal,
        })
    }

    /// Whether the nominal level is consistent with the observed rate.
    pub fn consistent_with_nominal(&self) -> bool {
        self.cp_interval.contains(self.nominal)
    }
}

/// Whether a continuous `truth` lies inside both CDF bands everywhere.
///
/// On `[Y_(j), Y_(j+1))` the bands are constant and the truth is continuous
/// and nondecreasing, so the lower band only needs checking at `Y_(j)` and
/// the upper band at the left limit `F(Y_(j+1)-) = F(Y_(j+1))`.
pub fn cdf_bands_cover(bands: &CdfBands, truth: &dyn GroundTruth) -> bool {
    let knots = bands.lower.knots();
    if bands.lower.value_before_first() > 0.0 || bands.upper.last_value() < 1.0 {
        return false;
    }
    let mut upper_left = bands.upper.value_before_first();
    for (j, &y) in knots.iter().enumerate() {
        let f = truth.cdf(y);
        if bands.lower.values()[j] > f || f > upper_left {
            return false;
        }
        upper_left = bands.upper.values()[j];
    }
    true
}

/// Largest `k` with `0.5 <= v^k`.
fn reach(v: f64) -> f64 {
    if v >= 1.0 {
        f64::INFINITY
    } else if v <= 0.0 {
        0.0
    } else {
        0.5f64.ln() / v.ln()
    }
}

fn curve_at(truth: &dyn GroundTruth, k: f64) -> f64 {
    if k <= 0.0 {
        truth.quantile(0.0)
    } else if k.is_infinite() {
        truth.quantile(1.0)
    } else {
        true_median_curve(truth, k).expect("positive budget")
    }
}

/// Whether the median tuning-curve bands derived from `bands` contain the
/// true median curve for every real budget `k > 0`.
///
/// Both band curves are step functions of `k` that jump where a band value
/// raised to `k` crosses one half. The true curve is continuous and
/// increasing, so it suffices to compare it with each step at the step's
/// end (for the upper curve) or start (for the lower curve).
pub fn median_bands_cover(bands: &CdfBands, truth: &dyn GroundTruth) -> bool {
    let knots = bands.lower.knots();
    // upper curve: Y_(j) on (reach(l_(j-1)), reach(l_(j))], -inf before
    let mut prev = reach(bands.lower.value_before_first());
    if prev > 0.0 {
        return false;
    }
    for (&y, &v) in knots.iter().zip(bands.lower.values()) {
        let end = reach(v);
        if end > prev {
            if curve_at(truth, end) > y {
                return false;
            }
            prev = end;
        }
    }
    // lower curve: -inf up to reach(u_before), Y_(j) on the next pieces,
    // +inf past the last one
    let mut prev = reach(bands.upper.value_before_first());
    for (&y, &v) in knots.iter().zip(bands.upper.values()) {
        let end = reach(v);
        if end > prev {
            if curve_at(truth, prev) < y {
                return false;
            }
            prev = end;
        }
    }
    prev.is_infinite()
}

/// Whether every grid value of `truth_curve` lies inside the curve bands.
pub fn curve_bands_cover(set: &CurveBandSet, truth_curve: &[f64]) -> Result<bool> {
    if truth_curve.len() != set.len() {
        return Err(Error::Mismatch(format!(
            "{} truth values for a grid of {}",
            truth_curve.len(),
            set.len()
        )));
    }
    Ok((0..set.len()).all(|j| set.lower[j] <= truth_curve[j] && truth_curve[j] <= set.upper[j]))
}

/// True tuning curve of `kind` on `grid`.
pub fn true_curve(truth: &dyn GroundTruth, kind: CurveKind, grid: &KGrid) -> Result<Vec<f64>> {
    grid.budgets()
        .iter()
        .map(|&k| match kind {
            CurveKind::Median => true_median_curve(truth, k),
            CurveKind::Mean => true_mean_curve(truth, k),
        })
        .collect()
}

/// Object whose simultaneous coverage an experiment measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverageTarget {
    /// The CDF itself.
    Cdf,
    /// The median tuning curve over all budgets.
    Median,
    /// The mean tuning curve on the experiment's grid.
    Mean,
}

impl CoverageTarget {
    pub fn as_str(self) -> &'static str {
        match self {
            CoverageTarget::Cdf => "cdf",
            CoverageTarget::Median => "median",
            CoverageTarget::Mean => "mean",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageConfig {
    pub n: usize,
    pub method: BandMethod,
    pub target: CoverageTarget,
    pub reps: usize,
    /// Replicates for the simulated null behind KS and LD bands.
    pub null_replicates: usize,
    pub seed: u64,
    /// Budgets for mean-curve coverage; `1..=n` when absent.
    pub grid: Option<KGrid>,
}

/// Draws the `index`-th sample of size `n` of an experiment.
pub fn experiment_sample(
    truth: &dyn GroundTruth,
    n: usize,
    seed: u64,
    index: u64,
) -> Result<Sample> {
    let mut rng = rng::stream(seed, Domain::Samples, index);
    Sample::new((0..n).map(|_| truth.draw(&mut rng)).collect())
}

/// Empirical simultaneous coverage for each level in `nominals`.
///
/// The null distribution is simulated once and every level sees the same
/// samples. Replication `r` draws from its own stream, so results do not
/// depend on the thread count.
pub fn coverage_sweep(
    truth: &dyn GroundTruth,
    config: &CoverageConfig,
    nominals: &[f64],
) -> Result<Vec<CoverageResult>> {
    if config.reps < MIN_REPS {
        return Err(Error::domain(format!(
            "at least {MIN_REPS} replications are required, got {}",
            config.reps
        )));
    }
    let null = BandNull::simulate(config.method, config.n, config.null_replicates, config.seed)?;
    let calibrations = nominals
        .iter()
        .map(|&c| null.calibrate(c))
        .collect::<Result<Vec<_>>>()?;
    let grid = match &config.grid {
        Some(g) => g.clone(),
        None => KGrid::integers(config.n)?,
    };
    let mean_truth = match config.target {
        CoverageTarget::Mean => Some(true_curve(truth, CurveKind::Mean, &grid)?),
        _ => None,
    };
    let support = truth.support();
    let hits: Vec<Vec<bool>> = (0..config.reps as u64)
        .into_par_iter()
        .map(|r| {
            let sample = experiment_sample(truth, config.n, config.seed, r)?;
            calibrations
                .iter()
                .map(|cal| {
                    let bands = cal.apply(&sample)?;
                    match config.target {
                        CoverageTarget::Cdf => Ok(cdf_bands_cover(&bands, truth)),
                        CoverageTarget::Median => Ok(median_bands_cover(&bands, truth)),
                        CoverageTarget::Mean => {
                            let set = mean_curve_bands(&bands, &grid, support)?;
                            curve_bands_cover(&set, mean_truth.as_deref().expect("computed above"))
                        }
                    }
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    nominals
        .iter()
        .enumerate()
        .map(|(i, &nominal)| {
            let successes = hits.iter().filter(|h| h[i]).count() as u64;
            CoverageResult::new(successes, config.reps as u64, nominal)
        })
        .collect()
}

/// Empirical simultaneous coverage at a single nominal level.
pub fn coverage_experiment(
    truth: &dyn GroundTruth,
    config: &CoverageConfig,
    nominal: f64,
) -> Result<CoverageResult> {
    Ok(coverage_sweep(truth, config, &[nominal])?.remove(0))
}
