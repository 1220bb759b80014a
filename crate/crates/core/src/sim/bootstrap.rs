use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::coverage::{experiment_sample, CoverageResult, MIN_REPS};
use super::{true_mean_curve, GroundTruth};
use crate::cdfbands::{check_confidence, Sample, MIN_REPLICATES};
use crate::error::{Error, Result};
use crate::rng::{self, Domain};
use crate::tuning::KGrid;

/// Point estimator of the mean tuning curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Estimator {
    /// Unbiased subset average; integer budgets up to `n` only.
    U,
    /// Plug-in tuple average.
    V,
}

/// Pointwise percentile bootstrap bands around a mean-curve estimator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BootstrapBands {
    pub estimator: Estimator,
    pub confidence: f64,
    pub grid: KGrid,
    pub lower: Vec<f64>,
    pub point: Vec<f64>,
    pub upper: Vec<f64>,
}

/// Positional weights `w[j][i]` so that the estimate at budget `j` is
/// `sum_i w[j][i] Y_(i)`.
fn weight_table(estimator: Estimator, n: usize, grid: &KGrid) -> Result<Vec<Vec<f64>>> {
    let nf = n as f64;
    grid.budgets()
        .iter()
        .map(|&k| match estimator {
            Estimator::V => Ok((1..=n)
                .map(|i| (i as f64 / nf).powf(k) - ((i - 1) as f64 / nf).powf(k))
                .collect()),
            Estimator::U => {
                if k.fract() != 0.0 || k as usize > n {
                    return Err(Error::domain(format!(
                        "U-statistic needs integer budgets up to {n}, got {k}"
                    )));
                }
                let k = k as usize;
                let mut w = vec![0.0; n];
                w[n - 1] = k as f64 / nf;
                for i in (k + 1..=n).rev() {
                    w[i - 2] = w[i - 1] * (i - k) as f64 / (i - 1) as f64;
                }
                Ok(w)
            }
        })
        .collect()
}

fn dot(w: &[f64], y: &[f64]) -> f64 {
    w.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Type-7 (linear interpolation) quantile of sorted values.
fn sorted_quantile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Pointwise percentile intervals for each estimator and budget, from
/// `replicates` resamples drawn with `stream(b)`.
fn percentile_bands(
    sample: &Sample,
    tables: &[Vec<Vec<f64>>],
    replicates: usize,
    confidence: f64,
    stream: impl Fn(u64) -> ChaCha8Rng,
) -> Vec<(Vec<f64>, Vec<f64>)> {
    let n = sample.len();
    let y = sample.scores();
    let budgets = tables[0].len();
    // draws[e][j][b]: estimator e, budget j, resample b
    let mut draws = vec![vec![Vec::with_capacity(replicates); budgets]; tables.len()];
    let mut resample = vec![0.0; n];
    for b in 0..replicates as u64 {
        let mut rng = stream(b);
        for slot in resample.iter_mut() {
            *slot = y[rng.random_range(0..n)];
        }
        resample.sort_by(f64::total_cmp);
        for (e, table) in tables.iter().enumerate() {
            for (j, w) in table.iter().enumerate() {
                draws[e][j].push(dot(w, &resample));
            }
        }
    }
    let tail = (1.0 - confidence) / 2.0;
    draws
        .into_iter()
        .map(|per_budget| {
            per_budget
                .into_iter()
                .map(|mut v| {
                    v.sort_by(f64::total_cmp);
                    (sorted_quantile(&v, tail), sorted_quantile(&v, 1.0 - tail))
                })
                .unzip()
        })
        .collect()
}

fn check_bootstrap(replicates: usize, confidence: f64) -> Result<()> {
    check_confidence(confidence)?;
    if replicates < MIN_REPLICATES {
        return Err(Error::domain(format!(
            "at least {MIN_REPLICATES} resamples are required, got {replicates}"
        )));
    }
    Ok(())
}

/// Percentile bootstrap bands for one estimator, pointwise in the budget.
pub fn bootstrap_pointwise_bands(
    sample: &Sample,
    estimator: Estimator,
    grid: &KGrid,
    replicates: usize,
    confidence: f64,
    seed: u64,
) -> Result<BootstrapBands> {
    check_bootstrap(replicates, confidence)?;
    let table = weight_table(estimator, sample.len(), grid)?;
    let point = table.iter().map(|w| dot(w, sample.scores())).collect();
    let (lower, upper) = percentile_bands(
        sample,
        std::slice::from_ref(&table),
        replicates,
        confidence,
        |b| rng::stream(seed, Domain::Bootstrap, b),
    )
    .remove(0);
    Ok(BootstrapBands {
        estimator,
        confidence,
        grid: grid.clone(),
        lower,
        point,
        upper,
    })
}

/// Per-budget pointwise coverage of the true mean curve by bootstrap bands.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BootstrapCoverage {
    pub grid: KGrid,
    pub u: Vec<CoverageResult>,
    pub v: Vec<CoverageResult>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapConfig {
    pub n: usize,
    pub grid: KGrid,
    pub nominal: f64,
    pub reps: usize,
    pub replicates: usize,
    pub seed: u64,
}

/// Repeatedly samples `n` scores from `truth`, builds bootstrap bands for
/// both estimators from the same resamples, and counts per budget how often
/// they contain the true mean curve.
pub fn bootstrap_coverage_experiment(
    truth: &dyn GroundTruth,
    config: &BootstrapConfig,
) -> Result<BootstrapCoverage> {
    if config.reps < MIN_REPS {
        return Err(Error::domain(format!(
            "at least {MIN_REPS} replications are required, got {}",
            config.reps
        )));
    }
    check_bootstrap(config.replicates, config.nominal)?;
    let tables = [
        weight_table(Estimator::U, config.n, &config.grid)?,
        weight_table(Estimator::V, config.n, &config.grid)?,
    ];
    let target = config
        .grid
        .budgets()
        .iter()
        .map(|&k| true_mean_curve(truth, k))
        .collect::<Result<Vec<_>>>()?;
    let hits: Vec<Vec<Vec<bool>>> = (0..config.reps as u64)
        .into_par_iter()
        .map(|r| {
            let sample = experiment_sample(truth, config.n, config.seed, r)?;
            let bands =
                percentile_bands(&sample, &tables, config.replicates, config.nominal, |b| {
                    rng::nested_stream(config.seed, Domain::Bootstrap, r, b)
                });
            Ok(bands
                .iter()
                .map(|(lo, hi)| {
                    (0..target.len())
                        .map(|j| lo[j] <= target[j] && target[j] <= hi[j])
                        .collect()
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let per_estimator = |e: usize| {
        (0..target.len())
            .map(|j| {
                let successes = hits.iter().filter(|h| h[e][j]).count() as u64;
                CoverageResult::new(successes, config.reps as u64, config.nominal)
            })
            .collect::<Result<Vec<_>>>()
    };
    Ok(BootstrapCoverage {
        grid: config.grid.clone(),
        u: per_estimator(0)?,
        v: per_estimator(1)?,
    })
}
