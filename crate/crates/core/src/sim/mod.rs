//! Simulation: known score distributions, coverage experiments and the
//! bootstrap baseline.
//!
//! Every experiment derives an independent random stream per replication
//! from the master seed, so results are reproducible and do not depend on
//! how rayon schedules the work.

mod bootstrap;
mod coverage;
mod kde;
mod truth;

pub use bootstrap::{
    bootstrap_coverage_experiment, bootstrap_pointwise_bands, BootstrapBands, BootstrapConfig,
    BootstrapCoverage, Estimator,
};
pub use coverage::{
    cdf_bands_cover, clopper_pearson, coverage_experiment, coverage_sweep, curve_bands_cover,
    experiment_sample, median_bands_cover, true_curve, CoverageConfig, CoverageResult,
    CoverageTarget, MIN_REPS, REPORT_CONFIDENCE,
};
pub use kde::{bandwidth_report, kde_sample, Kde};
pub use truth::{true_mean_curve, true_median_curve, GroundTruth, Normal, Uniform};
