//! Special functions, Beta-distribution intervals and bisection.

mod beta;
mod quad;
mod roots;
mod special;

pub use beta::{
    beta_cdf, beta_quantile, equal_tailed_interval, highest_density_interval, interval,
    smallest_interval_coverage, BetaParams, IntervalKind, ProbabilityInterval,
};
pub use quad::integrate;
pub use roots::{bisect, Bisection, DEFAULT_MAX_ITER, DEFAULT_TOL};
pub use special::{ln_beta, ln_gamma, normal_cdf};

pub(crate) use beta::{coverage_unchecked, hd_coverage_bound, hd_coverage_given_cdf, inc_beta};
