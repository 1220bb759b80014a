use super::{check_budget, curves::median_of_powered_cdf};
use crate::cdfbands::{ecdf, Sample};
use crate::error::{Error, Result};

/// Plug-in (V-statistic) estimate of the expected best of `k` draws:
/// `sum_i Y_(i) [(i/n)^k - ((i-1)/n)^k]`.
pub fn point_estimate_mean_v(sample: &Sample, k: f64) -> Result<f64> {
    check_budget(k)?;
    let n = sample.len() as f64;
    let mut prev = 0.0;
    let mut total = 0.0;
    for (i, &y) in sample.scores().iter().enumerate() {
        let cur = ((i + 1) as f64 / n).powf(k);
        total += y * (cur - prev);
        prev = cur;
    }
    Ok(total)
}

/// Unbiased (U-statistic) estimate of the expected best of `k` draws: the
/// average maximum over all size-`k` subsets,
/// `sum_{i>=k} Y_(i) C(i-1, k-1) / C(n, k)`.
pub fn point_estimate_mean_u(sample: &Sample, k: usize) -> Result<f64> {
    let n = sample.len();
    if k == 0 || k > n {
        return Err(Error::domain(format!(
            "U-statistic needs 1 <= k <= n = {n}, got k = {k}"
        )));
    }
    let scores = sample.scores();
    // weight of Y_(n) is k/n; stepping down, w_(i-1) = w_(i) (i-k)/(i-1)
    let mut weight = k as f64 / n as f64;
    let mut total = scores[n - 1] * weight;
    for i in (k + 1..=n).rev() {
        weight *= (i - k) as f64 / (i - 1) as f64;
        total += scores[i - 2] * weight;
    }
    Ok(total)
}

/// Median of the best of `k` draws from the empirical distribution.
pub fn point_estimate_median(sample: &Sample, k: f64) -> Result<f64> {
    median_of_powered_cdf(&ecdf(sample), k)
}
