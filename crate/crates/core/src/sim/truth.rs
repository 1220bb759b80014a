use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::numerics::{integrate, normal_cdf, Bisection};
use crate::tuning::SupportBounds;

/// A continuous score distribution whose tuning curves are known exactly.
pub trait GroundTruth: Send + Sync {
    fn cdf(&self, y: f64) -> f64;

    /// `inf {y : p <= F(y)}` for `p` in `[0, 1]`; the support bounds at the
    /// ends.
    fn quantile(&self, p: f64) -> f64;

    fn draw(&self, rng: &mut ChaCha8Rng) -> f64;

    fn support(&self) -> SupportBounds;

    /// Short human-readable description, for report headers.
    fn descriptor(&self) -> String;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Uniform {
    lo: f64,
    hi: f64,
}

impl Uniform {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::domain(format!(
                "uniform needs finite lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(Uniform { lo, hi })
    }

    pub fn standard() -> Self {
        Uniform { lo: 0.0, hi: 1.0 }
    }
}

impl GroundTruth for Uniform {
    fn cdf(&self, y: f64) -> f64 {
        ((y - self.lo) / (self.hi - self.lo)).clamp(0.0, 1.0)
    }

    fn quantile(&self, p: f64) -> f64 {
        if p >= 1.0 {
            return self.hi;
        }
        self.lo + p.max(0.0) * (self.hi - self.lo)
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        self.lo + (self.hi - self.lo) * rng.random::<f64>()
    }

    fn support(&self) -> SupportBounds {
        SupportBounds {
            lo: self.lo,
            hi: self.hi,
        }
    }

    fn descriptor(&self) -> String {
        format!("uniform({}, {})", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normal {
    mean: f64,
    sd: f64,
}

impl Normal {
    pub fn new(mean: f64, sd: f64) -> Result<Self> {
        if !(mean.is_finite() && sd > 0.0 && sd.is_finite()) {
            return Err(Error::domain(format!(
                "normal needs finite mean and sd > 0, got ({mean}, {sd})"
            )));
        }
        Ok(Normal { mean, sd })
    }
}

impl GroundTruth for Normal {
    fn cdf(&self, y: f64) -> f64 {
        normal_cdf((y - self.mean) / self.sd)
    }

    fn quantile(&self, p: f64) -> f64 {
        if p <= 0.0 {
            return f64::NEG_INFINITY;
        }
        if p >= 1.0 {
            return f64::INFINITY;
        }
        let z = Bisection::with_tol(1e-13)
            .solve(|z| normal_cdf(z) - p, -40.0, 40.0)
            .unwrap_or(0.0);
        self.mean + self.sd * z
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        let z: f64 = rng.sample(StandardNormal);
        self.mean + self.sd * z
    }

    fn support(&self) -> SupportBounds {
        SupportBounds::unbounded()
    }

    fn descriptor(&self) -> String {
        format!("normal({}, {})", self.mean, self.sd)
    }
}

/// Median of the best of `k` draws: `Q(0.5^(1/k))`.
pub fn true_median_curve(truth: &dyn GroundTruth, k: f64) -> Result<f64> {
    if !(k > 0.0) {
        return Err(Error::domain(format!("budget must be positive, got {k}")));
    }
    Ok(truth.quantile(0.5f64.powf(1.0 / k)))
}

/// Expected best of `k` draws, `hi - integral of F^k` over a finite support.
pub fn true_mean_curve(truth: &dyn GroundTruth, k: f64) -> Result<f64> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::domain(format!(
            "budget must be positive and finite, got {k}"
        )));
    }
    let SupportBounds { lo, hi } = truth.support();
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::domain(
            "the mean tuning curve needs a finite support",
        ));
    }
    let area = integrate(|y| truth.cdf(y).powf(k), lo, hi, 1e-10)?;
    Ok(hi - area)
}
