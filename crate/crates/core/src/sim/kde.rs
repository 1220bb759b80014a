use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::GroundTruth;
use crate::cdfbands::Sample;
use crate::error::{Error, Result};
use crate::numerics::{normal_cdf, Bisection};
use crate::rng::{self, Domain};
use crate::tuning::SupportBounds;

/// Kernels beyond this many bandwidths contribute nothing in double precision.
const KERNEL_REACH: f64 = 40.0;

/// Gaussian kernel density estimate, optionally reflected at the support
/// bounds.
///
/// With reflection each kernel is folded back at both bounds repeatedly, so
/// a draw is `c + h Z` mirrored into `[lo, hi]`. The CDF sums the folded
/// images that can reach the support and is renormalized so it runs exactly
/// from 0 to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Kde {
    centers: Vec<f64>,
    bandwidth: f64,
    support: SupportBounds,
    reflect: bool,
    folds: i64,
    total: f64,
}

impl Kde {
    /// Unreflected estimate on the whole line.
    pub fn new(centers: Vec<f64>, bandwidth: f64) -> Result<Self> {
        Self::build(centers, bandwidth, SupportBounds::unbounded(), false)
    }

    /// Estimate reflected at both ends of a finite `support`.
    pub fn reflected(centers: Vec<f64>, bandwidth: f64, support: SupportBounds) -> Result<Self> {
        if !support.is_finite() {
            return Err(Error::domain("reflection needs a finite support"));
        }
        if let Some(c) = centers.iter().find(|&&c| !support.contains(c)) {
            return Err(Error::domain(format!(
                "center {c} lies outside [{}, {}]",
                support.lo, support.hi
            )));
        }
        Self::build(centers, bandwidth, support, true)
    }

    fn build(
        centers: Vec<f64>,
        bandwidth: f64,
        support: SupportBounds,
        reflect: bool,
    ) -> Result<Self> {
        if centers.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some(&c) = centers.iter().find(|c| !c.is_finite()) {
            return Err(Error::NonFinite(c));
        }
        if !(bandwidth > 0.0 && bandwidth.is_finite()) {
            return Err(Error::domain(format!(
                "bandwidth must be positive, got {bandwidth}"
            )));
        }
        let folds = if reflect {
            (KERNEL_REACH * bandwidth / (2.0 * (support.hi - support.lo))).ceil() as i64 + 1
        } else {
            0
        };
        let mut kde = Kde {
            centers,
            bandwidth,
            support,
            reflect,
            folds,
            total: 1.0,
        };
        if reflect {
            kde.total = kde.raw_cdf(support.hi);
        }
        Ok(kde)
    }

    pub fn centers(&self) -> &[f64] {
        &self.centers
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn reflects(&self) -> bool {
        self.reflect
    }

    /// Unnormalized folded mass on `[lo, y]`.
    fn raw_cdf(&self, y: f64) -> f64 {
        let h = self.bandwidth;
        if !self.reflect {
            return self
                .centers
                .iter()
                .map(|&c| normal_cdf((y - c) / h))
                .sum::<f64>()
                / self.centers.len() as f64;
        }
        let SupportBounds { lo, hi } = self.support;
        let period = 2.0 * (hi - lo);
        let mut total = 0.0;
        for &c in &self.centers {
            for m in -self.folds..=self.folds {
                let shift = m as f64 * period;
                for image in [c + shift, 2.0 * lo - c + shift] {
                    total += normal_cdf((y - image) / h) - normal_cdf((lo - image) / h);
                }
            }
        }
        total / self.centers.len() as f64
    }

    fn fold(&self, x: f64) -> f64 {
        let SupportBounds { lo, hi } = self.support;
        let width = hi - lo;
        let r = (x - lo).rem_euclid(2.0 * width);
        let folded = if r > width { 2.0 * width - r } else { r };
        (lo + folded).clamp(lo, hi)
    }

    fn search_range(&self) -> (f64, f64) {
        if self.reflect {
            return (self.support.lo, self.support.hi);
        }
        let reach = KERNEL_REACH * self.bandwidth;
        let lo = self.centers.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = self
            .centers
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        (lo - reach, hi + reach)
    }
}

impl GroundTruth for Kde {
    fn cdf(&self, y: f64) -> f64 {
        if self.reflect {
            if y <= self.support.lo {
                return 0.0;
            }
            if y >= self.support.hi {
                return 1.0;
            }
        }
        (self.raw_cdf(y) / self.total).clamp(0.0, 1.0)
    }

    fn quantile(&self, p: f64) -> f64 {
        let (lo, hi) = self.search_range();
        if p <= 0.0 {
            return if self.reflect { lo } else { f64::NEG_INFINITY };
        }
        if p >= 1.0 {
            return if self.reflect { hi } else { f64::INFINITY };
        }
        let tol = 1e-13 * (hi - lo);
        Bisection::with_tol(tol)
            .solve(|y| self.cdf(y) - p, lo, hi)
            .unwrap_or(if p < 0.5 { lo } else { hi })
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        let c = self.centers[rng.random_range(0..self.centers.len())];
        let z: f64 = rng.sample(StandardNormal);
        let x = c + self.bandwidth * z;
        if self.reflect {
            self.fold(x)
        } else {
            x
        }
    }

    fn support(&self) -> SupportBounds {
        self.support
    }

    fn descriptor(&self) -> String {
        let reflect = if self.reflect {
            format!(", reflected on [{}, {}]", self.support.lo, self.support.hi)
        } else {
            String::new()
        };
        format!(
            "kde({} centers, bandwidth {}{reflect})",
            self.centers.len(),
            self.bandwidth
        )
    }
}

/// `m` seeded draws from `kde`.
pub fn kde_sample(kde: &Kde, m: usize, seed: u64) -> Result<Sample> {
    if m == 0 {
        return Err(Error::EmptySample);
    }
    let mut rng = rng::stream(seed, Domain::Kde, 0);
    Sample::new((0..m).map(|_| kde.draw(&mut rng)).collect())
}

/// Kolmogorov distance between the estimate fitted to `data` and the
/// empirical CDF of `data`, for each candidate bandwidth.
pub fn bandwidth_report(
    data: &Sample,
    candidates: &[f64],
    support: Option<SupportBounds>,
) -> Result<Vec<(f64, f64)>> {
    candidates
        .iter()
        .map(|&h| {
            let kde = match support {
                Some(s) => Kde::reflected(data.scores().to_vec(), h, s)?,
                None => Kde::new(data.scores().to_vec(), h)?,
            };
            let n = data.len() as f64;
            let distance = data
                .scores()
                .iter()
                .enumerate()
                .map(|(i, &y)| {
                    let f = kde.cdf(y);
                    (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
                })
                .fold(0.0, f64::max);
            Ok((h, distance))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::integrate;
    use approx::assert_abs_diff_eq;

    fn bimodal() -> Kde {
        Kde::reflected(vec![0.3, 0.7], 0.05, SupportBounds::unit()).unwrap()
    }

    /// Folded density written out independently of the CDF code.
    fn folded_density(centers: &[f64], h: f64, y: f64) -> f64 {
        let phi = |z: f64| (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let mut total = 0.0;
        for &c in centers {
            for m in -3..=3 {
                let shift = 2.0 * m as f64;
                total += phi((y - c - shift) / h) + phi((y + c - shift) / h);
            }
        }
        total / (h * centers.len() as f64)
    }

    #[test]
    fn reflection_at_a_boundary_center() {
        let kde = Kde::reflected(vec![0.0], 0.1, SupportBounds::unit()).unwrap();
        assert_eq!(kde.cdf(0.0), 0.0);
        assert_eq!(kde.cdf(1.0), 1.0);
        // folding doubles the right half-normal
        assert_abs_diff_eq!(kde.cdf(0.1), 2.0 * (normal_cdf(1.0) - 0.5), epsilon = 1e-12);
    }

    #[test]
    fn unreflected_is_symmetric() {
        let kde = Kde::new(vec![0.4], 0.2).unwrap();
        assert_abs_diff_eq!(kde.cdf(0.4), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(kde.quantile(0.5), 0.4, epsilon = 1e-10);
        assert_eq!(kde.quantile(1.0), f64::INFINITY);
    }

    #[test]
    fn bimodal_symmetry_and_quadrature() {
        let kde = bimodal();
        assert_abs_diff_eq!(kde.cdf(0.5), 0.5, epsilon = 1e-6);
        assert_abs_diff_eq!(kde.quantile(0.5), 0.5, epsilon = 1e-9);
        for y in [0.05, 0.2, 0.5, 0.66, 0.93] {
            let area = integrate(|t| folded_density(&[0.3, 0.7], 0.05, t), 0.0, y, 1e-12).unwrap();
            assert_abs_diff_eq!(kde.cdf(y), area, epsilon = 1e-9);
        }
    }

    #[test]
    fn cdf_monotone_with_exact_ends() {
        let kde = Kde::reflected(vec![0.02, 0.5, 0.97, 0.99], 0.3, SupportBounds::unit()).unwrap();
        assert_abs_diff_eq!(kde.cdf(0.0), 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(kde.cdf(1.0 - 1e-15), 1.0, epsilon = 1e-9);
        let mut prev = 0.0;
        for i in 0..=1000 {
            let f = kde.cdf(i as f64 / 1000.0);
            assert!(f >= prev - 1e-15);
            prev = f;
        }
    }

    #[test]
    fn quantile_inverts_cdf() {
        let kde = Kde::reflected(vec![0.1, 0.45, 0.8, 0.82], 0.07, SupportBounds::unit()).unwrap();
        for i in 1..100 {
            let y = i as f64 / 100.0;
            assert_abs_diff_eq!(kde.quantile(kde.cdf(y)), y, epsilon = 1e-6);
        }
    }

    #[test]
    fn draws_follow_the_cdf() {
        let kde = bimodal();
        let sample = kde_sample(&kde, 100_000, 11).unwrap();
        let n = sample.len() as f64;
        let distance = sample
            .scores()
            .iter()
            .enumerate()
            .map(|(i, &y)| {
                let f = kde.cdf(y);
                (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
            })
            .fold(0.0, f64::max);
        assert!(distance < 0.01, "KS distance {distance}");
        assert!(sample.min() >= 0.0 && sample.max() <= 1.0);
        assert_eq!(kde_sample(&kde, 0, 1), Err(Error::EmptySample));
    }

    #[test]
    fn validation() {
        assert!(Kde::reflected(vec![1.5], 0.1, SupportBounds::unit()).is_err());
        assert!(Kde::reflected(vec![0.5], 0.1, SupportBounds::unbounded()).is_err());
        assert!(Kde::new(vec![0.5], 0.0).is_err());
        assert!(Kde::new(vec![], 0.1).is_err());
    }

    #[test]
    fn bandwidth_report_prefers_fitting_widths() {
        let data = kde_sample(&bimodal(), 400, 2).unwrap();
        let report =
            bandwidth_report(&data, &[0.01, 0.05, 1.0], Some(SupportBounds::unit())).unwrap();
        assert_eq!(report.len(), 3);
        assert!(report[0].1 < report[2].1);
    }
}
