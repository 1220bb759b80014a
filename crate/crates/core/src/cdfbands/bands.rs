use rand::Rng;
use rayon::prelude::*;

use super::{
    check_confidence, check_replicates, ecdf, empirical_threshold, BandMethod, Sample, StepCdf,
    Warning,
};
use crate::error::{Error, Result};
use crate::rng::{self, Domain};

/// Simultaneous lower and upper bounds on a CDF.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfBands {
    pub lower: StepCdf,
    pub upper: StepCdf,
    pub confidence: f64,
    pub method: BandMethod,
    /// Half-width for DKW/KS, interval coverage for LD.
    pub threshold: f64,
    pub sample: Sample,
    pub warnings: Vec<Warning>,
}

impl CdfBands {
    pub fn n(&self) -> usize {
        self.sample.len()
    }

    pub(crate) fn tie_warnings(sample: &Sample) -> Vec<Warning> {
        if sample.has_ties() {
            vec![Warning::TiesPresent]
        } else {
            Vec::new()
        }
    }

    /// Constant-width bands `eCDF ± epsilon`, clipped to `[0, 1]`.
    pub(crate) fn constant_width(
        sample: &Sample,
        epsilon: f64,
        confidence: f64,
        method: BandMethod,
    ) -> CdfBands {
        let center = ecdf(sample);
        CdfBands {
            lower: center.map_values(|v| (v - epsilon).max(0.0)),
            upper: center.map_values(|v| (v + epsilon).min(1.0)),
            confidence,
            method,
            threshold: epsilon,
            sample: sample.clone(),
            warnings: Self::tie_warnings(sample),
        }
    }
}

/// DKW half-width `sqrt(ln(2 / alpha) / (2 n))`.
pub fn dkw_epsilon(n: usize, confidence: f64) -> Result<f64> {
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::domain(format!(
            "DKW confidence must lie in (0, 1), got {confidence}"
        )));
    }
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let alpha = 1.0 - confidence;
    Ok(((2.0 / alpha).ln() / (2.0 * n as f64)).sqrt())
}

pub fn dkw_bands(sample: &Sample, confidence: f64) -> Result<CdfBands> {
    let epsilon = dkw_epsilon(sample.len(), confidence)?;
    Ok(CdfBands::constant_width(
        sample,
        epsilon,
        confidence,
        BandMethod::Dkw,
    ))
}

/// Simulated null distribution of the Kolmogorov-Smirnov statistic `D_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct KsNull {
    pub n: usize,
    pub replicates: usize,
    pub seed: u64,
    pub sorted_statistics: Vec<f64>,
}

impl KsNull {
    /// Draws `D_n = max_i max(i/n - U_(i), U_(i) - (i-1)/n)` for uniform samples.
    pub fn simulate(n: usize, replicates: usize, seed: u64) -> Result<KsNull> {
        if n == 0 {
            return Err(Error::EmptySample);
        }
        check_replicates(replicates)?;
        let nf = n as f64;
        let mut draws: Vec<f64> = (0..replicates as u64)
            .into_par_iter()
            .map_init(
                || Vec::with_capacity(n),
                |u, r| {
                    let mut rng = rng::stream(seed, Domain::KsNull, r);
                    u.clear();
                    u.extend((0..n).map(|_| rng.random::<f64>()));
                    u.sort_by(f64::total_cmp);
                    u.iter()
                        .enumerate()
                        .map(|(i, &x)| ((i + 1) as f64 / nf - x).max(x - i as f64 / nf))
                        .fold(0.0, f64::max)
                },
            )
            .collect();
        draws.sort_by(f64::total_cmp);
        Ok(KsNull {
            n,
            replicates,
            seed,
            sorted_statistics: draws,
        })
    }

    pub fn critical_value(&self, confidence: f64) -> Result<f64> {
        check_confidence(confidence)?;
        Ok(empirical_threshold(&self.sorted_statistics, confidence))
    }
}

/// Monte Carlo `confidence` quantile of `D_n` under a continuous CDF.
pub fn ks_critical_value(n: usize, confidence: f64, replicates: usize, seed: u64) -> Result<f64> {
    check_confidence(confidence)?;
    KsNull::simulate(n, replicates, seed)?.critical_value(confidence)
}

/// Kolmogorov-Smirnov bands `eCDF ± d`, with `d` read off `null`.
pub fn ks_bands(sample: &Sample, confidence: f64, null: &KsNull) -> Result<CdfBands> {
    if null.n != sample.len() {
        return Err(Error::Mismatch(format!(
            "KS null simulated for n = {} but sample has n = {}",
            null.n,
            sample.len()
        )));
    }
    let d = null.critical_value(confidence)?;
    Ok(CdfBands::constant_width(
        sample,
        d,
        confidence,
        BandMethod::Ks,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn uniform_sample(n: usize) -> Sample {
        Sample::new((1..=n).map(|i| i as f64 / (n + 1) as f64).collect()).unwrap()
    }

    #[test]
    fn dkw_epsilon_examples() {
        assert_abs_diff_eq!(
            dkw_epsilon(50, 0.95).unwrap(),
            (40f64.ln() / 100.0).sqrt(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(dkw_epsilon(50, 0.95).unwrap(), 0.1920646, epsilon = 1e-6);
        assert_abs_diff_eq!(dkw_epsilon(200, 0.90).unwrap(), 0.086541, epsilon = 1e-6);
        assert!(dkw_epsilon(10, 1.0).is_err());
        assert!(dkw_epsilon(10, 0.0).is_err());
    }

    #[test]
    fn dkw_bands_clip() {
        let b = dkw_bands(&uniform_sample(10), 0.9).unwrap();
        assert_eq!(b.lower.value_before_first(), 0.0);
        assert_eq!(b.lower.values()[0], 0.0);
        assert_eq!(b.upper.last_value(), 1.0);
        assert!(b
            .lower
            .values()
            .iter()
            .zip(b.upper.values())
            .all(|(l, u)| l <= u));
    }

    #[test]
    fn ks_critical_value_single_observation() {
        // P(D_1 <= d) = 2d - 1 on [1/2, 1]
        let d = ks_critical_value(1, 0.95, 20_000, 1).unwrap();
        assert_abs_diff_eq!(d, 0.975, epsilon = 0.002);
        let d = ks_critical_value(1, 0.0, 20_000, 1).unwrap();
        assert_abs_diff_eq!(d, 0.5, epsilon = 0.001);
    }

    /// Asymptotic Kolmogorov distribution `1 - 2 sum (-1)^(j-1) exp(-2 j² x²)`.
    fn kolmogorov_cdf(x: f64) -> f64 {
        1.0 - 2.0
            * (1..100)
                .map(|j| {
                    let j = j as f64;
                    (-1f64).powf(j - 1.0) * (-2.0 * j * j * x * x).exp()
                })
                .sum::<f64>()
    }

    #[test]
    fn ks_critical_value_matches_asymptotics() {
        let k95 = crate::numerics::bisect(|x| kolmogorov_cdf(x) - 0.95, 0.5, 3.0, 1e-12).unwrap();
        assert_abs_diff_eq!(k95, 1.3581, epsilon = 1e-4);
        let d = ks_critical_value(100, 0.95, 20_000, 3).unwrap();
        assert!((d - k95 / 10.0).abs() <= 0.05 * k95 / 10.0, "d = {d}");
    }

    #[test]
    fn ks_rejects_few_replicates() {
        assert!(ks_critical_value(5, 0.9, 999, 0).is_err());
    }

    #[test]
    fn ks_single_observation_bands() {
        let sample = Sample::new(vec![0.5]).unwrap();
        let null = KsNull::simulate(1, 20_000, 5).unwrap();
        let b = ks_bands(&sample, 0.95, &null).unwrap();
        assert_abs_diff_eq!(b.upper.eval(0.4), 0.975, epsilon = 0.002);
        assert_eq!(b.lower.eval(0.4), 0.0);
        assert_abs_diff_eq!(b.lower.eval(0.5), 0.025, epsilon = 0.002);
        assert_eq!(b.upper.eval(0.5), 1.0);
    }

    #[test]
    fn ks_narrower_than_dkw() {
        for n in [1, 5, 20, 60] {
            let null = KsNull::simulate(n, 5_000, 11).unwrap();
            for conf in [0.5, 0.8, 0.95] {
                assert!(null.critical_value(conf).unwrap() <= dkw_epsilon(n, conf).unwrap());
            }
        }
    }

    #[test]
    fn ks_collapses_at_zero_confidence() {
        let null = KsNull::simulate(40, 5_000, 2).unwrap();
        let d0 = null.critical_value(0.0).unwrap();
        assert!(d0 < null.critical_value(0.5).unwrap());
        assert!(d0 < 0.1);
    }

    #[test]
    fn ks_mismatched_null() {
        let null = KsNull::simulate(3, 1_000, 0).unwrap();
        assert!(matches!(
            ks_bands(&uniform_sample(4), 0.5, &null),
            Err(Error::Mismatch(_))
        ));
    }
}
