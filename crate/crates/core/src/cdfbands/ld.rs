use rand::Rng;
use rayon::prelude::*;

use super::{
    check_confidence, check_replicates, empirical_threshold, BandMethod, CdfBands, Sample, StepCdf,
};
use crate::error::{Error, Result};
use crate::numerics::{
    self, coverage_unchecked, hd_coverage_bound, hd_coverage_given_cdf, inc_beta, BetaParams,
    IntervalKind, ProbabilityInterval,
};
use crate::rng::{self, Domain};

/// Simulated null distribution of `L_n`, the largest coverage among the
/// smallest Beta intervals containing each uniform order statistic.
#[derive(Debug, Clone, PartialEq)]
pub struct LnNull {
    pub n: usize,
    pub kind: IntervalKind,
    pub replicates: usize,
    pub seed: u64,
    pub sorted_statistics: Vec<f64>,
}

impl LnNull {
    /// Empirical `confidence` quantile of `L_n`.
    pub fn threshold(&self, confidence: f64) -> Result<f64> {
        check_confidence(confidence)?;
        Ok(empirical_threshold(&self.sorted_statistics, confidence))
    }
}

fn order_statistic_laws(n: usize, kind: IntervalKind) -> Vec<(BetaParams, IntervalKind)> {
    (1..=n)
        .map(|i| {
            let p = BetaParams::order_statistic(i, n).expect("1 <= i <= n");
            (p, kind.effective(&p))
        })
        .collect()
}

/// `L_n` for sorted points `x` in `[0, 1]`.
///
/// Highest density coverages need a root search, so candidates are visited in
/// order of a cheap upper bound and the search stops once no remaining bound
/// can beat the running maximum. The result equals the plain maximum.
fn ln_statistic(x: &[f64], laws: &[(BetaParams, IntervalKind)]) -> f64 {
    let mut pending: Vec<(f64, usize, f64)> = Vec::with_capacity(x.len());
    let mut best = 0.0f64;
    for (i, (&xi, (p, kind))) in x.iter().zip(laws).enumerate() {
        match kind {
            IntervalKind::EqualTailed => best = best.max(coverage_unchecked(p, xi, *kind)),
            IntervalKind::HighestDensity => {
                let cdf = inc_beta(p, xi);
                pending.push((hd_coverage_bound(p, xi, cdf), i, cdf));
            }
        }
    }
    pending.sort_unstable_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    for (bound, i, cdf) in pending {
        if bound <= best {
            break;
        }
        best = best.max(hd_coverage_given_cdf(&laws[i].0, x[i], cdf));
    }
    best
}

/// Simulates `replicates` draws of `L_n`.
///
/// Replicate `r` uses its own random stream, so the sorted output depends only
/// on `(n, kind, replicates, seed)`.
pub fn simulate_ln_null(
    n: usize,
    kind: IntervalKind,
    replicates: usize,
    seed: u64,
) -> Result<LnNull> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    check_replicates(replicates)?;
    let laws = order_statistic_laws(n, kind);
    let mut draws: Vec<f64> = (0..replicates as u64)
        .into_par_iter()
        .map_init(
            || Vec::with_capacity(n),
            |u, r| {
                let mut rng = rng::stream(seed, Domain::LnNull, r);
                u.clear();
                u.extend((0..n).map(|_| rng.random::<f64>()));
                u.sort_by(f64::total_cmp);
                ln_statistic(u, &laws)
            },
        )
        .collect();
    draws.sort_by(f64::total_cmp);
    Ok(LnNull {
        n,
        kind,
        replicates,
        seed,
        sorted_statistics: draws,
    })
}

/// Per-order-statistic intervals for one `(n, kind, confidence)`.
///
/// These depend on the sample only through `n`, so one calibration can be
/// applied to many samples.
#[derive(Debug, Clone, PartialEq)]
pub struct LdCalibration {
    pub n: usize,
    pub kind: IntervalKind,
    pub confidence: f64,
    /// Coverage of each pointwise interval.
    pub threshold: f64,
    pub intervals: Vec<ProbabilityInterval>,
}

impl LdCalibration {
    pub fn new(null: &LnNull, confidence: f64) -> Result<Self> {
        let threshold = null.threshold(confidence)?;
        Self::from_threshold(null.n, null.kind, confidence, threshold)
    }

    pub fn from_threshold(
        n: usize,
        kind: IntervalKind,
        confidence: f64,
        threshold: f64,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&threshold) {
            return Err(Error::domain(format!(
                "interval coverage must lie in [0, 1], got {threshold}"
            )));
        }
        let intervals = (1..=n)
            .map(|i| {
                if threshold >= 1.0 {
                    return Ok(ProbabilityInterval { lo: 0.0, hi: 1.0 });
                }
                let p = BetaParams::order_statistic(i, n)?;
                numerics::interval(&p, threshold, kind)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LdCalibration {
            n,
            kind,
            confidence,
            threshold,
            intervals,
        })
    }

    /// Extends the order-statistic intervals to the whole line.
    ///
    /// A lower bound at `Y_(i)` also holds to its right and an upper bound
    /// also holds to its left, so the lower band is the running maximum of
    /// `l_(i)` and the upper band the running minimum of `u_(i)` taken from
    /// the right, reaching 1 at `Y_(n)`.
    pub fn apply(&self, sample: &Sample) -> Result<CdfBands> {
        let n = sample.len();
        if n != self.n {
            return Err(Error::Mismatch(format!(
                "calibrated for n = {} but sample has n = {n}",
                self.n
            )));
        }
        let knots = sample.scores().to_vec();
        let mut lower = Vec::with_capacity(n);
        let mut running = 0.0f64;
        for iv in &self.intervals {
            running = running.max(iv.lo);
            lower.push(running);
        }
        // upper[j] holds on [Y_(j+1), Y_(j+2)), bounded by u_(j+2) and beyond
        let mut upper = vec![1.0; n];
        let mut running = 1.0f64;
        for j in (0..n - 1).rev() {
            running = running.min(self.intervals[j + 1].hi);
            upper[j] = running;
        }
        let before_upper = running.min(self.intervals[0].hi);
        let method = match self.kind {
            IntervalKind::EqualTailed => BandMethod::LdEqualTailed,
            IntervalKind::HighestDensity => BandMethod::LdHighestDensity,
        };
        Ok(CdfBands {
            lower: StepCdf::new(knots.clone(), lower, 0.0)?,
            upper: StepCdf::new(knots, upper, before_upper)?,
            confidence: self.confidence,
            method,
            threshold: self.threshold,
            sample: sample.clone(),
            warnings: CdfBands::tie_warnings(sample),
        })
    }
}

/// LD bands for `sample` at `confidence`, calibrated by `null`.
pub fn ld_bands(
    sample: &Sample,
    confidence: f64,
    kind: IntervalKind,
    null: &LnNull,
) -> Result<CdfBands> {
    if null.n != sample.len() {
        return Err(Error::Mismatch(format!(
            "L_n null simulated for n = {} but sample has n = {}",
            null.n,
            sample.len()
        )));
    }
    if null.kind != kind {
        return Err(Error::Mismatch(format!(
            "L_n null simulated for {:?}, bands requested for {kind:?}",
            null.kind
        )));
    }
    LdCalibration::new(null, confidence)?.apply(sample)
}
