use super::{
    dkw_epsilon, simulate_ln_null, BandMethod, CdfBands, KsNull, LdCalibration, LnNull, Sample,
};
use crate::error::{Error, Result};

/// Null distribution for any band method at a fixed `n`.
///
/// Simulating the null dominates the cost of building bands, so it is kept
/// separate from the confidence level and the sample.
#[derive(Debug, Clone, PartialEq)]
pub enum BandNull {
    Dkw { n: usize },
    Ks(KsNull),
    Ld(LnNull),
}

impl BandNull {
    /// `replicates` and `seed` are ignored for DKW, which is closed form.
    pub fn simulate(
        method: BandMethod,
        n: usize,
        replicates: usize,
        seed: u64,
    ) -> Result<BandNull> {
        if n == 0 {
            return Err(Error::EmptySample);
        }
        Ok(match method.interval_kind() {
            Some(kind) => BandNull::Ld(simulate_ln_null(n, kind, replicates, seed)?),
            None if method == BandMethod::Ks => {
                BandNull::Ks(KsNull::simulate(n, replicates, seed)?)
            }
            None => BandNull::Dkw { n },
        })
    }

    pub fn n(&self) -> usize {
        match self {
            BandNull::Dkw { n } => *n,
            BandNull::Ks(null) => null.n,
            BandNull::Ld(null) => null.n,
        }
    }

    pub fn method(&self) -> BandMethod {
        match self {
            BandNull::Dkw { .. } => BandMethod::Dkw,
            BandNull::Ks(_) => BandMethod::Ks,
            BandNull::Ld(null) => match null.kind {
                crate::numerics::IntervalKind::EqualTailed => BandMethod::LdEqualTailed,
                crate::numerics::IntervalKind::HighestDensity => BandMethod::LdHighestDensity,
            },
        }
    }

    pub fn calibrate(&self, confidence: f64) -> Result<BandCalibration> {
        let shape = match self {
            BandNull::Dkw { n } => Shape::Width(dkw_epsilon(*n, confidence)?),
            BandNull::Ks(null) => Shape::Width(null.critical_value(confidence)?),
            BandNull::Ld(null) => Shape::Ld(LdCalibration::new(null, confidence)?),
        };
        Ok(BandCalibration {
            method: self.method(),
            n: self.n(),
            confidence,
            shape,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Width(f64),
    Ld(LdCalibration),
}

/// Everything needed to turn a sample of size `n` into bands.
#[derive(Debug, Clone, PartialEq)]
pub struct BandCalibration {
    pub method: BandMethod,
    pub n: usize,
    pub confidence: f64,
    shape: Shape,
}

impl BandCalibration {
    /// Half-width for DKW/KS, pointwise interval coverage for LD.
    pub fn threshold(&self) -> f64 {
        match &self.shape {
            Shape::Width(w) => *w,
            Shape::Ld(cal) => cal.threshold,
        }
    }

    pub fn apply(&self, sample: &Sample) -> Result<CdfBands> {
        if sample.len() != self.n {
            return Err(Error::Mismatch(format!(
                "bands calibrated for n = {} but sample has n = {}",
                self.n,
                sample.len()
            )));
        }
        match &self.shape {
            Shape::Width(w) => Ok(CdfBands::constant_width(
                sample,
                *w,
                self.confidence,
                self.method,
            )),
            Shape::Ld(cal) => cal.apply(sample),
        }
    }
}

/// Bands for `sample` with any method, simulating the null as needed.
pub fn build_bands(
    sample: &Sample,
    confidence: f64,
    method: BandMethod,
    replicates: usize,
    seed: u64,
) -> Result<CdfBands> {
    BandNull::simulate(method, sample.len(), replicates, seed)?
        .calibrate(confidence)?
        .apply(sample)
}
