use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cdfbands::{BandMethod, DEFAULT_REPLICATES, MIN_REPLICATES};
use crate::error::{Error, Result};
use crate::tuning::{CurveKind, SupportBounds, DEFAULT_NONTRIVIAL_FRACTION};

/// How to turn search rounds into cost on the output's cost axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CostScale {
    /// One unit per round.
    None,
    /// The model's average `cost` column per round.
    Avg,
}

/// Settings shared by all analyses. Defaults: 80% confidence, LD bands with
/// highest density intervals, median curves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisConfig {
    pub confidence: f64,
    pub method: BandMethod,
    pub curve: CurveKind,
    /// Score bounds as `LO:HI`; needed for informative mean bands.
    #[serde(with = "support_text")]
    pub support: Option<SupportBounds>,
    /// Metric name; `accuracy` and `f1` imply a `[0, 1]` support.
    pub metric: Option<String>,
    /// Largest budget on the grid; defaults to the sample size.
    pub k_max: Option<usize>,
    pub cost_scale: CostScale,
    pub seed: u64,
    /// Replicates for simulated null distributions.
    pub replicates: usize,
    pub nontrivial_fraction: f64,
    /// Analyze a random subset of this many rounds per model.
    pub subsample: Option<usize>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            confidence: 0.8,
            method: BandMethod::LdHighestDensity,
            curve: CurveKind::Median,
            support: None,
            metric: None,
            k_max: None,
            cost_scale: CostScale::None,
            seed: 0,
            replicates: DEFAULT_REPLICATES,
            nontrivial_fraction: DEFAULT_NONTRIVIAL_FRACTION,
            subsample: None,
        }
    }
}

impl AnalysisConfig {
    /// Reads a JSON config file; missing fields take their defaults.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::domain(format!("bad config {}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return Err(Error::domain(format!(
                "confidence must lie in (0, 1), got {}",
                self.confidence
            )));
        }
        if self.method != BandMethod::Dkw && self.replicates < MIN_REPLICATES {
            return Err(Error::domain(format!(
                "at least {MIN_REPLICATES} replicates are required, got {}",
                self.replicates
            )));
        }
        if !(self.nontrivial_fraction > 0.0 && self.nontrivial_fraction <= 1.0) {
            return Err(Error::domain(format!(
                "nontrivial fraction must lie in (0, 1], got {}",
                self.nontrivial_fraction
            )));
        }
        if self.k_max == Some(0) {
            return Err(Error::domain("k-max must be positive"));
        }
        if self.subsample == Some(0) {
            return Err(Error::domain("subsample size must be positive"));
        }
        if let Some(m) = &self.metric {
            if self.support.is_none() && !is_unit_metric(m) {
                return Err(Error::domain(format!(
                    "unknown metric `{m}`; give --support explicitly"
                )));
            }
        }
        Ok(())
    }

    /// Explicit support, else the metric's natural range, else unbounded.
    pub fn resolved_support(&self) -> SupportBounds {
        match (&self.support, &self.metric) {
            (Some(s), _) => *s,
            (None, Some(m)) if is_unit_metric(m) => SupportBounds::unit(),
            _ => SupportBounds::unbounded(),
        }
    }
}

fn is_unit_metric(metric: &str) -> bool {
    matches!(
        metric.to_ascii_lowercase().as_str(),
        "accuracy" | "acc" | "f1"
    )
}

mod support_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::tuning::SupportBounds;

    pub fn serialize<S: Serializer>(v: &Option<SupportBounds>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(b) => s.serialize_str(&format!("{}:{}", b.lo, b.hi)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<SupportBounds>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| t.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}
