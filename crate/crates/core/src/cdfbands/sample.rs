use crate::error::{Error, Result};

/// Validation scores from independent search rounds, kept in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    scores: Vec<f64>,
    has_ties: bool,
}

impl Sample {
    pub fn new(mut scores: Vec<f64>) -> Result<Self> {
        if scores.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some(&bad) = scores.iter().find(|s| !s.is_finite()) {
            return Err(Error::NonFinite(bad));
        }
        scores.sort_by(f64::total_cmp);
        let has_ties = scores.windows(2).any(|w| w[0] == w[1]);
        Ok(Sample { scores, has_ties })
    }

    /// Order statistics `Y_(1) <= ... <= Y_(n)`.
    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn has_ties(&self) -> bool {
        self.has_ties
    }

    pub fn min(&self) -> f64 {
        self.scores[0]
    }

    pub fn max(&self) -> f64 {
        self.scores[self.scores.len() - 1]
    }
}
