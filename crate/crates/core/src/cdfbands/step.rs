use super::Sample;
use crate::error::{Error, Result};

/// Right-continuous, nondecreasing step function with values in `[0, 1]`.
///
/// `values[j]` holds on `[knots[j], knots[j + 1])`; left of the first knot the
/// function equals `before`. Knots may repeat, in which case the last copy
/// wins.
#[derive(Debug, Clone, PartialEq)]
pub struct StepCdf {
    knots: Vec<f64>,
    values: Vec<f64>,
    before: f64,
}

impl StepCdf {
    pub fn new(knots: Vec<f64>, values: Vec<f64>, before: f64) -> Result<Self> {
        if knots.len() != values.len() {
            return Err(Error::Mismatch(format!(
                "{} knots but {} values",
                knots.len(),
                values.len()
            )));
        }
        if knots.windows(2).any(|w| !(w[0] <= w[1])) {
            return Err(Error::domain("knots must be ascending"));
        }
        let mut prev = before;
        for &v in std::iter::once(&before).chain(&values) {
            if !(0.0..=1.0).contains(&v) || v < prev {
                return Err(Error::domain(format!(
                    "step values must be nondecreasing in [0, 1], got {v}"
                )));
            }
            prev = v;
        }
        Ok(StepCdf {
            knots,
            values,
            before,
        })
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value_before_first(&self) -> f64 {
        self.before
    }

    /// Value right of the last knot.
    pub fn last_value(&self) -> f64 {
        self.values.last().copied().unwrap_or(self.before)
    }

    /// `F(y)`: the value at the greatest knot `<= y`.
    pub fn eval(&self, y: f64) -> f64 {
        match self.knots.partition_point(|&k| k <= y) {
            0 => self.before,
            j => self.values[j - 1],
        }
    }

    /// `F(y-)`: the limit from the left.
    pub fn left_limit(&self, y: f64) -> f64 {
        match self.knots.partition_point(|&k| k < y) {
            0 => self.before,
            j => self.values[j - 1],
        }
    }

    /// Applies a nondecreasing map to every value.
    pub(crate) fn map_values(&self, f: impl Fn(f64) -> f64) -> StepCdf {
        StepCdf {
            knots: self.knots.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
            before: f(self.before),
        }
    }
}

/// Empirical CDF: `F(y) = #{Y_i <= y} / n`.
pub fn ecdf(sample: &Sample) -> StepCdf {
    let n = sample.len() as f64;
    StepCdf {
        knots: sample.scores().to_vec(),
        values: (1..=sample.len()).map(|i| i as f64 / n).collect(),
        before: 0.0,
    }
}
