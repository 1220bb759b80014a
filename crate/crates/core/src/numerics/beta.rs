//! Beta distribution CDF, quantile and the two interval families used to bound
//! the CDF at each order statistic.

use serde::{Deserialize, Serialize};

use super::roots::Bisection;
use super::special::ln_beta;
use crate::error::{Error, Result};

const CF_MAX_ITER: usize = 10_000;
const CF_EPS: f64 = 1e-16;
const CF_TINY: f64 = 1e-300;

/// Shape parameters of a Beta distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaParams {
    a: f64,
    b: f64,
    ln_norm: f64,
}

impl BetaParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::domain(format!(
                "Beta shapes must be positive and finite, got ({a}, {b})"
            )));
        }
        Ok(BetaParams {
            a,
            b,
            ln_norm: ln_beta(a, b),
        })
    }

    /// Law of the `i`-th of `n` uniform order statistics, `Beta(i, n + 1 - i)`.
    pub fn order_statistic(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::domain(format!(
                "order statistic index {i} outside 1..={n}"
            )));
        }
        Self::new(i as f64, (n + 1 - i) as f64)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Mode `(a - 1) / (a + b - 2)`, defined when both shapes are at least one
    /// and not both equal to one.
    pub fn mode(&self) -> Option<f64> {
        if self.a >= 1.0 && self.b >= 1.0 && !(self.a == 1.0 && self.b == 1.0) {
            Some((self.a - 1.0) / (self.a + self.b - 2.0))
        } else {
            None
        }
    }

    /// Log density without the normalizing constant.
    pub(crate) fn ln_kernel(&self, x: f64) -> f64 {
        let left = if self.a == 1.0 {
            0.0
        } else {
            (self.a - 1.0) * x.ln()
        };
        let right = if self.b == 1.0 {
            0.0
        } else {
            (self.b - 1.0) * (-x).ln_1p()
        };
        left + right
    }

    pub fn density(&self, x: f64) -> f64 {
        if !(0.0..=1.0).contains(&x) {
            return 0.0;
        }
        (self.ln_kernel(x) - self.ln_norm).exp()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        inc_beta(self, x)
    }

    pub fn quantile(&self, q: f64) -> f64 {
        quantile_unchecked(self, q)
    }
}

/// A sub-interval of `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityInterval {
    pub lo: f64,
    pub hi: f64,
}

impl ProbabilityInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(0.0 <= lo && lo <= hi && hi <= 1.0) {
            return Err(Error::domain(format!(
                "invalid probability interval [{lo}, {hi}]"
            )));
        }
        Ok(ProbabilityInterval { lo, hi })
    }

    pub(crate) fn clamped(lo: f64, hi: f64) -> Self {
        let lo = lo.clamp(0.0, 1.0);
        let hi = hi.clamp(0.0, 1.0);
        ProbabilityInterval { lo: lo.min(hi), hi }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntervalKind {
    EqualTailed,
    HighestDensity,
}

impl IntervalKind {
    /// The kind actually used for `params`.
    ///
    /// `Beta(1, 1)` has a flat density, so its highest density interval is not
    /// unique; the equal-tailed interval stands in for it. This only arises
    /// for a single observation.
    pub fn effective(self, params: &BetaParams) -> IntervalKind {
        match self {
            IntervalKind::HighestDensity if params.a == 1.0 && params.b == 1.0 => {
                IntervalKind::EqualTailed
            }
            kind => kind,
        }
    }
}

/// Regularized incomplete beta `I_x(a, b)` via Lentz's continued fraction.
pub(crate) fn inc_beta(p: &BetaParams, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let (a, b) = (p.a, p.b);
    let ln_front = a * x.ln() + b * (-x).ln_1p() - p.ln_norm;
    if x < (a + 1.0) / (a + b + 2.0) {
        ln_front.exp() * continued_fraction(a, b, x) / a
    } else {
        1.0 - ln_front.exp() * continued_fraction(b, a, 1.0 - x) / b
    }
}

fn continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < CF_TINY {
        d = CF_TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=CF_MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < CF_TINY {
            d = CF_TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < CF_TINY {
            c = CF_TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < CF_TINY {
            d = CF_TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < CF_TINY {
            c = CF_TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < CF_EPS {
            break;
        }
    }
    h
}

fn quantile_unchecked(p: &BetaParams, q: f64) -> f64 {
    if q <= 0.0 {
        return 0.0;
    }
    if q >= 1.0 {
        return 1.0;
    }
    // closed forms for the monotone-density shapes
    if p.a == 1.0 {
        return -((-q).ln_1p() / p.b).exp_m1();
    }
    if p.b == 1.0 {
        return (q.ln() / p.a).exp();
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..1100 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 4.0 * f64::EPSILON * hi {
            break;
        }
        if inc_beta(p, mid) < q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must lie in [0, 1], got {x}")))
    }
}

fn check_coverage(coverage: f64) -> Result<()> {
    if (0.0..1.0).contains(&coverage) {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "coverage must lie in [0, 1), got {coverage}"
        )))
    }
}

fn check_hd_shape(p: &BetaParams) -> Result<()> {
    if p.a < 1.0 || p.b < 1.0 {
        return Err(Error::UnsupportedShape {
            a: p.a,
            b: p.b,
            reason: "density is unbounded",
        });
    }
    if p.a == 1.0 && p.b == 1.0 {
        return Err(Error::UnsupportedShape {
            a: p.a,
            b: p.b,
            reason: "density is flat",
        });
    }
    Ok(())
}

/// `I_x(a, b)`, the Beta CDF at `x`.
pub fn beta_cdf(p: &BetaParams, x: f64) -> Result<f64> {
    check_unit("x", x)?;
    Ok(inc_beta(p, x))
}

/// Inverse of [`beta_cdf`], found by bisection on `[0, 1]` to near machine
/// precision.
pub fn beta_quantile(p: &BetaParams, q: f64) -> Result<f64> {
    check_unit("quantile level", q)?;
    Ok(quantile_unchecked(p, q))
}

pub fn equal_tailed_interval(p: &BetaParams, coverage: f64) -> Result<ProbabilityInterval> {
    check_coverage(coverage)?;
    let lo = quantile_unchecked(p, 0.5 * (1.0 - coverage));
    let hi = quantile_unchecked(p, 0.5 * (1.0 + coverage));
    Ok(ProbabilityInterval::clamped(lo, hi))
}

/// Highest density interval holding `coverage` of the mass.
///
/// Monotone densities put the interval against the boundary where the density
/// peaks. Otherwise the lower end `p_l` is found by bisection so that it and
/// `p_u = G⁻¹(G(p_l) + coverage)` have equal density, starting from the
/// bracket `[G⁻¹(max(G(mode) - coverage, 0)), min(mode, G⁻¹(1 - coverage))]`.
pub fn highest_density_interval(p: &BetaParams, coverage: f64) -> Result<ProbabilityInterval> {
    check_coverage(coverage)?;
    check_hd_shape(p)?;
    if p.a == 1.0 {
        return Ok(ProbabilityInterval::clamped(
            0.0,
            quantile_unchecked(p, coverage),
        ));
    }
    if p.b == 1.0 {
        return Ok(ProbabilityInterval::clamped(
            quantile_unchecked(p, 1.0 - coverage),
            1.0,
        ));
    }
    let mode = p.mode().expect("unimodal shape");
    if coverage == 0.0 {
        return Ok(ProbabilityInterval::clamped(mode, mode));
    }
    let upper_end = |lower: f64| quantile_unchecked(p, (inc_beta(p, lower) + coverage).min(1.0));
    let bracket_lo = quantile_unchecked(p, (inc_beta(p, mode) - coverage).max(0.0));
    let bracket_hi = mode.min(quantile_unchecked(p, 1.0 - coverage));
    let lower = Bisection::default().solve(
        |lower| p.ln_kernel(lower) - p.ln_kernel(upper_end(lower)),
        bracket_lo,
        bracket_hi,
    )?;
    Ok(ProbabilityInterval::clamped(lower, upper_end(lower)))
}

/// Interval of the given kind, with the flat-density fallback of
/// [`IntervalKind::effective`].
pub fn interval(p: &BetaParams, coverage: f64, kind: IntervalKind) -> Result<ProbabilityInterval> {
    match kind.effective(p) {
        IntervalKind::EqualTailed => equal_tailed_interval(p, coverage),
        IntervalKind::HighestDensity => highest_density_interval(p, coverage),
    }
}

/// Coverage of the smallest interval of `kind` that contains `x`.
///
/// For equal-tailed intervals this is `2 |1/2 - G(x)|`. For highest density
/// intervals `x` is one endpoint, and the other endpoint is the point on the
/// far side of the mode with the same density.
pub fn smallest_interval_coverage(p: &BetaParams, x: f64, kind: IntervalKind) -> Result<f64> {
    check_unit("x", x)?;
    if kind == IntervalKind::HighestDensity {
        check_hd_shape(p)?;
    }
    Ok(coverage_unchecked(p, x, kind))
}

/// [`smallest_interval_coverage`] without validation; `kind` must already be
/// supported for `p` (see [`IntervalKind::effective`]).
pub(crate) fn coverage_unchecked(p: &BetaParams, x: f64, kind: IntervalKind) -> f64 {
    match kind {
        IntervalKind::EqualTailed => (2.0 * (0.5 - inc_beta(p, x)).abs()).min(1.0),
        IntervalKind::HighestDensity => hd_coverage(p, x),
    }
}

fn hd_coverage(p: &BetaParams, x: f64) -> f64 {
    hd_coverage_given_cdf(p, x, inc_beta(p, x))
}

/// Cheap upper bound on the highest density coverage at `x` given `G(x)`:
/// the far endpoint can at most reach 0 or 1.
pub(crate) fn hd_coverage_bound(p: &BetaParams, x: f64, cdf_x: f64) -> f64 {
    if p.a == 1.0 {
        return cdf_x;
    }
    if p.b == 1.0 {
        return 1.0 - cdf_x;
    }
    let mode = (p.a - 1.0) / (p.a + p.b - 2.0);
    if x < mode {
        1.0 - cdf_x
    } else {
        cdf_x
    }
}

/// Highest density coverage at `x` when `G(x)` is already known.
pub(crate) fn hd_coverage_given_cdf(p: &BetaParams, x: f64, cdf_x: f64) -> f64 {
    if p.a == 1.0 {
        return cdf_x;
    }
    if p.b == 1.0 {
        return 1.0 - cdf_x;
    }
    if x <= 0.0 || x >= 1.0 {
        return 1.0;
    }
    let mode = (p.a - 1.0) / (p.a + p.b - 2.0);
    if x == mode {
        return 0.0;
    }
    let target = p.ln_kernel(x);
    let matching = |y: f64| p.ln_kernel(y) - target;
    let solver = Bisection::default();
    let cov = if x < mode {
        let upper = solver.solve(matching, mode, 1.0).unwrap_or(1.0);
        inc_beta(p, upper) - cdf_x
    } else {
        let lower = solver.solve(matching, 0.0, mode).unwrap_or(0.0);
        cdf_x - inc_beta(p, lower)
    };
    cov.clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn beta(a: f64, b: f64) -> BetaParams {
        BetaParams::new(a, b).unwrap()
    }

    /// Adaptive Simpson on the normalized density, kept independent of the
    /// continued-fraction path.
    fn simpson_cdf(a: f64, b: f64, x: f64) -> f64 {
        fn gamma_fact(n: f64) -> f64 {
            (1..n as u64).map(|k| k as f64).product()
        }
        let norm = gamma_fact(a) * gamma_fact(b) / gamma_fact(a + b);
        let f = |t: f64| t.powf(a - 1.0) * (1.0 - t).powf(b - 1.0) / norm;
        fn step(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, whole: f64, eps: f64, depth: u32) -> f64 {
            let mid = 0.5 * (lo + hi);
            let left = (mid - lo) / 6.0 * (f(lo) + 4.0 * f(0.5 * (lo + mid)) + f(mid));
            let right = (hi - mid) / 6.0 * (f(mid) + 4.0 * f(0.5 * (mid + hi)) + f(hi));
            if depth == 0 || (left + right - whole).abs() <= 15.0 * eps {
                left + right + (left + right - whole) / 15.0
            } else {
                step(f, lo, mid, left, eps / 2.0, depth - 1)
                    + step(f, mid, hi, right, eps / 2.0, depth - 1)
            }
        }
        let whole = x / 6.0 * (f(0.0) + 4.0 * f(x / 2.0) + f(x));
        step(&f, 0.0, x, whole, 1e-14, 50)
    }

    #[test]
    fn cdf_examples() {
        assert_abs_diff_eq!(
            beta_cdf(&beta(1.0, 1.0), 0.3).unwrap(),
            0.3,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            beta_cdf(&beta(2.0, 1.0), 0.5).unwrap(),
            0.25,
            epsilon = 1e-15
        );
        let oracle = simpson_cdf(3.0, 5.0, 0.25);
        assert_abs_diff_eq!(
            beta_cdf(&beta(3.0, 5.0), 0.25).unwrap(),
            oracle,
            epsilon = 1e-10
        );
        for (a, b, x) in [(2.0, 7.0, 0.1), (6.0, 3.0, 0.8), (10.0, 10.0, 0.45)] {
            assert_abs_diff_eq!(
                beta_cdf(&beta(a, b), x).unwrap(),
                simpson_cdf(a, b, x),
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn cdf_rejects_out_of_range() {
        assert!(beta_cdf(&beta(2.0, 2.0), 1.5).is_err());
        assert!(beta_cdf(&beta(2.0, 2.0), -0.1).is_err());
        assert!(BetaParams::new(0.0, 1.0).is_err());
        assert!(BetaParams::new(1.0, f64::NAN).is_err());
    }

    #[test]
    fn cdf_endpoints_and_monotone() {
        for a in 1..=10 {
            for b in 1..=10 {
                let p = beta(a as f64, b as f64);
                assert_eq!(p.cdf(0.0), 0.0);
                assert_eq!(p.cdf(1.0), 1.0);
                let mut prev = 0.0;
                for j in 0..=200 {
                    let v = p.cdf(j as f64 / 200.0);
                    assert!(v >= prev - 1e-15, "non-monotone at ({a},{b})");
                    assert!((0.0..=1.0).contains(&v));
                    prev = v;
                }
            }
        }
    }

    #[test]
    fn quantile_examples() {
        assert_abs_diff_eq!(
            beta_quantile(&beta(1.0, 2.0), 0.19).unwrap(),
            0.1,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            beta_quantile(&beta(1.0, 1.0), 0.5).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        let p = beta(4.0, 2.0);
        let x = beta_quantile(&p, 0.9).unwrap();
        let oracle = super::super::bisect(|t| p.cdf(t) - 0.9, 0.0, 1.0, 1e-14).unwrap();
        assert_abs_diff_eq!(p.cdf(x), 0.9, epsilon = 1e-10);
        assert_abs_diff_eq!(x, oracle, epsilon = 1e-12);
        assert!(beta_quantile(&p, 1.2).is_err());
    }

    #[test]
    fn quantile_inverts_cdf_on_grid() {
        for a in 1..=10 {
            for b in 1..=10 {
                let p = beta(a as f64, b as f64);
                for j in 1..100 {
                    let x = j as f64 / 100.0;
                    let back = p.quantile(p.cdf(x));
                    // rounding of G(x) itself limits how well x can be recovered
                    let conditioning = 4.0 * f64::EPSILON / p.density(x);
                    assert!(
                        (back - x).abs() < 1e-8 + conditioning,
                        "({a},{b}) x={x} back={back}"
                    );
                }
            }
        }
    }

    #[test]
    fn bisect_matches_quantile() {
        let p = beta(3.0, 4.0);
        let root = super::super::bisect(|x| p.cdf(x) - 0.3, 0.0, 1.0, 1e-12).unwrap();
        assert_abs_diff_eq!(root, p.quantile(0.3), epsilon = 1e-11);
    }

    #[test]
    fn equal_tailed_examples() {
        let iv = equal_tailed_interval(&beta(1.0, 1.0), 0.9).unwrap();
        assert_abs_diff_eq!(iv.lo, 0.05, epsilon = 1e-14);
        assert_abs_diff_eq!(iv.hi, 0.95, epsilon = 1e-14);
        let iv = equal_tailed_interval(&beta(1.0, 1.0), 0.0).unwrap();
        assert_abs_diff_eq!(iv.lo, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(iv.hi, 0.5, epsilon = 1e-15);
        let iv = equal_tailed_interval(&beta(1.0, 2.0), 0.8).unwrap();
        assert_abs_diff_eq!(iv.lo, 1.0 - 0.9f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(iv.hi, 1.0 - 0.1f64.sqrt(), epsilon = 1e-14);
        assert!(equal_tailed_interval(&beta(2.0, 2.0), 1.0).is_err());
        assert!(equal_tailed_interval(&beta(2.0, 2.0), -0.1).is_err());
    }

    #[test]
    fn equal_tailed_tails_match() {
        for (a, b) in [(2.0, 5.0), (7.0, 3.0), (1.0, 9.0), (10.0, 10.0)] {
            let p = beta(a, b);
            for c in [0.1, 0.5, 0.9, 0.99] {
                let iv = equal_tailed_interval(&p, c).unwrap();
                assert_abs_diff_eq!(p.cdf(iv.lo), 1.0 - p.cdf(iv.hi), epsilon = 1e-8);
                assert_abs_diff_eq!(p.cdf(iv.hi) - p.cdf(iv.lo), c, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn highest_density_examples() {
        // Beta(2, 2): CDF 3x² - 2x³, so mass of [1/2 - d, 1/2 + d] is 3d - 4d³.
        let d = super::super::bisect(|d| 3.0 * d - 4.0 * d * d * d - 0.5, 0.0, 0.5, 1e-14).unwrap();
        assert_abs_diff_eq!(d, 0.17365, epsilon = 1e-5);
        let iv = highest_density_interval(&beta(2.0, 2.0), 0.5).unwrap();
        assert_abs_diff_eq!(iv.lo, 0.5 - d, epsilon = 1e-8);
        assert_abs_diff_eq!(iv.hi, 0.5 + d, epsilon = 1e-8);

        let p = beta(1.0, 3.0);
        let iv = highest_density_interval(&p, 0.9).unwrap();
        assert_eq!(iv.lo, 0.0);
        assert_abs_diff_eq!(iv.hi, p.quantile(0.9), epsilon = 1e-15);

        let p = beta(3.0, 1.0);
        let iv = highest_density_interval(&p, 0.9).unwrap();
        assert_eq!(iv.hi, 1.0);
        assert_abs_diff_eq!(iv.lo, p.quantile(0.1), epsilon = 1e-15);

        let p = beta(5.0, 5.0);
        let hd = highest_density_interval(&p, 0.95).unwrap();
        let et = equal_tailed_interval(&p, 0.95).unwrap();
        assert_abs_diff_eq!(hd.lo, et.lo, epsilon = 1e-7);
        assert_abs_diff_eq!(hd.hi, et.hi, epsilon = 1e-7);
    }

    #[test]
    fn highest_density_equal_density_endpoints() {
        for (a, b) in [(2.0, 5.0), (7.0, 3.0), (3.0, 30.0), (15.0, 2.0)] {
            let p = beta(a, b);
            for c in [0.1, 0.5, 0.9, 0.99] {
                let iv = highest_density_interval(&p, c).unwrap();
                assert_abs_diff_eq!(p.cdf(iv.hi) - p.cdf(iv.lo), c, epsilon = 1e-8);
                let (ga, gb) = (p.density(iv.lo), p.density(iv.hi));
                assert!(
                    (ga - gb).abs() <= 1e-6 * ga.max(gb).max(1.0),
                    "({a},{b}) c={c}: {ga} vs {gb}"
                );
            }
        }
    }

    #[test]
    fn highest_density_rejects_unsupported_shapes() {
        for (a, b) in [(1.0, 1.0), (0.5, 2.0), (2.0, 0.5)] {
            let err = highest_density_interval(&beta(a, b), 0.5).unwrap_err();
            assert!(matches!(err, Error::UnsupportedShape { .. }));
            assert!(
                smallest_interval_coverage(&beta(a, b), 0.3, IntervalKind::HighestDensity).is_err()
            );
        }
    }

    #[test]
    fn flat_density_falls_back_to_equal_tailed() {
        let p = beta(1.0, 1.0);
        assert_eq!(
            IntervalKind::HighestDensity.effective(&p),
            IntervalKind::EqualTailed
        );
        let iv = interval(&p, 0.9, IntervalKind::HighestDensity).unwrap();
        assert_abs_diff_eq!(iv.lo, 0.05, epsilon = 1e-14);
        assert_abs_diff_eq!(iv.hi, 0.95, epsilon = 1e-14);
    }

    #[test]
    fn coverage_examples() {
        let et = IntervalKind::EqualTailed;
        let hd = IntervalKind::HighestDensity;
        assert_abs_diff_eq!(
            smallest_interval_coverage(&beta(1.0, 1.0), 0.95, et).unwrap(),
            0.9,
            epsilon = 1e-14
        );
        let p = beta(2.0, 1.0);
        assert_abs_diff_eq!(
            smallest_interval_coverage(&p, p.quantile(0.5), et).unwrap(),
            0.0,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            smallest_interval_coverage(&beta(1.0, 2.0), 0.4, hd).unwrap(),
            0.64,
            epsilon = 1e-14
        );
        let p = beta(4.0, 6.0);
        assert_eq!(
            smallest_interval_coverage(&p, p.mode().unwrap(), hd).unwrap(),
            0.0
        );
        assert!(smallest_interval_coverage(&p, 1.1, et).is_err());
    }

    #[test]
    fn coverage_round_trips_with_intervals() {
        for (a, b) in [
            (2.0, 2.0),
            (3.0, 8.0),
            (9.0, 2.0),
            (1.0, 6.0),
            (6.0, 1.0),
            (20.0, 29.0),
        ] {
            let p = beta(a, b);
            for kind in [IntervalKind::EqualTailed, IntervalKind::HighestDensity] {
                for c in [0.05, 0.3, 0.8, 0.99] {
                    let iv = interval(&p, c, kind).unwrap();
                    for end in [iv.lo, iv.hi] {
                        if end == 0.0 || end == 1.0 {
                            continue;
                        }
                        let back = smallest_interval_coverage(&p, end, kind).unwrap();
                        assert_abs_diff_eq!(back, c, epsilon = 1e-6);
                    }
                }
            }
        }
    }

    #[test]
    fn coverage_grows_away_from_center() {
        let p = beta(4.0, 7.0);
        let mode = p.mode().unwrap();
        let median = p.quantile(0.5);
        for (kind, center) in [
            (IntervalKind::HighestDensity, mode),
            (IntervalKind::EqualTailed, median),
        ] {
            let mut prev = 0.0;
            for j in 0..=100 {
                let x = center + (1.0 - center) * j as f64 / 100.0;
                let c = smallest_interval_coverage(&p, x, kind).unwrap();
                assert!(c >= prev - 1e-9);
                prev = c;
            }
            let mut prev = 0.0;
            for j in 0..=100 {
                let x = center - center * j as f64 / 100.0;
                let c = smallest_interval_coverage(&p, x, kind).unwrap();
                assert!(c >= prev - 1e-9);
                prev = c;
            }
        }
    }
}
