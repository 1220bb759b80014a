use std::sync::OnceLock;

use proptest::prelude::*;
use tuning_bands::cdfbands::{dkw_bands, ecdf, BandMethod, BandNull, CdfBands, Sample};
use tuning_bands::tuning::{
    mean_curve_bands, median_curve_bands, point_estimate_mean_u, point_estimate_mean_v, KGrid,
    SupportBounds,
};

const N: usize = 12;

fn ld_null() -> &'static BandNull {
    static NULL: OnceLock<BandNull> = OnceLock::new();
    NULL.get_or_init(|| BandNull::simulate(BandMethod::LdHighestDensity, N, 4000, 5).unwrap())
}

fn ld_bands(scores: Vec<f64>, confidence: f64) -> CdfBands {
    let sample = Sample::new(scores).unwrap();
    ld_null()
        .calibrate(confidence)
        .unwrap()
        .apply(&sample)
        .unwrap()
}

fn scores(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, n)
}

/// Mean of the max over all `k`-tuples, by brute force.
fn tuple_mean(y: &[f64], k: u32) -> f64 {
    let n = y.len();
    let total = n.pow(k);
    let mut sum = 0.0;
    for code in 0..total {
        let mut c = code;
        let mut best = f64::MIN;
        for _ in 0..k {
            best = best.max(y[c % n]);
            c /= n;
        }
        sum += best;
    }
    sum / total as f64
}

/// Mean of the max over all `k`-subsets, by brute force.
fn subset_mean(y: &[f64], k: u32) -> f64 {
    let n = y.len();
    let (mut sum, mut count) = (0.0, 0u32);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() == k {
            let best = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| y[i])
                .fold(f64::MIN, f64::max);
            sum += best;
            count += 1;
        }
    }
    sum / count as f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn estimators_match_enumeration(y in prop::collection::vec(-5.0f64..5.0, 1..7), k in 1u32..4) {
        let sample = Sample::new(y.clone()).unwrap();
        let v = point_estimate_mean_v(&sample, k as f64).unwrap();
        prop_assert!((v - tuple_mean(&y, k)).abs() < 1e-12);
        if k as usize <= y.len() {
            let u = point_estimate_mean_u(&sample, k as usize).unwrap();
            prop_assert!((u - subset_mean(&y, k)).abs() < 1e-12);
            // the plug-in estimate is biased low relative to the subset average
            prop_assert!(v <= u + 1e-12);
        }
    }

    #[test]
    fn cdf_bands_bracket_the_ecdf(y in scores(N), conf in 0.1f64..0.99) {
        let bands = ld_bands(y, conf);
        let e = ecdf(&bands.sample);
        prop_assert!(bands.lower.value_before_first() <= e.value_before_first());
        for j in 0..N {
            let (lo, mid, hi) = (bands.lower.values()[j], e.values()[j], bands.upper.values()[j]);
            prop_assert!(lo <= mid && mid <= hi);
            prop_assert!((0.0..=1.0).contains(&lo) && (0.0..=1.0).contains(&hi));
        }
    }

    #[test]
    fn median_bands_are_ordered_and_monotone(y in scores(N), conf in 0.1f64..0.99) {
        let bands = ld_bands(y, conf);
        let grid = KGrid::new(vec![0.5, 1.0, 1.7, 3.0, 6.0, 12.0, 40.0]).unwrap();
        let set = median_curve_bands(&bands, &grid).unwrap();
        for j in 0..grid.len() {
            prop_assert!(set.lower[j] <= set.point[j] && set.point[j] <= set.upper[j]);
            if j > 0 {
                prop_assert!(set.lower[j - 1] <= set.lower[j]);
                prop_assert!(set.point[j - 1] <= set.point[j]);
                prop_assert!(set.upper[j - 1] <= set.upper[j]);
            }
        }
    }

    #[test]
    fn mean_bands_are_ordered_and_monotone(y in scores(N), conf in 0.1f64..0.99) {
        let bands = ld_bands(y, conf);
        let grid = KGrid::integers(N).unwrap();
        let set = mean_curve_bands(&bands, &grid, SupportBounds::unit()).unwrap();
        for j in 0..grid.len() {
            prop_assert!(set.lower[j] <= set.point[j] + 1e-12);
            prop_assert!(set.point[j] <= set.upper[j] + 1e-12);
            prop_assert!(set.lower[j] >= 0.0 && set.upper[j] <= 1.0 + 1e-12);
            if j > 0 {
                prop_assert!(set.lower[j - 1] <= set.lower[j] + 1e-12);
                prop_assert!(set.upper[j - 1] <= set.upper[j] + 1e-12);
            }
        }
    }

    #[test]
    fn higher_confidence_nests_the_bands(y in scores(N), a in 0.1f64..0.95, b in 0.1f64..0.95) {
        let (lo_conf, hi_conf) = if a <= b { (a, b) } else { (b, a) };
        let narrow = ld_bands(y.clone(), lo_conf);
        let wide = ld_bands(y, hi_conf);
        for j in 0..N {
            prop_assert!(wide.lower.values()[j] <= narrow.lower.values()[j]);
            prop_assert!(wide.upper.values()[j] >= narrow.upper.values()[j]);
        }
        let grid = KGrid::integers(N).unwrap();
        let n_set = median_curve_bands(&narrow, &grid).unwrap();
        let w_set = median_curve_bands(&wide, &grid).unwrap();
        for j in 0..N {
            prop_assert!(w_set.lower[j] <= n_set.lower[j]);
            prop_assert!(w_set.upper[j] >= n_set.upper[j]);
        }
    }

    #[test]
    fn dkw_bands_have_constant_width(y in prop::collection::vec(0.0f64..1.0, 1..40), conf in 0.1f64..0.99) {
        let sample = Sample::new(y).unwrap();
        let bands = dkw_bands(&sample, conf).unwrap();
        let e = ecdf(&sample);
        let eps = bands.threshold;
        for j in 0..sample.len() {
            let v = e.values()[j];
            prop_assert!((bands.lower.values()[j] - (v - eps).max(0.0)).abs() < 1e-15);
            prop_assert!((bands.upper.values()[j] - (v + eps).min(1.0)).abs() < 1e-15);
        }
    }
}
