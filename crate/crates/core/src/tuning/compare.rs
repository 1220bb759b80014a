use std::fmt;

use serde::Serialize;

use super::CurveBandSet;
use crate::error::{Error, Result};

/// Share of the grid a grade must cover to be reported overall.
pub const DEFAULT_NONTRIVIAL_FRACTION: f64 = 0.05;

/// Evidence that one curve is higher than the other at a budget.
///
/// Weak: one band excludes the other's point estimate. Fair: each band
/// excludes the other's point estimate. Strong: the bands do not overlap.
/// The suffix names the model the evidence favors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Grade {
    None,
    WeakA,
    WeakB,
    FairA,
    FairB,
    StrongA,
    StrongB,
}

impl Grade {
    pub const ALL: [Grade; 7] = [
        Grade::None,
        Grade::WeakA,
        Grade::WeakB,
        Grade::FairA,
        Grade::FairB,
        Grade::StrongA,
        Grade::StrongB,
    ];

    /// 0 for none up to 3 for strong.
    pub fn strength(self) -> u8 {
        match self {
            Grade::None => 0,
            Grade::WeakA | Grade::WeakB => 1,
            Grade::FairA | Grade::FairB => 2,
            Grade::StrongA | Grade::StrongB => 3,
        }
    }

    /// `Some(true)` if the grade favors A, `Some(false)` for B.
    pub fn favors_a(self) -> Option<bool> {
        match self {
            Grade::None => None,
            Grade::WeakA | Grade::FairA | Grade::StrongA => Some(true),
            Grade::WeakB | Grade::FairB | Grade::StrongB => Some(false),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Grade::None => "none",
            Grade::WeakA => "weak_a",
            Grade::WeakB => "weak_b",
            Grade::FairA => "fair_a",
            Grade::FairB => "fair_b",
            Grade::StrongA => "strong_a",
            Grade::StrongB => "strong_b",
        }
    }

    fn of(strength: u8, favors_a: bool) -> Grade {
        match (strength, favors_a) {
            (0, _) => Grade::None,
            (1, true) => Grade::WeakA,
            (1, false) => Grade::WeakB,
            (2, true) => Grade::FairA,
            (2, false) => Grade::FairB,
            (_, true) => Grade::StrongA,
            (_, false) => Grade::StrongB,
        }
    }

    /// Grade at one budget from the two bands and point estimates.
    pub fn at(a: (f64, f64, f64), b: (f64, f64, f64)) -> Grade {
        let (a_lo, a_pt, a_hi) = a;
        let (b_lo, b_pt, b_hi) = b;
        if a_lo > b_hi {
            return Grade::StrongA;
        }
        if b_lo > a_hi {
            return Grade::StrongB;
        }
        // each exclusion points to the model whose curve sits higher
        let a_excludes = if b_pt < a_lo {
            Some(true)
        } else if b_pt > a_hi {
            Some(false)
        } else {
            None
        };
        let b_excludes = if a_pt > b_hi {
            Some(true)
        } else if a_pt < b_lo {
            Some(false)
        } else {
            None
        };
        match (a_excludes, b_excludes) {
            (Some(x), Some(_)) => Grade::of(2, x),
            (Some(x), None) | (None, Some(x)) => Grade::of(1, x),
            (None, None) => Grade::None,
        }
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GradeFraction {
    pub grade: Grade,
    /// Share of budgets with exactly this grade.
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub grades: Vec<Grade>,
    /// Strongest grade that, counting stronger grades in the same direction,
    /// holds on at least `nontrivial_fraction` of the grid.
    pub overall: Grade,
    pub fractions: Vec<GradeFraction>,
    pub nontrivial_fraction: f64,
}

/// Grades the evidence that one tuning curve is above the other at each
/// budget. Higher scores are taken to be better.
pub fn compare_curves(
    a: &CurveBandSet,
    b: &CurveBandSet,
    nontrivial_fraction: f64,
) -> Result<ComparisonReport> {
    if !(nontrivial_fraction > 0.0 && nontrivial_fraction <= 1.0) {
        return Err(Error::domain(format!(
            "nontrivial fraction must lie in (0, 1], got {nontrivial_fraction}"
        )));
    }
    if a.grid.budgets() != b.grid.budgets() {
        return Err(Error::Mismatch(
            "curves are evaluated on different budget grids".into(),
        ));
    }
    if a.kind != b.kind {
        return Err(Error::Mismatch(format!(
            "cannot compare a {} curve with a {} curve",
            a.kind, b.kind
        )));
    }
    if a.confidence != b.confidence {
        return Err(Error::Mismatch(format!(
            "confidence levels differ: {} vs {}",
            a.confidence, b.confidence
        )));
    }
    let grades: Vec<Grade> = (0..a.len())
        .map(|j| {
            Grade::at(
                (a.lower[j], a.point[j], a.upper[j]),
                (b.lower[j], b.point[j], b.upper[j]),
            )
        })
        .collect();
    let m = grades.len() as f64;
    let fractions = Grade::ALL
        .iter()
        .map(|&g| GradeFraction {
            grade: g,
            fraction: grades.iter().filter(|&&x| x == g).count() as f64 / m,
        })
        .collect();
    let at_least = |strength: u8, favors_a: bool| {
        grades
            .iter()
            .filter(|g| g.strength() >= strength && g.favors_a() == Some(favors_a))
            .count() as f64
            / m
    };
    let mut overall = Grade::None;
    for strength in (1..=3).rev() {
        let (fa, fb) = (at_least(strength, true), at_least(strength, false));
        if fa.max(fb) >= nontrivial_fraction {
            overall = Grade::of(strength, fa >= fb);
            break;
        }
    }
    Ok(ComparisonReport {
        grades,
        overall,
        fractions,
        nontrivial_fraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdfbands::BandMethod;
    use crate::tuning::{CurveKind, KGrid};

    fn constant(lo: f64, pt: f64, hi: f64, m: usize) -> CurveBandSet {
        CurveBandSet {
            kind: CurveKind::Median,
            confidence: 0.8,
            method: BandMethod::LdHighestDensity,
            grid: KGrid::integers(m).unwrap(),
            lower: vec![lo; m],
            point: vec![pt; m],
            upper: vec![hi; m],
            warnings: vec![],
        }
    }

    #[test]
    fn separated_bands_are_strong() {
        let a = constant(0.8, 0.85, 0.9, 10);
        let b = constant(0.5, 0.55, 0.6, 10);
        let report = compare_curves(&a, &b, 0.05).unwrap();
        assert_eq!(report.overall, Grade::StrongA);
        assert_eq!(
            compare_curves(&b, &a, 0.05).unwrap().overall,
            Grade::StrongB
        );
    }

    #[test]
    fn identical_bands_are_none() {
        let a = constant(0.4, 0.6, 0.8, 5);
        let report = compare_curves(&a, &a.clone(), 0.05).unwrap();
        assert_eq!(report.overall, Grade::None);
        assert_eq!(
            report.fractions[0],
            GradeFraction {
                grade: Grade::None,
                fraction: 1.0
            }
        );
    }

    #[test]
    fn weak_and_fair() {
        let a = constant(0.4, 0.6, 0.8, 4);
        assert_eq!(
            compare_curves(&a, &constant(0.55, 0.75, 0.9, 4), 0.05)
                .unwrap()
                .overall,
            Grade::None
        );
        assert_eq!(
            compare_curves(&a, &constant(0.65, 0.78, 0.9, 4), 0.05)
                .unwrap()
                .overall,
            Grade::WeakB
        );
        assert_eq!(Grade::at((0.5, 0.7, 0.8), (0.3, 0.45, 0.6)), Grade::FairA);
        assert_eq!(Grade::at((0.3, 0.45, 0.6), (0.5, 0.7, 0.8)), Grade::FairB);
    }

    #[test]
    fn overall_needs_nontrivial_share() {
        let mut a = constant(0.4, 0.6, 0.8, 20);
        let b = constant(0.4, 0.6, 0.8, 20);
        a.lower[19] = 0.85;
        a.point[19] = 0.9;
        a.upper[19] = 0.95;
        assert_eq!(
            compare_curves(&a, &b, 0.05).unwrap().overall,
            Grade::StrongA
        );
        assert_eq!(compare_curves(&a, &b, 0.1).unwrap().overall, Grade::None);
        assert!(compare_curves(&a, &b, 0.0).is_err());
    }

    #[test]
    fn mismatches_are_rejected() {
        let a = constant(0.4, 0.6, 0.8, 4);
        assert!(compare_curves(&a, &constant(0.4, 0.6, 0.8, 5), 0.05).is_err());
        let mut b = a.clone();
        b.kind = CurveKind::Mean;
        assert!(compare_curves(&a, &b, 0.05).is_err());
        let mut b = a.clone();
        b.confidence = 0.5;
        assert!(compare_curves(&a, &b, 0.05).is_err());
    }
}
