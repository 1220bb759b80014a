use std::str::FromStr;

use serde_json::{json, Value};

use super::config::{AnalysisConfig, CostScale};
use super::ingest::Dataset;
use super::output::{Cell, Table};
use crate::cdfbands::{build_bands, CdfBands, StepCdf, Warning};
use crate::error::{Error, Result};
use crate::sim::{
    coverage_sweep, CoverageConfig, CoverageResult, CoverageTarget, GroundTruth, Kde, Normal,
    Uniform,
};
use crate::tuning::{
    compare_curves, curve_bands, scale_cost, ComparisonReport, CurveBandSet, KGrid,
};

/// Bands for one model, ready to print.
#[derive(Debug, Clone, PartialEq)]
pub struct BandsReport {
    pub model: String,
    pub bands: CdfBands,
    pub curve: CurveBandSet,
    pub notes: Vec<String>,
}

fn header(command: &str, config: &AnalysisConfig, extra: Value) -> Value {
    let mut h = json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": config,
    });
    if let (Value::Object(h), Value::Object(extra)) = (&mut h, extra) {
        h.extend(extra);
    }
    h
}

fn warning_notes(warnings: &[Warning]) -> Vec<String> {
    warnings
        .iter()
        .map(|w| match w {
            Warning::TiesPresent => {
                "scores contain ties; bands are only expected to be conservative".to_string()
            }
            Warning::VacuousLower => {
                "lower support bound is infinite; the lower mean band is vacuous".to_string()
            }
            Warning::VacuousUpper => {
                "upper support bound is infinite; the upper mean band is vacuous".to_string()
            }
        })
        .collect()
}

fn grid_for(config: &AnalysisConfig, n: usize) -> Result<(KGrid, Vec<String>)> {
    let k_max = config.k_max.unwrap_or(n);
    let mut notes = Vec::new();
    if k_max > n {
        notes.push(format!(
            "budgets past n = {n} extrapolate beyond the observed search"
        ));
    }
    Ok((KGrid::integers(k_max)?, notes))
}

fn model_bands(
    config: &AnalysisConfig,
    data: &Dataset,
    model: &str,
    grid: &KGrid,
) -> Result<BandsReport> {
    let sample = data.sample(model, config.subsample, config.seed)?;
    let bands = build_bands(
        &sample,
        config.confidence,
        config.method,
        config.replicates,
        config.seed,
    )?;
    let grid = match config.cost_scale {
        CostScale::None => grid.clone(),
        CostScale::Avg => scale_cost(grid, data.average_cost(model)?)?,
    };
    let curve = curve_bands(&bands, &grid, config.curve, config.resolved_support())?;
    let mut notes = warning_notes(&curve.warnings);
    notes.dedup();
    Ok(BandsReport {
        model: model.to_string(),
        bands,
        curve,
        notes,
    })
}

/// CDF bands and tuning-curve bands for `model`.
pub fn cmd_bands(config: &AnalysisConfig, data: &Dataset, model: &str) -> Result<BandsReport> {
    config.validate()?;
    let n = data.sample(model, config.subsample, config.seed)?.len();
    let (grid, grid_notes) = grid_for(config, n)?;
    let mut report = model_bands(config, data, model, &grid)?;
    report.notes.extend(grid_notes);
    Ok(report)
}

/// Rows `k, k_cost, lower, point, upper`.
pub fn curve_table(config: &AnalysisConfig, report: &BandsReport) -> Table {
    let extra = json!({
        "model": report.model,
        "n": report.bands.n(),
        "curve": report.curve.kind,
        "threshold": report.bands.threshold,
        "cost_multiplier": report.curve.grid.cost_multiplier(),
        "warnings": report.notes,
    });
    let mut table = Table::new(
        header("bands", config, extra),
        &["k", "k_cost", "lower", "point", "upper"],
    );
    let set = &report.curve;
    for (j, (&k, cost)) in set
        .grid
        .budgets()
        .iter()
        .zip(set.grid.cost_axis())
        .enumerate()
    {
        table.push(vec![
            k.into(),
            cost.into(),
            set.lower[j].into(),
            set.point[j].into(),
            set.upper[j].into(),
        ]);
    }
    table
}

/// Rows `knot, lower, upper`; the first row, at `-inf`, holds the values
/// left of the first score.
pub fn cdf_table(config: &AnalysisConfig, report: &BandsReport) -> Table {
    let extra = json!({
        "model": report.model,
        "n": report.bands.n(),
        "threshold": report.bands.threshold,
        "warnings": report.notes,
    });
    let mut table = Table::new(
        header("bands-cdf", config, extra),
        &["knot", "lower", "upper"],
    );
    let (lower, upper): (&StepCdf, &StepCdf) = (&report.bands.lower, &report.bands.upper);
    table.push(vec![
        f64::NEG_INFINITY.into(),
        lower.value_before_first().into(),
        upper.value_before_first().into(),
    ]);
    for (j, &y) in lower.knots().iter().enumerate() {
        table.push(vec![
            y.into(),
            lower.values()[j].into(),
            upper.values()[j].into(),
        ]);
    }
    table
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareOutcome {
    pub a: BandsReport,
    pub b: BandsReport,
    pub report: ComparisonReport,
}

/// Grades how strongly the data separate two models' tuning curves.
pub fn cmd_compare(
    config: &AnalysisConfig,
    data: &Dataset,
    model_a: &str,
    model_b: &str,
) -> Result<CompareOutcome> {
    config.validate()?;
    let n_a = data.sample(model_a, config.subsample, config.seed)?.len();
    let n_b = data.sample(model_b, config.subsample, config.seed)?.len();
    let (grid, notes) = grid_for(config, n_a.min(n_b))?;
    let mut a = model_bands(config, data, model_a, &grid)?;
    let mut b = model_bands(config, data, model_b, &grid)?;
    a.notes.extend(notes.iter().cloned());
    b.notes.extend(notes);
    // grades compare equal numbers of rounds; the cost axes are reported
    // alongside
    let report = compare_curves(&a.curve, &b.curve, config.nontrivial_fraction)?;
    Ok(CompareOutcome { a, b, report })
}

/// Paired rows for both models plus the grade at each budget.
pub fn compare_table(config: &AnalysisConfig, outcome: &CompareOutcome) -> Table {
    let (a, b) = (&outcome.a.curve, &outcome.b.curve);
    let extra = json!({
        "model_a": outcome.a.model,
        "model_b": outcome.b.model,
        "n_a": outcome.a.bands.n(),
        "n_b": outcome.b.bands.n(),
        "overall": outcome.report.overall,
        "fractions": outcome.report.fractions,
        "warnings_a": outcome.a.notes,
        "warnings_b": outcome.b.notes,
    });
    let columns = [
        "k", "a_k_cost", "b_k_cost", "a_lower", "a_point", "a_upper", "b_lower", "b_point",
        "b_upper", "grade",
    ];
    let mut table = Table::new(header("compare", config, extra), &columns);
    let (ca, cb) = (a.grid.cost_axis(), b.grid.cost_axis());
    for (j, &k) in a.grid.budgets().iter().enumerate() {
        table.push(vec![
            k.into(),
            ca[j].into(),
            cb[j].into(),
            a.lower[j].into(),
            a.point[j].into(),
            a.upper[j].into(),
            b.lower[j].into(),
            b.point[j].into(),
            b.upper[j].into(),
            outcome.report.grades[j].as_str().into(),
        ]);
    }
    table
}

/// Ground truth named on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum TruthSpec {
    Uniform {
        lo: f64,
        hi: f64,
    },
    Normal {
        mean: f64,
        sd: f64,
    },
    /// KDE fitted to a model's scores in the dataset.
    Kde {
        model: String,
        bandwidth: f64,
    },
}

impl FromStr for TruthSpec {
    type Err = Error;

    /// `uniform[:LO:HI]`, `normal:MEAN:SD` or `kde:MODEL:BANDWIDTH`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| {
            t.parse::<f64>()
                .map_err(|_| Error::domain(format!("bad number `{t}` in truth `{s}`")))
        };
        match parts.as_slice() {
            ["uniform"] => Ok(TruthSpec::Uniform { lo: 0.0, hi: 1.0 }),
            ["uniform", lo, hi] => Ok(TruthSpec::Uniform { lo: num(lo)?, hi: num(hi)? }),
            ["normal", mean, sd] => Ok(TruthSpec::Normal { mean: num(mean)?, sd: num(sd)? }),
            ["kde", model, bandwidth] => Ok(TruthSpec::Kde { model: model.to_string(), bandwidth: num(bandwidth)? }),
            _ => Err(Error::domain(format!(
                "unknown truth `{s}`; expected uniform[:LO:HI], normal:MEAN:SD or kde:MODEL:BANDWIDTH"
            ))),
        }
    }
}

impl TruthSpec {
    /// Builds the distribution; a KDE is reflected when the configured
    /// support is finite.
    pub fn build(
        &self,
        config: &AnalysisConfig,
        data: Option<&Dataset>,
    ) -> Result<Box<dyn GroundTruth>> {
        Ok(match self {
            TruthSpec::Uniform { lo, hi } => Box::new(Uniform::new(*lo, *hi)?),
            TruthSpec::Normal { mean, sd } => Box::new(Normal::new(*mean, *sd)?),
            TruthSpec::Kde { model, bandwidth } => {
                let data = data.ok_or_else(|| Error::domain("a KDE truth needs --input"))?;
                let centers = data.sample(model, None, config.seed)?.scores().to_vec();
                let support = config.resolved_support();
                if support.is_finite() {
                    Box::new(Kde::reflected(centers, *bandwidth, support)?)
                } else {
                    Box::new(Kde::new(centers, *bandwidth)?)
                }
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageRequest {
    pub truth: TruthSpec,
    pub n: usize,
    pub nominals: Vec<f64>,
    pub reps: usize,
    pub target: CoverageTarget,
}

/// Simulated simultaneous coverage for each nominal level.
pub fn cmd_coverage(
    config: &AnalysisConfig,
    request: &CoverageRequest,
    data: Option<&Dataset>,
) -> Result<(String, Vec<CoverageResult>)> {
    config.validate()?;
    if request.nominals.is_empty() {
        return Err(Error::domain("no nominal levels given"));
    }
    if let Some(&c) = request.nominals.iter().find(|&&c| !(c > 0.0 && c < 1.0)) {
        return Err(Error::domain(format!(
            "nominal levels must lie in (0, 1), got {c}"
        )));
    }
    let truth = request.truth.build(config, data)?;
    let grid = config.k_max.map(KGrid::integers).transpose()?;
    let cov = CoverageConfig {
        n: request.n,
        method: config.method,
        target: request.target,
        reps: request.reps,
        null_replicates: config.replicates,
        seed: config.seed,
        grid,
    };
    Ok((
        truth.descriptor(),
        coverage_sweep(truth.as_ref(), &cov, &request.nominals)?,
    ))
}

/// Rows `nominal, successes, trials, rate, cp_lo, cp_hi`.
pub fn coverage_table(
    config: &AnalysisConfig,
    request: &CoverageRequest,
    descriptor: &str,
    results: &[CoverageResult],
) -> Table {
    let extra = json!({
        "truth": descriptor,
        "n": request.n,
        "reps": request.reps,
        "target": request.target,
    });
    let columns = ["nominal", "successes", "trials", "rate", "cp_lo", "cp_hi"];
    let mut table = Table::new(header("coverage", config, extra), &columns);
    for r in results {
        table.push(vec![
            r.nominal.into(),
            Cell::Int(r.successes),
            Cell::Int(r.trials),
            r.rate.into(),
            r.cp_interval.lo.into(),
            r.cp_interval.hi.into(),
        ]);
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdfbands::BandMethod;
    use crate::cli::ingest::read_csv;
    use crate::cli::output::{parse_float, read_table};
    use crate::tuning::Grade;

    fn data(rows: &[(&str, f64)]) -> Dataset {
        let mut text = String::from("model_id,iteration,score\n");
        for (i, (m, s)) in rows.iter().enumerate() {
            text.push_str(&format!("{m},{i},{s}\n"));
        }
        read_csv(text.as_bytes()).unwrap()
    }

    fn quick() -> AnalysisConfig {
        AnalysisConfig {
            replicates: 2000,
            ..Default::default()
        }
    }

    #[test]
    fn truth_specs() {
        assert_eq!(
            "uniform".parse::<TruthSpec>().unwrap(),
            TruthSpec::Uniform { lo: 0.0, hi: 1.0 }
        );
        assert_eq!(
            "normal:1:2".parse::<TruthSpec>().unwrap(),
            TruthSpec::Normal { mean: 1.0, sd: 2.0 }
        );
        assert!("cauchy:0:1".parse::<TruthSpec>().is_err());
        assert!("kde:m:x".parse::<TruthSpec>().is_err());
    }

    #[test]
    fn single_score_rows() {
        let d = data(&[("m", 0.5)]);
        let report = cmd_bands(&quick(), &d, "m").unwrap();
        // with one score the null law is uniform, so the band is closed form
        let c = report.bands.threshold;
        assert!((c - 0.8).abs() < 0.03, "{c}");
        assert_eq!(report.curve.lower, vec![f64::NEG_INFINITY]);
        assert_eq!(report.curve.point, vec![0.5]);
        assert_eq!(report.curve.upper, vec![f64::INFINITY]);
        let table = curve_table(&quick(), &report);
        let (_, _, rows) = read_table(&table.to_text().unwrap()).unwrap();
        assert_eq!(rows[0][2], "-inf");
        assert_eq!(rows[0][4], "inf");
    }

    #[test]
    fn tables_round_trip_bitwise() {
        let rows: Vec<(&str, f64)> = (0..30)
            .map(|i| ("m", ((i * 37) % 101) as f64 / 101.0))
            .collect();
        let d = data(&rows);
        let config = AnalysisConfig {
            curve: crate::tuning::CurveKind::Mean,
            support: Some(crate::tuning::SupportBounds::unit()),
            ..quick()
        };
        let report = cmd_bands(&config, &d, "m").unwrap();
        let (_, _, rows) = read_table(&curve_table(&config, &report).to_text().unwrap()).unwrap();
        for (j, row) in rows.iter().enumerate() {
            assert_eq!(
                parse_float(&row[2]).unwrap().to_bits(),
                report.curve.lower[j].to_bits()
            );
            assert_eq!(
                parse_float(&row[3]).unwrap().to_bits(),
                report.curve.point[j].to_bits()
            );
            assert_eq!(
                parse_float(&row[4]).unwrap().to_bits(),
                report.curve.upper[j].to_bits()
            );
        }
        let (_, _, cdf_rows) = read_table(&cdf_table(&config, &report).to_text().unwrap()).unwrap();
        assert_eq!(cdf_rows.len(), 31);
        for (j, row) in cdf_rows[1..].iter().enumerate() {
            assert_eq!(parse_float(&row[0]).unwrap(), report.bands.lower.knots()[j]);
            assert_eq!(
                parse_float(&row[1]).unwrap(),
                report.bands.lower.values()[j]
            );
            assert_eq!(
                parse_float(&row[2]).unwrap(),
                report.bands.upper.values()[j]
            );
        }
    }

    #[test]
    fn nested_confidence_levels() {
        let rows: Vec<(&str, f64)> = (0..25).map(|i| ("m", ((i * 13) % 29) as f64)).collect();
        let d = data(&rows);
        let wide = cmd_bands(&quick(), &d, "m").unwrap().curve;
        let narrow = cmd_bands(
            &AnalysisConfig {
                confidence: 0.5,
                ..quick()
            },
            &d,
            "m",
        )
        .unwrap()
        .curve;
        for j in 0..wide.len() {
            assert!(wide.lower[j] <= narrow.lower[j] && narrow.upper[j] <= wide.upper[j]);
        }
    }

    #[test]
    fn compare_identical_and_separated() {
        let mut rows: Vec<(&str, f64)> = (0..30).map(|i| ("a", 0.5 + i as f64 / 100.0)).collect();
        rows.extend((0..30).map(|i| ("b", 0.5 + i as f64 / 100.0)));
        rows.extend((0..30).map(|i| ("c", 0.1 + i as f64 / 1000.0)));
        let d = data(&rows);
        let config = AnalysisConfig {
            method: BandMethod::Dkw,
            ..quick()
        };
        assert_eq!(
            cmd_compare(&config, &d, "a", "b").unwrap().report.overall,
            Grade::None
        );
        let out = cmd_compare(&config, &d, "a", "c").unwrap();
        assert_eq!(out.report.overall, Grade::StrongA);
        assert_eq!(out.report.grades[0], Grade::StrongA);
    }

    #[test]
    fn coverage_errors() {
        let request = CoverageRequest {
            truth: TruthSpec::Kde {
                model: "m".into(),
                bandwidth: 0.1,
            },
            n: 10,
            nominals: vec![0.8],
            reps: 100,
            target: CoverageTarget::Median,
        };
        assert!(cmd_coverage(&quick(), &request, None).is_err());
        let request = CoverageRequest {
            truth: TruthSpec::Uniform { lo: 0.0, hi: 1.0 },
            nominals: vec![1.0],
            ..request
        };
        assert!(cmd_coverage(&quick(), &request, None).is_err());
    }
}
