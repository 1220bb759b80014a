use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tuning_bands::cdfbands::BandMethod;
use tuning_bands::cli::{
    self, cdf_table, cmd_bands, cmd_compare, cmd_coverage, compare_table, coverage_table,
    curve_table, ingest, AnalysisConfig, CostScale, CoverageRequest, Dataset, InputFormat, Table,
    TruthSpec,
};
use tuning_bands::sim::CoverageTarget;
use tuning_bands::tuning::{CurveKind, SupportBounds};

/// Confidence bands for hyperparameter tuning curves from random-search logs.
#[derive(Parser, Debug)]
#[command(name = "tuning-bands", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// CDF bands and tuning-curve bands for one model.
    Bands {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        model: String,
        /// Where to write the CDF band table; defaults to `<out>.cdf.csv`
        /// when --out is given.
        #[arg(long)]
        cdf_out: Option<PathBuf>,
    },
    /// Grade the evidence that one model's tuning curve beats another's.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        model_a: String,
        #[arg(long)]
        model_b: String,
    },
    /// Simulate the coverage of the bands under a known score distribution.
    Coverage {
        #[command(flatten)]
        common: Common,
        /// `uniform[:LO:HI]`, `normal:MEAN:SD` or `kde:MODEL:BANDWIDTH`.
        #[arg(long, default_value = "uniform")]
        truth: String,
        /// Sample size per replication.
        #[arg(long, default_value_t = 48)]
        n: usize,
        /// Comma-separated nominal confidence levels.
        #[arg(long, value_delimiter = ',', default_values_t = [0.5, 0.8, 0.95])]
        nominal: Vec<f64>,
        #[arg(long, default_value_t = 1000)]
        reps: usize,
        /// What must be covered; defaults to the curve kind.
        #[arg(long, value_enum)]
        target: Option<TargetArg>,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Search log (CSV or JSONL).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Input format; guessed from the extension when omitted.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// JSON file with analysis settings; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    confidence: Option<f64>,
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    #[arg(long, value_enum)]
    curve: Option<CurveArg>,
    /// Score bounds as LO:HI (`inf` allowed).
    #[arg(long, allow_hyphen_values = true)]
    support: Option<String>,
    /// Metric name; `accuracy` and `f1` imply support 0:1.
    #[arg(long)]
    metric: Option<String>,
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long, value_enum)]
    cost_scale: Option<CostArg>,
    #[arg(long)]
    seed: Option<u64>,
    /// Replicates for simulated null distributions.
    #[arg(long)]
    replicates: Option<usize>,
    /// Share of the grid a grade must cover to count.
    #[arg(long)]
    nontrivial: Option<f64>,
    /// Analyze a seeded random subset of this many rounds per model.
    #[arg(long)]
    subsample: Option<usize>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Csv,
    Jsonl,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MethodArg {
    Dkw,
    Ks,
    LdEt,
    LdHd,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CurveArg {
    Median,
    Mean,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CostArg {
    None,
    Avg,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TargetArg {
    Cdf,
    Median,
    Mean,
}

impl Common {
    fn resolve(&self) -> Result<AnalysisConfig> {
        let mut config = match &self.config {
            Some(path) => AnalysisConfig::from_file(path)?,
            None => AnalysisConfig::default(),
        };
        if let Some(v) = self.confidence {
            config.confidence = v;
        }
        if let Some(v) = self.method {
            config.method = match v {
                MethodArg::Dkw => BandMethod::Dkw,
                MethodArg::Ks => BandMethod::Ks,
                MethodArg::LdEt => BandMethod::LdEqualTailed,
                MethodArg::LdHd => BandMethod::LdHighestDensity,
            };
        }
        if let Some(v) = self.curve {
            config.curve = match v {
                CurveArg::Median => CurveKind::Median,
                CurveArg::Mean => CurveKind::Mean,
            };
        }
        if let Some(v) = &self.support {
            config.support = Some(v.parse::<SupportBounds>()?);
        }
        if let Some(v) = &self.metric {
            config.metric = Some(v.clone());
        }
        if let Some(v) = self.k_max {
            config.k_max = Some(v);
        }
        if let Some(v) = self.cost_scale {
            config.cost_scale = match v {
                CostArg::None => CostScale::None,
                CostArg::Avg => CostScale::Avg,
            };
        }
        if let Some(v) = self.seed {
            config.seed = v;
        }
        if let Some(v) = self.replicates {
            config.replicates = v;
        }
        if let Some(v) = self.nontrivial {
            config.nontrivial_fraction = v;
        }
        if let Some(v) = self.subsample {
            config.subsample = Some(v);
        }
        config.validate()?;
        Ok(config)
    }

    fn dataset(&self) -> Result<Option<Dataset>> {
        let Some(path) = &self.input else {
            return Ok(None);
        };
        let format = match self.format {
            Some(FormatArg::Csv) => InputFormat::Csv,
            Some(FormatArg::Jsonl) => InputFormat::Jsonl,
            None => InputFormat::from_path(path),
        };
        let data = ingest(path, format).with_context(|| format!("reading {}", path.display()))?;
        Ok(Some(data))
    }

    fn require_dataset(&self) -> Result<Dataset> {
        match self.dataset()? {
            Some(d) => Ok(d),
            None => Err(tuning_bands::Error::Domain("--input is required".into()).into()),
        }
    }
}

fn emit(table: &Table, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            let file = File::create(path)
                .map_err(tuning_bands::Error::from)
                .with_context(|| format!("creating {}", path.display()))?;
            table.write(file)?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            table.write(&mut lock)?;
            lock.flush().map_err(tuning_bands::Error::from)?;
        }
    }
    Ok(())
}

fn report_notes(notes: &[String]) {
    for note in notes {
        eprintln!("warning: {note}");
    }
}

fn sidecar_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("bands");
    out.with_file_name(format!("{stem}.cdf.csv"))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Bands {
            common,
            model,
            cdf_out,
        } => {
            let config = common.resolve()?;
            let data = common.require_dataset()?;
            let report = cmd_bands(&config, &data, &model)
                .with_context(|| format!("bands for model `{model}`"))?;
            report_notes(&report.notes);
            emit(&curve_table(&config, &report), common.out.as_deref())?;
            let sidecar = cdf_out.or_else(|| common.out.as_deref().map(sidecar_path));
            if let Some(path) = sidecar {
                emit(&cdf_table(&config, &report), Some(&path))?;
            }
        }
        Command::Compare {
            common,
            model_a,
            model_b,
        } => {
            let config = common.resolve()?;
            let data = common.require_dataset()?;
            let outcome = cmd_compare(&config, &data, &model_a, &model_b)
                .with_context(|| format!("comparing `{model_a}` with `{model_b}`"))?;
            report_notes(&outcome.a.notes);
            eprintln!("overall: {}", outcome.report.overall);
            emit(&compare_table(&config, &outcome), common.out.as_deref())?;
        }
        Command::Coverage {
            common,
            truth,
            n,
            nominal,
            reps,
            target,
        } => {
            let config = common.resolve()?;
            let data = common.dataset()?;
            let target = match target {
                Some(TargetArg::Cdf) => CoverageTarget::Cdf,
                Some(TargetArg::Median) => CoverageTarget::Median,
                Some(TargetArg::Mean) => CoverageTarget::Mean,
                None => match config.curve {
                    CurveKind::Median => CoverageTarget::Median,
                    CurveKind::Mean => CoverageTarget::Mean,
                },
            };
            let request = CoverageRequest {
                truth: truth.parse::<TruthSpec>()?,
                n,
                nominals: nominal,
                reps,
                target,
            };
            let (descriptor, results) =
                cmd_coverage(&config, &request, data.as_ref()).context("coverage experiment")?;
            emit(
                &coverage_table(&config, &request, &descriptor, &results),
                common.out.as_deref(),
            )?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::from(cli::EXIT_OK as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = err
                .downcast_ref::<tuning_bands::Error>()
                .map_or(cli::EXIT_USAGE, cli::exit_code);
            ExitCode::from(code as u8)
        }
    }
}
