//! Search-log ingestion, analysis commands and table output behind the
//! `tuning-bands` binary.

mod commands;
mod config;
mod ingest;
mod output;

pub use commands::{
    cdf_table, cmd_bands, cmd_compare, cmd_coverage, compare_table, coverage_table, curve_table,
    BandsReport, CompareOutcome, CoverageRequest, TruthSpec,
};
pub use config::{AnalysisConfig, CostScale};
pub use ingest::{ingest, read_csv, read_jsonl, Dataset, InputFormat, RunRecord};
pub use output::{format_float, parse_float, read_table, Cell, Table};

use crate::error::Error;

/// Success.
pub const EXIT_OK: i32 = 0;
/// Bad flags or configuration.
pub const EXIT_USAGE: i32 = 2;
/// Unreadable or invalid input data.
pub const EXIT_DATA: i32 = 3;
/// A numerical routine failed to converge.
pub const EXIT_NUMERIC: i32 = 4;

/// Process exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Domain(_) | Error::UnsupportedShape { .. } | Error::Mismatch(_) => EXIT_USAGE,
        Error::Bracket { .. } | Error::NonConvergence { .. } => EXIT_NUMERIC,
        Error::EmptySample
        | Error::NonFinite(_)
        | Error::Parse { .. }
        | Error::MissingColumn(_)
        | Error::DuplicateRecord { .. }
        | Error::UnknownModel(_)
        | Error::Io(_) => EXIT_DATA,
    }
}
