use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported Beta shape ({a}, {b}): {reason}")]
    UnsupportedShape {
        a: f64,
        b: f64,
        reason: &'static str,
    },

    #[error("root is not bracketed: f({lo}) = {f_lo}, f({hi}) = {f_hi}")]
    Bracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("bisection did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("sample is empty")]
    EmptySample,

    #[error("sample contains a non-finite value: {0}")]
    NonFinite(f64),

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("missing required column `{0}`")]
    MissingColumn(String),

    #[error("duplicate record for model `{model}` at iteration {iteration}")]
    DuplicateRecord { model: String, iteration: u64 },

    #[error("unknown model `{0}`")]
    UnknownModel(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
