use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("gegenbauer lambda = 0 is degenerate; use the chebyshev-t family instead")]
    GegenbauerLambdaZero,
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("index {index} exceeds table length {len}")]
    Index { index: usize, len: usize },
    #[error("recurrence table holds {len} levels but {needed} are required")]
    TableTooShort { len: usize, needed: usize },
    #[error("invalid recurrence table: {0}")]
    InvalidTable(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("operator is not hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("eigenvalue iteration did not converge within {0} sweeps")]
    ConvergenceFailure(usize),
    #[error("spectrum leaves (-1, 1): eigenvalue {0}")]
    SpectrumOutOfRange(f64),
    #[error("state support {support} exceeds truncation limit {limit}")]
    SupportExceedsTruncation { support: usize, limit: i64 },
    #[error("truncation dimension {dim} too small; at least {required} required")]
    TruncationInsufficient { dim: usize, required: usize },
    #[error("invalid density matrix: {0}")]
    InvalidState(String),
    #[error("series did not converge within {0} terms")]
    NonConvergence(usize),
    #[error("quadrature did not converge: {0}")]
    QuadratureNonConvergence(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable identifier, used by the CLI error line.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ParameterOutOfRange(_) => "PARAMETER_OUT_OF_RANGE",
            Error::GegenbauerLambdaZero => "GEGENBAUER_LAMBDA_ZERO",
            Error::Domain(_) => "DOMAIN",
            Error::Index { .. } => "INDEX",
            Error::TableTooShort { .. } => "TABLE_TOO_SHORT",
            Error::InvalidTable(_) => "INVALID_TABLE",
            Error::DimensionMismatch(..) => "DIMENSION_MISMATCH",
            Error::NotHermitian(_) => "NOT_HERMITIAN",
            Error::ConvergenceFailure(_) => "CONVERGENCE_FAILURE",
            Error::SpectrumOutOfRange(_) => "SPECTRUM_OUT_OF_RANGE",
            Error::SupportExceedsTruncation { .. } => "SUPPORT_EXCEEDS_TRUNCATION",
            Error::TruncationInsufficient { .. } => "TRUNCATION_INSUFFICIENT",
            Error::InvalidState(_) => "INVALID_STATE",
            Error::NonConvergence(_) => "NON_CONVERGENCE",
            Error::QuadratureNonConvergence(_) => "QUADRATURE_NON_CONVERGENCE",
            Error::Parse(_) => "PARSE",
            Error::Io(_) => "IO",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
