use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),

    #[error(
        "matrix is not primitive: no power A^r with r <= {cap} is entrywise positive \
         (the Wielandt bound (m-1)^2+1 makes this a definitive verdict)"
    )]
    NotPrimitiveWithinCap { cap: usize },

    #[error("symbol {symbol} out of range for alphabet of size {m}")]
    SymbolOutOfRange { symbol: usize, m: usize },

    #[error("enumeration of {requested} candidates exceeds cap {cap}")]
    EnumerationTooLarge { requested: u128, cap: u64 },

    #[error("chain index {index} out of range for word of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("t-system iteration did not reach the requested tolerance within {max_iter} iterations (residual {residual:e})")]
    NoConvergence { max_iter: usize, residual: f64 },

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("word is not multiplicatively admissible")]
    NotAdmissible,

    #[error("word length {0} is not a power of two")]
    LengthNotPowerOfTwo(usize),

    #[error("telescoping identity violated: direct {direct} vs identity {identity}")]
    IdentityViolated { direct: f64, identity: f64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
