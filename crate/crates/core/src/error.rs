use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{quantity} = {value} is outside the domain ({requirement})")]
    Domain {
        quantity: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error("invalid molecule: {field} {message}")]
    InvalidMolecule {
        field: &'static str,
        message: String,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: invalid {field}: {message}")]
    Validation {
        line: usize,
        field: &'static str,
        message: String,
    },

    #[error("unknown molecule '{0}'")]
    UnknownMolecule(String),

    #[error("table of {rows} rows exceeds the limit of {limit}")]
    TooManyRows { rows: u64, limit: u64 },

    #[error("index {index} out of range for interior points of a grid of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("not converged: {0}")]
    Convergence(String),

    #[error("no eigenvalue bracket for n={n}, l={l}: {reason}")]
    SearchFailure { n: u32, l: u32, reason: String },
}
