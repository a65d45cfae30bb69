use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("origami is not connected")]
    NotConnected,
    #[error("corner count parity is odd (n={n}, vertices={vertices})")]
    ParityError { n: usize, vertices: usize },
    #[error("no involution realizes -I on this origami")]
    NoInvolution,
    #[error("involutions realizing -I disagree: {0}")]
    AmbiguousInvolution(String),
    #[error("bad surface parameters: {0}")]
    BadParams(String),
    #[error("brute-force enumeration capped at n={cap}, requested n={n}")]
    CapExceeded { n: usize, cap: usize },
    #[error("orbit member without -I symmetry")]
    NotMinusISymmetric,
    #[error("genus is not a non-negative integer: {0}")]
    NonIntegralGenus(String),
    #[error("invalid discriminant {0}")]
    InvalidDiscriminant(i64),
    #[error("formula value is not an integer: {0}")]
    NonIntegral(String),
    #[error("cusp data inconsistent: {0}")]
    CuspMismatch(String),
    #[error("empty orbit")]
    EmptyOrbit,
    #[error("io error: {0}")]
    Io(String),
    #[error("format error: {0}")]
    Format(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
