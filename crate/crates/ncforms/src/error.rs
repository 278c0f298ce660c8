use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not invertible: leading coefficient is zero")]
    NotInvertible,
    #[error("leading coefficient {0} has no rational {1}-th root")]
    NoRationalRoot(String, u32),
    #[error("insufficient precision: coefficient at {index}/{mu} requested, series known below {prec}/{mu}")]
    InsufficientPrecision { index: i64, mu: u32, prec: i64 },
    #[error("eta quotient prefactor {0}/24 cannot be represented")]
    BadPrefactor(i64),
    #[error("not p-integral: {value} at p = {p}")]
    NotPIntegral { value: String, p: u64 },
    #[error("{0} is not a unit mod p^2")]
    NotUnit(u64),
    #[error("cube root not unique for p = {0} (p = 1 mod 3)")]
    CubeRootNotUnique(u64),
    #[error("insufficient data: empty test set")]
    InsufficientData,
    #[error("bad prime {0}: {1}")]
    BadPrime(u64, String),
    #[error("polynomial data required: Phi_{0} not loaded")]
    PolynomialDataRequired(u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("coefficient unknown: {0}")]
    CoefficientUnknown(String),
    #[error("unknown identifier {0}")]
    Unknown(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
