use thiserror::Error;

/// Errors raised by the engine.
///
/// Variants fall into three groups: input errors (bad parameters for a
/// construction), precision errors (recoverable by raising the working
/// precision), and consistency errors (an internal invariant failed and the
/// computation must abort).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("function is not invertible: {0}")]
    NotInvertible(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("tame degree {n} is divisible by the characteristic {p}")]
    TameDegree { p: u32, n: u64 },
    #[error("break {m} is divisible by the characteristic {p}")]
    WildBreak { p: u32, m: u64 },
    #[error("Artin-Schreier coefficient must be nonzero")]
    ZeroCoefficient,
    #[error("unsupported compositum: {0}")]
    UnsupportedCompositum(String),
    #[error("unsupported tower: {0}")]
    UnsupportedTower(String),
    #[error("candidate is not an automorphism of the cover: {0}")]
    NotAnAutomorphism(String),
    #[error("candidate set is not closed under composition: {0}")]
    NotClosed(String),
    #[error("not Galois: {0}")]
    NotGalois(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("map is not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("character average is not a nonnegative integer: {0}")]
    NonIntegerAverage(String),
    #[error("negative slope multiplicity: {0}")]
    NegativeMultiplicity(String),
    #[error("representations live on different groups")]
    GroupMismatch,
    #[error("witness is not of pure slope {0}")]
    NotPureSlope(String),
    #[error("certificate violation: {0}")]
    CertificateViolation(String),
}

impl Error {
    pub fn is_precision(&self) -> bool {
        matches!(self, Error::PrecisionExhausted(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
