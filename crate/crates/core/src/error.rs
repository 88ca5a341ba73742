use thiserror::Error;

/// Every failure the library can report. The variant name is the stable
/// identifier surfaced by the CLI (see [`Error::name`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^64")]
    NotPrime(String),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("no irreducibility certificate over Q_{p} applies to {poly}")]
    CannotCertify { p: u64, poly: String },
    #[error("{poly} has a root of negative {p}-adic valuation")]
    RootsNotIntegral { p: u64, poly: String },
    #[error("reduction of {poly} mod {p} is not a power of an irreducible polynomial")]
    ResidueNotPurePower { p: u64, poly: String },
    #[error("root multiplicity {multiplicity} not divisible by center degree {degree}")]
    MultiplicityNotDivisible { multiplicity: u64, degree: usize },
    #[error("degree-one center has no conjugates")]
    DegreeOneCenter,
    #[error("center is not {p}-adically integral")]
    CenterNotIntegral { p: u64 },
    #[error("radius must be nonnegative, got {0}")]
    NegativeRadius(String),
    #[error("algebraic center with infinite radius defines a rank-2 valuation")]
    AlgebraicAtInfinity,
    #[error("truncation precision {precision} cannot decide the value")]
    InsufficientPrecision { precision: u32 },
    #[error("radius {radius} exceeds truncation precision {precision}")]
    RadiusExceedsPrecision { radius: String, precision: u32 },
    #[error("(center, radius) is not known to be a minimal pair")]
    MinimalPairUnknown,
    #[error("specs live over different primes {0} and {1}")]
    DifferentPrime(u64, u64),
    #[error("index {index} out of range at prime {p}")]
    IndexOutOfRange { p: u64, index: usize },
    #[error("default rule cannot be decided: {0}")]
    RuleNotDecidable(String),
    #[error("default rule center is not integral at prime {0} outside the table")]
    RuleCenterNotIntegral(u64),
    #[error("{0} is reducible over Q")]
    NotIrreducible(String),
    #[error("prime pool has {have} primes, {need} needed")]
    PoolTooSmall { have: usize, need: usize },
    #[error("constructed ring failed its round-trip check: {0}")]
    ConstructionCheck(String),
    #[error("table key {key} does not match spec prime {spec}")]
    PrimeMismatch { key: u64, spec: u64 },
    #[error("ring is not a Krull domain: {0}")]
    NotKrull(String),
    #[error("irreducibility over Q undecided within search limits: {0}")]
    IrreducibilityUndecided(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::CannotCertify { .. } => "CannotCertify",
            Error::RootsNotIntegral { .. } => "RootsNotIntegral",
            Error::ResidueNotPurePower { .. } => "ResidueNotPurePower",
            Error::MultiplicityNotDivisible { .. } => "MultiplicityNotDivisible",
            Error::DegreeOneCenter => "DegreeOneCenter",
            Error::CenterNotIntegral { .. } => "CenterNotIntegral",
            Error::NegativeRadius(_) => "NegativeRadius",
            Error::AlgebraicAtInfinity => "AlgebraicAtInfinity",
            Error::InsufficientPrecision { .. } => "InsufficientPrecision",
            Error::RadiusExceedsPrecision { .. } => "RadiusExceedsPrecision",
            Error::MinimalPairUnknown => "MinimalPairUnknown",
            Error::DifferentPrime(..) => "DifferentPrime",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::RuleNotDecidable(_) => "RuleNotDecidable",
            Error::RuleCenterNotIntegral(_) => "RuleCenterNotIntegral",
            Error::NotIrreducible(_) => "NotIrreducible",
            Error::PoolTooSmall { .. } => "PoolTooSmall",
            Error::ConstructionCheck(_) => "ConstructionCheck",
            Error::PrimeMismatch { .. } => "PrimeMismatch",
            Error::NotKrull(_) => "NotKrull",
            Error::IrreducibilityUndecided(_) => "IrreducibilityUndecided",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
