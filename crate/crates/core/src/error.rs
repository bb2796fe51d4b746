use thiserror::Error;

/// Which level of the tower a modulus belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TowerLevel {
    /// The degree-`a` modulus defining `K` over the prime field.
    Base,
    /// The degree-`m` modulus defining `L` over `K`.
    Top,
}

impl std::fmt::Display for TowerLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TowerLevel::Base => f.write_str("k_modulus"),
            TowerLevel::Top => f.write_str("l_modulus"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is reducible")]
    ReducibleModulus(TowerLevel),
    #[error("{level} is malformed: {reason}")]
    InvalidModulus { level: TowerLevel, reason: String },
    #[error("discrete-log tables are not available for this tower")]
    NoDlogTable,
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero element has no discrete logarithm")]
    LogOfZero,
    #[error("subfield degree {ell} does not divide extension degree {m}")]
    InvalidSubfieldDegree { ell: usize, m: usize },
    #[error("element {value} is not in GF(q^{ell})")]
    NotInSubfield { value: u64, ell: usize },
    #[error("order {n} does not divide {group_order}")]
    OrderNotDividing { n: u64, group_order: u64 },
    #[error("normal basis search exhausted all elements")]
    SearchExhausted,
    #[error("no normal basis is installed on this tower")]
    NormalBasisMissing,
    #[error("n={n} and q={q} are not coprime")]
    NotCoprime { n: u64, q: u64 },
    #[error("integer overflow")]
    Overflow,
    #[error("{what} is too large ({size} > {cap})")]
    TooLarge { what: &'static str, size: u64, cap: u64 },
    #[error("element has order {actual}, expected {expected}")]
    WrongOrder { expected: u64, actual: u64 },
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("spectrum violates V[q*s] = V[s]^q at s={index}")]
    NotConsistent { index: usize },
    #[error("seed for class with leader {leader} is outside GF(q^{length})")]
    SeedNotInSubfield { leader: usize, length: usize },
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("trace tables need {estimate} entries, cap is {cap}")]
    MemoryCapExceeded { estimate: u64, cap: u64 },
    #[error("trace tables do not match the seed partition")]
    TableMismatch,
    #[error("index {index} out of range for length {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("index {index} is not a member of the class with leader {leader}")]
    IndexNotInClass { index: usize, leader: usize },
    #[error("Hankel system is singular")]
    SingularHankel,
    #[error("recurrence root outside the evaluation group")]
    RootNotInGroup,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// Stable variant name, used by the CLI on stderr.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::ReducibleModulus(_) => "ReducibleModulus",
            Error::InvalidModulus { .. } => "InvalidModulus",
            Error::NoDlogTable => "NoDlogTable",
            Error::DivisionByZero => "DivisionByZero",
            Error::LogOfZero => "LogOfZero",
            Error::InvalidSubfieldDegree { .. } => "InvalidSubfieldDegree",
            Error::NotInSubfield { .. } => "NotInSubfield",
            Error::OrderNotDividing { .. } => "OrderNotDividing",
            Error::SearchExhausted => "SearchExhausted",
            Error::NormalBasisMissing => "NormalBasisMissing",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::Overflow => "Overflow",
            Error::TooLarge { .. } => "TooLarge",
            Error::WrongOrder { .. } => "WrongOrder",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NotConsistent { .. } => "NotConsistent",
            Error::SeedNotInSubfield { .. } => "SeedNotInSubfield",
            Error::InvalidShape(_) => "InvalidShape",
            Error::MemoryCapExceeded { .. } => "MemoryCapExceeded",
            Error::TableMismatch => "TableMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::IndexNotInClass { .. } => "IndexNotInClass",
            Error::SingularHankel => "SingularHankel",
            Error::RootNotInGroup => "RootNotInGroup",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::Parse { .. } => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
