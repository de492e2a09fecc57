use core::fmt;

/// Errors raised by the core routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    Domain(&'static str),
    /// Operand dimensions do not agree.
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// The Gram matrix of the selected channels is numerically singular.
    Singular,
    /// A scheduler was handed an empty user population.
    EmptyInput,
    /// Exhaustive enumeration would exceed the subset guard.
    TooManySubsets { subsets: u128, limit: u128 },
    /// A system configuration violates one of its invariants.
    InvalidConfig(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::DimensionMismatch { expected, found } => write!(
                f,
                "dimension mismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::Singular => f.write_str("channel Gram matrix is singular"),
            Error::EmptyInput => f.write_str("no users to schedule"),
            Error::TooManySubsets { subsets, limit } => write!(
                f,
                "exhaustive search over {subsets} subsets exceeds the limit of {limit}"
            ),
            Error::InvalidConfig(what) => write!(f, "invalid configuration: {what}"),
        }
    }
}

impl core::error::Error for Error {}
