use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet size must be in 2..=256, got {0}")]
    InvalidAlphabet(u64),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("target space too large: {a}^({k}^2) exceeds {limit}")]
    TargetSpaceTooLarge { k: usize, a: u32, limit: &'static str },

    #[error("coverage guard exceeded: {a}^({k}^2) targets exceeds the guard of 2^{guard_bits} bits; check targets one at a time with contains_target")]
    CoverageGuard { k: usize, a: u32, guard_bits: u32 },

    #[error("enumeration guard exceeded: {0}")]
    EnumerationGuard(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("dimension overflow: {0}")]
    Overflow(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
