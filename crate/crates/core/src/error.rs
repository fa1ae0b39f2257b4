use thiserror::Error;

use crate::parse::ParseError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u32),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("linear change matrix is singular")]
    SingularMatrix,

    #[error("degree {degree} is divisible by the characteristic {modulus}")]
    CharacteristicGuard { degree: u32, modulus: u32 },

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("genericity failure: {0}")]
    Genericity(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Failure categories exposed as process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    Genericity,
    Budget,
}

impl ErrorClass {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::Input => 1,
            ErrorClass::Genericity => 2,
            ErrorClass::Budget => 3,
        }
    }

    pub fn reason(self) -> &'static str {
        match self {
            ErrorClass::Input => "input",
            ErrorClass::Genericity => "genericity",
            ErrorClass::Budget => "resource-budget",
        }
    }
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Genericity(_) => ErrorClass::Genericity,
            Error::Budget(_) => ErrorClass::Budget,
            // internal inconsistencies come from unlucky random choices in practice
            Error::Internal(_) => ErrorClass::Genericity,
            _ => ErrorClass::Input,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
