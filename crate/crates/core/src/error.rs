use std::fmt;

/// Library errors. Validation failures are not errors: they are reported
/// through verdict types so that a caller can distinguish "the input is a
/// well-formed sequence that violates a clause" from "the input is garbage".
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or foreign input: wrong ring, unknown prime, bad shape.
    Input(String),
    /// A ring or poset lacks data required by the requested operation.
    Config(String),
    /// Well-posed but outside what the finite representations support.
    Unsupported(String),
    /// A documented precondition was violated.
    Precondition(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Input(msg) => write!(f, "input error: {msg}"),
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
