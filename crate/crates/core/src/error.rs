//! Error types shared across the crate.

use alloc::string::String;
use core::fmt;

use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A value failed `is_contribution` for the named collective.
    InvalidContribution { collective: String, value: Value },
    /// A value failed `is_return` on the given contribution.
    InvalidReturn {
        collective: String,
        contribution: Value,
        value: Value,
    },
    /// The handle lacks the enumeration/generator the requested check needs.
    CapabilityMissing {
        collective: String,
        capability: &'static str,
    },
    UnknownMonoid(String),
    /// A finite collective table violates one of the defining equations;
    /// `law` names the equation, `detail` the offending indices.
    InvalidTable { law: String, detail: String },
    InvalidPresheaf(String),
    /// A composite-collective operation needed an explicit strategy table
    /// but the base collective's return set is not exactly enumerable.
    NonEnumerableStrategy { collective: String },
    Overflow { operation: &'static str },
    InvalidParams { constructor: String, message: String },
    UnknownCollective(String),
    UnknownInterface(String),
    Parse(ParseError),
    WrongStatus {
        expected: &'static str,
        actual: &'static str,
    },
    DuplicateMember(String),
}

/// Expression-grammar failure with the byte offset of the offending input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.offset, self.message)
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidContribution { collective, value } => {
                write!(f, "invalid contribution for {collective}: {value}")
            }
            Error::InvalidReturn {
                collective,
                contribution,
                value,
            } => write!(
                f,
                "invalid return for {collective} on contribution {contribution}: {value}"
            ),
            Error::CapabilityMissing {
                collective,
                capability,
            } => write!(f, "{collective} does not support {capability}"),
            Error::UnknownMonoid(name) => write!(f, "unknown monoid: {name}"),
            Error::InvalidTable { law, detail } => {
                write!(f, "invalid collective table: {law} violated at {detail}")
            }
            Error::InvalidPresheaf(msg) => write!(f, "invalid presheaf: {msg}"),
            Error::NonEnumerableStrategy { collective } => write!(
                f,
                "strategy tables over {collective} require exactly enumerable returns"
            ),
            Error::Overflow { operation } => write!(f, "integer overflow in {operation}"),
            Error::InvalidParams {
                constructor,
                message,
            } => write!(f, "invalid parameters for {constructor}: {message}"),
            Error::UnknownCollective(name) => write!(f, "unknown collective: {name}"),
            Error::UnknownInterface(name) => write!(f, "unknown interface: {name}"),
            Error::Parse(e) => write!(f, "{e}"),
            Error::WrongStatus { expected, actual } => {
                write!(f, "session is {actual}, operation requires {expected}")
            }
            Error::DuplicateMember(id) => write!(f, "duplicate member id: {id}"),
        }
    }
}

impl core::error::Error for Error {}
impl core::error::Error for ParseError {}

pub type Result<T> = core::result::Result<T, Error>;
