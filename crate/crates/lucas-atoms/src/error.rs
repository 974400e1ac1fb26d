//! Crate-wide error type.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::poly::VarPair;

/// Errors reported by the library.
///
/// Three families matter to callers: ordinary argument/contract errors,
/// *mathematical rejections* (the requested object provably does not exist,
/// e.g. [`Error::NotPolynomial`]), and [`Error::Internal`], which signals
/// that a mandatory cross-check between two independent computation routes
/// disagreed and the result cannot be trusted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands live in different variable contexts.
    VarMismatch { left: VarPair, right: VarPair },
    /// Division by the zero polynomial.
    DivisionByZero,
    /// Exact division failed: the numerator is not a multiple of the
    /// denominator over the integers.
    NotDivisible,
    /// The zero polynomial has no degree statistics or gamma expansion.
    ZeroPolynomial,
    /// A univariate polynomial was required.
    NotUnivariate,
    /// Gamma operations are only defined for palindromic polynomials.
    NotPalindromic,
    /// Text could not be parsed; `pos` is a 0-based character offset.
    Parse { pos: usize, msg: String },
    /// A precondition on the arguments was violated.
    InvalidArgument(String),
    /// The quotient is not a polynomial.  Each entry is `(d, a_d, b_d)`
    /// with `a_d < b_d`: atom `P_d` occurs more often in the denominator
    /// than in the numerator.
    NotPolynomial { violations: Vec<(u64, u64, u64)> },
    /// No two-square decomposition exists for this index class; the
    /// lowest pure power of `t` obstructs both squares.
    NoTwoSquareAnalogue { n: u64 },
    /// The requested object lies outside the hypotheses of the supporting
    /// theorems; the library refuses to guess.
    Unsupported(String),
    /// Two independent computation routes disagreed, or a certified
    /// construction failed.  Indicates a bug; the result must not be used.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VarMismatch { left, right } => {
                write!(f, "variable mismatch: {} vs {}", left, right)
            }
            Error::DivisionByZero => write!(f, "division by the zero polynomial"),
            Error::NotDivisible => write!(f, "not divisible over the integers"),
            Error::ZeroPolynomial => write!(f, "undefined for the zero polynomial"),
            Error::NotUnivariate => write!(f, "expected a univariate polynomial"),
            Error::NotPalindromic => write!(f, "polynomial is not palindromic"),
            Error::Parse { pos, msg } => write!(f, "parse error at {}: {}", pos, msg),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {}", msg),
            Error::NotPolynomial { violations } => {
                write!(f, "not a polynomial:")?;
                for (i, (d, a, b)) in violations.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, " a_{} = {} < b_{} = {}", d, a, d, b)?;
                }
                Ok(())
            }
            Error::NoTwoSquareAnalogue { n } => {
                write!(f, "no two-square analogue exists for n = {}", n)
            }
            Error::Unsupported(msg) => write!(f, "unsupported: {}", msg),
            Error::Internal(msg) => write!(f, "internal consistency failure: {}", msg),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
