//! Exact arithmetic over real algebraic numbers.
//!
//! A value is an element of the quotient ring `Q[x]/(q)` for a squarefree
//! integer polynomial `q`, evaluated at one real root `lambda` of `q`
//! isolated by a rational interval. Equality and sign against `lambda`
//! are decidable: the zero test is a polynomial gcd plus a Sturm root
//! count, and nonzero signs come from interval evaluation with bisection
//! refinement. The modulus is deliberately *not* factored; zero divisors
//! in the quotient are harmless because every decision is taken at the
//! isolated root.
//!
//! Rational values travel through a fast path (a linear modulus), so
//! systems whose dominant eigenvalue is an integer never pay the
//! algebraic-arithmetic cost.

mod context;
mod poly;
mod real;

pub use context::{characteristic_polynomial, isolate_perron_root, squarefree_part, AlgebraicContext};
pub use poly::{IntPoly, RatInterval, RatPoly};
pub use real::{rational_between, ExactRepr, RealAlgebraic};

#[cfg(test)]
pub(crate) use poly::big_rat;

use std::fmt;

/// Errors from exact-algebra operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// An operation rejected the zero polynomial.
    ZeroPolynomial,
    /// The matrix passed to `characteristic_polynomial` is not square.
    NonSquareMatrix,
    /// The polynomial has no real root greater than zero.
    NoPerronRoot,
    /// A context modulus must be squarefree.
    NotSquarefree,
    /// The interval does not isolate exactly one root of the modulus.
    BadRootInterval,
    /// Two values from different contexts were combined arithmetically.
    ContextMismatch,
    /// `rational_between` requires a nonempty open interval.
    EmptyInterval,
    /// Inversion of a value that is zero at the isolated root.
    DivisionByZero,
    /// An exact-value encoding failed to parse.
    BadEncoding,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::ZeroPolynomial => write!(f, "zero polynomial rejected"),
            AlgebraError::NonSquareMatrix => write!(f, "matrix is not square"),
            AlgebraError::NoPerronRoot => write!(f, "no Perron root: no real root > 0"),
            AlgebraError::NotSquarefree => write!(f, "modulus is not squarefree"),
            AlgebraError::BadRootInterval => {
                write!(f, "interval does not isolate exactly one root")
            }
            AlgebraError::ContextMismatch => write!(f, "values live in different contexts"),
            AlgebraError::EmptyInterval => write!(f, "empty interval: lower bound >= upper bound"),
            AlgebraError::DivisionByZero => write!(f, "division by a zero value"),
            AlgebraError::BadEncoding => write!(f, "malformed exact-value encoding"),
        }
    }
}

impl std::error::Error for AlgebraError {}
