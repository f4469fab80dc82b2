//! Exact sparse multivariate polynomials over arbitrary-precision rationals.

mod monomial;
mod mpoly;
mod symbol;
mod text;

pub use monomial::Monomial;
pub use mpoly::{ArithOp, MPoly};
pub use symbol::{SymId, Symbol};
pub use text::{parse_rational, rational_to_string};

use num_bigint::BigInt;

pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
