//! Exact arithmetic kernel: rationals, univariate polynomials, rational
//! functions, exact nullspaces, squarefree decomposition and rational roots.
//!
//! Nothing in here rounds. Every value is immutable once built and all
//! operations are pure, so the types are freely shared across threads.

pub mod factor;
pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod roots;
pub mod squarefree;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use linalg::solve_homogeneous;
pub use poly::UniPoly;
pub use ratfunc::RationalFunc;
pub use roots::rational_roots;
pub use squarefree::{squarefree_decompose, SquarefreeDecomposition};

/// Arbitrary precision rational, always in lowest terms with a positive
/// denominator.
pub type BigRat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid rational literal `{0}`")]
    BadLiteral(String),
}

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: BigInt) -> BigRat {
    BigRat::from_integer(n)
}

/// Parses `p`, `-p` or `p/q` with arbitrarily long integers.
pub fn parse_rat(text: &str) -> Result<BigRat, NumericError> {
    let t = text.trim();
    let bad = || NumericError::BadLiteral(text.to_string());
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(NumericError::DivisionByZero);
    }
    Ok(BigRat::new(n, d))
}

/// `x^e` for any integer exponent; `0^e` with `e < 0` is an error.
pub fn pow_rat(x: &BigRat, e: i64) -> Result<BigRat, NumericError> {
    if e >= 0 {
        Ok(num_traits::pow(x.clone(), e as usize))
    } else if x.is_zero() {
        Err(NumericError::DivisionByZero)
    } else {
        Ok(num_traits::pow(x.recip(), (-e) as usize))
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn common_denominator<'a, I: IntoIterator<Item = &'a BigRat>>(values: I) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Greatest common divisor of the absolute values of `values` (0 if all are zero).
pub fn content<'a, I: IntoIterator<Item = &'a BigInt>>(values: I) -> BigInt {
    use num_integer::Integer;
    values.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

pub(crate) fn sign_of(x: &BigRat) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}
