use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{gauss_jordan, Matrix, Rref};

/// Exact rationals, the ground field of every system.
pub type Rational = BigRational;

/// A commutative field with exact arithmetic.
///
/// `echelon` is the hook through which a field picks its elimination
/// strategy; the default is plain Gauss-Jordan.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Panics when `rhs` is zero.
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(r: &Rational) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_int(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    fn echelon(m: &Matrix<Self>) -> Rref<Self> {
        gauss_jordan(m)
    }

    /// Splits off a leading minus sign for display: `(negative, |self|)`.
    fn signed_parts(&self) -> (bool, String) {
        (false, self.to_string())
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        assert!(!Zero::is_zero(rhs), "division by zero");
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn signed_parts(&self) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a coefficient for display in front of a term, returning the sign
/// separately so callers can join terms with ` + ` / ` - `.
pub fn split_sign(r: &Rational) -> (bool, Rational) {
    (r.is_negative(), r.abs())
}
