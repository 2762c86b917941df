//! Exact coefficient rings shared by the whole crate.
//!
//! Three rings are used: arbitrary-precision rationals, univariate
//! polynomials in the family parameter `lambda`, and multivariate
//! polynomials in generic 1-form coefficients `a1..an`. Everything is
//! exact; there is no floating point anywhere, because contact existence
//! is a zero/nonzero question that rounding would invalidate.

mod multipoly;
mod unipoly;

pub use multipoly::MultiPoly;
pub use unipoly::{RootError, UniPoly};

use std::fmt;

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator (guaranteed by the underlying representation).
pub type Rational = num_rational::BigRational;

/// Small integer rational constant.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Small fraction constant; panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Operations required of any scalar coefficient ring.
///
/// Implemented by [`Rational`], [`UniPoly`] and [`MultiPoly`] so the
/// exterior algebra and the Lie algebra machinery run unchanged over any
/// of them. All values are immutable and safe to share across threads.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn from_int(n: i64) -> Self;
}

impl Ring for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }

    fn one() -> Self {
        num_traits::One::one()
    }

    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn from_int(n: i64) -> Self {
        rat(n)
    }
}
