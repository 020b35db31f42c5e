//! Exact scalar arithmetic.
//!
//! Everything algebraic in this crate is computed over the rationals. Link
//! invariants live in [`LaurentPoly`], a Laurent polynomial in a fractional
//! power `q^{1/N}`, and expansions in `h` live in [`HSeries`], a power series
//! with an explicit truncation order.

mod laurent;
mod rational;
mod series;

pub use laurent::LaurentPoly;
pub use rational::{parse_rational, rat, Rational};
pub use series::HSeries;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("constant term violation: {0}")]
    ConstantTermViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Minimal commutative-ring interface used by the generic matrix code.
///
/// The `_like` constructors take a prototype so that types carrying a
/// truncation order (like [`HSeries`]) can produce compatible units.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::from_integer(0.into())
    }
    fn one_like(&self) -> Self {
        Rational::from_integer(1.into())
    }
    fn is_zero_elem(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}
