//! Exact arithmetic: rationals, dense polynomials, truncated power series,
//! symbolic polynomials in the coefficient indeterminates, and the special
//! functions used by the family closed forms.
//!
//! Nothing here uses floating point. All operations are deterministic.

mod poly;
mod scalar;
mod series;
pub mod special;
mod sympoly;

pub use poly::Poly;
pub use scalar::Scalar;
pub use series::Series;
pub use sympoly::{Monomial, SymKind, SymPoly, Symbol};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("series has zero constant term and is not invertible")]
    NotInvertible,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// Commutative ring of path weights. Implemented for numeric and symbolic values.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn from_scalar(c: Scalar) -> Self;
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn from_scalar(c: Scalar) -> Self {
        c
    }
}

impl Ring for SymPoly {
    fn zero() -> Self {
        SymPoly::zero()
    }
    fn one() -> Self {
        SymPoly::one()
    }
    fn is_zero(&self) -> bool {
        SymPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn from_scalar(c: Scalar) -> Self {
        SymPoly::constant(c)
    }
}

impl Ring for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn from_scalar(c: Scalar) -> Self {
        Poly::constant(c)
    }
}
