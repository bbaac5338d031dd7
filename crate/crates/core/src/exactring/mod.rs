//! Exact arithmetic kernel: sparse polynomials over big rationals, rational
//! expressions, and the ring/semiring traits the rest of the crate is generic
//! over.

mod poly;
mod rational;
mod traits;
mod var;

pub use poly::{Monomial, SparsePoly, Variable};
pub use rational::{Poly, RationalExpr};
pub use traits::{Ring, Semifield, Semiring, Trop};
pub use var::{canonical_color, VarId};

use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("denominator vanishes at the evaluation point")]
    DenominatorVanishes,
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("variable {0} has no value at the evaluation point")]
    Unbound(VarId),
}

/// Shorthand for an integer-valued big rational.
pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Shorthand for `p/q`.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}
