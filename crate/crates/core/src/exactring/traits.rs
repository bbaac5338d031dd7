use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Commutative ring with by-reference operations.
///
/// Method names avoid `add`/`mul` so that they never collide with the
/// `std::ops` traits on types that implement both.
pub trait Ring: Clone + Debug {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_rational(q: &BigRational) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(v.into()))
    }

    fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one_elem();
        for _ in 0..k {
            acc = acc.times(self);
        }
        acc
    }
}

/// Addition and multiplication only; enough for κ-functions and
/// subtraction-free sums.
pub trait Semiring: Clone + Debug {
    fn unit() -> Self;
    fn oplus(&self, rhs: &Self) -> Self;
    fn otimes(&self, rhs: &Self) -> Self;
}

/// A semiring with (partial) division. `odiv` returns `None` when the divisor
/// is the additive zero of the underlying field.
pub trait Semifield: Semiring {
    fn odiv(&self, rhs: &Self) -> Option<Self>;
}

impl<R: Ring> Semiring for R {
    fn unit() -> Self {
        R::one_elem()
    }
    fn oplus(&self, rhs: &Self) -> Self {
        self.plus(rhs)
    }
    fn otimes(&self, rhs: &Self) -> Self {
        self.times(rhs)
    }
}

impl Ring for BigRational {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
}

impl Semifield for BigRational {
    fn odiv(&self, rhs: &Self) -> Option<Self> {
        (!Zero::is_zero(rhs)).then(|| self / rhs)
    }
}

impl Ring for f64 {
    fn zero_elem() -> Self {
        0.0
    }
    fn one_elem() -> Self {
        1.0
    }
    fn is_zero_elem(&self) -> bool {
        *self == 0.0
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
}

impl Semifield for f64 {
    fn odiv(&self, rhs: &Self) -> Option<Self> {
        (*rhs != 0.0).then(|| self / rhs)
    }
}

/// Min-plus integers: `oplus = min`, `otimes = +`, `odiv = −`, unit `0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Trop(pub i64);

impl Semiring for Trop {
    fn unit() -> Self {
        Trop(0)
    }
    fn oplus(&self, rhs: &Self) -> Self {
        Trop(self.0.min(rhs.0))
    }
    fn otimes(&self, rhs: &Self) -> Self {
        Trop(self.0 + rhs.0)
    }
}

impl Semifield for Trop {
    fn odiv(&self, rhs: &Self) -> Option<Self> {
        Some(Trop(self.0 - rhs.0))
    }
}
