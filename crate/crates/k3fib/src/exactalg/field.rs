//! Coefficient fields.
//!
//! Every algebra kernel in this crate is generic over [`Field`]. The two
//! instances are exact rationals and elements of a simple extension
//! `Q[a]/(m(a))`; rational functions form a field too, which lets the same
//! polynomial code run over K(u).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// `n` as an exact rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// An exact field with context-free zero and one.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: &Rat) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|i| self.mul(&i))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_int(n: i64) -> Self {
        Self::from_rat(&rat_int(n))
    }

    /// The value as a rational if it lies in the prime field.
    fn to_rat(&self) -> Option<Rat>;
}

impl Field for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }

    fn one() -> Self {
        <Rat as One>::one()
    }

    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn to_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
}

/// Renders a rational as a leading term of a sum, e.g. `3/2`, `-u`, `+ 2*u`.
pub fn fmt_rat_coeff(c: &Rat) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// True if the rational is negative (used by polynomial displays).
pub fn rat_is_negative(c: &Rat) -> bool {
    c.is_negative()
}
