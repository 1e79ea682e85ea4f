//! Rational functions in one variable, kept in canonical form.
//!
//! The canonical form (gcd-canceled numerator/denominator, monic
//! denominator) makes equality testing structural. This is cheap for
//! univariate fractions; multivariate fractions elsewhere in the crate
//! deliberately skip canonicalization.

use std::fmt;

use super::field::{Field, Rat};
use super::poly::{PolyError, UniPoly};

#[derive(Debug, Clone, PartialEq)]
pub struct RatFunc<K: Field> {
    num: UniPoly<K>,
    den: UniPoly<K>,
}

impl<K: Field> RatFunc<K> {
    pub fn zero() -> Self {
        RatFunc::from_poly(UniPoly::zero())
    }

    pub fn one() -> Self {
        RatFunc::from_poly(UniPoly::one())
    }

    pub fn from_rat(r: &Rat) -> Self {
        RatFunc::constant(K::from_rat(r))
    }

    pub fn new(num: UniPoly<K>, den: UniPoly<K>) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: UniPoly<K>, den: UniPoly<K>) -> Self {
        if num.is_zero() {
            return RatFunc {
                num,
                den: UniPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).unwrap();
        let den = den.div_exact(&g).unwrap();
        let lead_inv = den.leading().unwrap().inv().expect("nonzero leading");
        RatFunc {
            num: num.mul_scalar(&lead_inv),
            den: den.mul_scalar(&lead_inv),
        }
    }

    pub fn from_poly(p: UniPoly<K>) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: K) -> Self {
        RatFunc::from_poly(UniPoly::constant(c))
    }

    pub fn var() -> Self {
        RatFunc::from_poly(UniPoly::var())
    }

    pub fn num(&self) -> &UniPoly<K> {
        &self.num
    }

    pub fn den(&self) -> &UniPoly<K> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&UniPoly<K>> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        RatFunc::reduced(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        RatFunc::reduced(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        RatFunc::reduced(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn mul_poly(&self, p: &UniPoly<K>) -> Self {
        RatFunc::reduced(self.num.mul(p), self.den.clone())
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Substitute another rational function for the variable.
    pub fn compose(&self, x: &Self) -> Option<Self> {
        let n = self.num.eval_in(x, |c| RatFunc::constant(c.clone()));
        let d = self.den.eval_in(x, |c| RatFunc::constant(c.clone()));
        n.div(&d)
    }

    pub fn map_coeffs<F: Field>(&self, f: impl Fn(&K) -> F) -> RatFunc<F> {
        RatFunc::reduced(self.num.map_coeffs(&f), self.den.map_coeffs(&f))
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_polynomial() {
            self.num.to_string_var(var)
        } else {
            format!(
                "({})/({})",
                self.num.to_string_var(var),
                self.den.to_string_var(var)
            )
        }
    }
}

impl<K: Field> fmt::Display for RatFunc<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("u"))
    }
}

impl<K: Field> Default for RatFunc<K> {
    fn default() -> Self {
        RatFunc::from_poly(UniPoly::zero())
    }
}

impl<K: Field> Field for RatFunc<K> {
    fn zero() -> Self {
        RatFunc::from_poly(UniPoly::zero())
    }

    fn one() -> Self {
        RatFunc::from_poly(UniPoly::one())
    }

    fn from_rat(r: &Rat) -> Self {
        RatFunc::constant(K::from_rat(r))
    }

    fn add(&self, rhs: &Self) -> Self {
        RatFunc::add(self, rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        RatFunc::sub(self, rhs)
    }

    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }

    fn mul(&self, rhs: &Self) -> Self {
        RatFunc::mul(self, rhs)
    }

    fn inv(&self) -> Option<Self> {
        RatFunc::inv(self)
    }

    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }

    fn to_rat(&self) -> Option<Rat> {
        if !self.is_constant() {
            return None;
        }
        if self.num.is_zero() {
            return Some(<Rat as Field>::zero());
        }
        self.num.coeff(0).to_rat()
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::rat_int;
    use super::*;

    fn rf(num: &[i64], den: &[i64]) -> RatFunc<Rat> {
        RatFunc::new(UniPoly::from_ints(num), UniPoly::from_ints(den)).unwrap()
    }

    #[test]
    fn canonical_form() {
        // (2u^2 - 2) / (2u - 2) = u + 1
        let f = rf(&[-2, 0, 2], &[-2, 2]);
        assert!(f.is_polynomial());
        assert_eq!(f.num(), &UniPoly::from_ints(&[1, 1]));
        // denominator made monic: u / (2u + 2) = (1/2 u) / (u + 1)
        let g = rf(&[0, 1], &[2, 2]);
        assert_eq!(g.den(), &UniPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn arithmetic_round_trip() {
        let f = rf(&[1, 2], &[3, 0, 1]);
        let g = rf(&[-5, 1, 7], &[2, 1]);
        let h = f.div(&g).unwrap();
        assert_eq!(h.mul(&g), f);
        assert_eq!(f.sub(&f), RatFunc::zero());
    }

    #[test]
    fn compose_moebius() {
        // f(u) = u^2, u := 1/s  =>  1/s^2
        let f = rf(&[0, 0, 1], &[1]);
        let inv = rf(&[1], &[0, 1]);
        let c = f.compose(&inv).unwrap();
        assert_eq!(c, rf(&[1], &[0, 0, 1]));
    }

    #[test]
    fn constant_extraction() {
        assert_eq!(
            rf(&[3], &[2]).to_rat(),
            Some(super::super::field::rat(3, 2))
        );
        assert_eq!(rf(&[0, 1], &[1]).to_rat(), None);
        assert_eq!(RatFunc::<Rat>::zero().to_rat(), Some(rat_int(0)));
    }
}
