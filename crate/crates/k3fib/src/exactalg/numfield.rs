//! Simple algebraic extensions `Q[a]/(m(a))`.
//!
//! One extension context per computation; no towers. An element with no
//! context behaves as a plain rational, which keeps `Field::zero`/`one`
//! context-free and lets rational constants mix freely with extension
//! elements.

use std::fmt;
use std::sync::Arc;

use super::field::{Field, Rat};
use super::poly::UniPoly;

#[derive(Debug)]
pub struct NumberField {
    modulus: UniPoly<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NumberFieldError {
    NotMonic,
    DegreeTooSmall,
    Reducible,
    MixedContexts,
    ZeroInversion,
}

impl fmt::Display for NumberFieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            NumberFieldError::NotMonic => "defining polynomial must be monic",
            NumberFieldError::DegreeTooSmall => "defining polynomial must have degree >= 2",
            NumberFieldError::Reducible => "defining polynomial is reducible over Q",
            NumberFieldError::MixedContexts => "elements belong to different number fields",
            NumberFieldError::ZeroInversion => "inversion of zero",
        };
        write!(f, "{msg}")
    }
}

impl NumberField {
    pub fn new(modulus: UniPoly<Rat>) -> Result<Arc<Self>, NumberFieldError> {
        if !modulus.is_monic() {
            return Err(NumberFieldError::NotMonic);
        }
        if modulus.degree().unwrap_or(0) < 2 {
            return Err(NumberFieldError::DegreeTooSmall);
        }
        if !super::factor::is_irreducible(&modulus) {
            return Err(NumberFieldError::Reducible);
        }
        Ok(Arc::new(NumberField { modulus }))
    }

    /// The field Q(cbrt 4), used by the change of variables for Fibration 1.
    pub fn cbrt4() -> Arc<Self> {
        NumberField::new(UniPoly::from_ints(&[-4, 0, 0, 1])).expect("a^3 - 4 is irreducible")
    }

    pub fn modulus(&self) -> &UniPoly<Rat> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

/// An element of `Q[a]/(m(a))`, reduced to degree < deg m.
#[derive(Debug, Clone)]
pub struct NfElem {
    poly: UniPoly<Rat>,
    ctx: Option<Arc<NumberField>>,
}

impl NfElem {
    pub fn new(poly: UniPoly<Rat>, ctx: &Arc<NumberField>) -> Self {
        let poly = poly.rem(ctx.modulus()).unwrap();
        NfElem {
            poly,
            ctx: Some(Arc::clone(ctx)),
        }
    }

    pub fn rational(r: Rat) -> Self {
        NfElem {
            poly: UniPoly::constant(r),
            ctx: None,
        }
    }

    /// The extension generator `a`.
    pub fn generator(ctx: &Arc<NumberField>) -> Self {
        NfElem::new(UniPoly::var(), ctx)
    }

    pub fn coeffs(&self) -> Vec<Rat> {
        let deg = self.ctx.as_ref().map(|c| c.degree()).unwrap_or(1);
        (0..deg).map(|i| self.poly.coeff(i)).collect()
    }

    pub fn ctx(&self) -> Option<&Arc<NumberField>> {
        self.ctx.as_ref()
    }

    fn unify(&self, rhs: &Self) -> Option<Arc<NumberField>> {
        match (&self.ctx, &rhs.ctx) {
            (Some(a), Some(b)) => {
                assert!(
                    Arc::ptr_eq(a, b) || a == b,
                    "number-field elements from different contexts"
                );
                Some(Arc::clone(a))
            }
            (Some(a), None) => Some(Arc::clone(a)),
            (None, Some(b)) => Some(Arc::clone(b)),
            (None, None) => None,
        }
    }
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly.to_string_var("a"))
    }
}

impl Field for NfElem {
    fn zero() -> Self {
        NfElem {
            poly: UniPoly::zero(),
            ctx: None,
        }
    }

    fn one() -> Self {
        NfElem {
            poly: UniPoly::one(),
            ctx: None,
        }
    }

    fn from_rat(r: &Rat) -> Self {
        NfElem::rational(r.clone())
    }

    fn add(&self, rhs: &Self) -> Self {
        NfElem {
            poly: self.poly.add(&rhs.poly),
            ctx: self.unify(rhs),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        NfElem {
            poly: self.poly.sub(&rhs.poly),
            ctx: self.unify(rhs),
        }
    }

    fn neg(&self) -> Self {
        NfElem {
            poly: self.poly.neg(),
            ctx: self.ctx.clone(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let ctx = self.unify(rhs);
        let mut poly = self.poly.mul(&rhs.poly);
        if let Some(c) = &ctx {
            poly = poly.rem(c.modulus()).unwrap();
        }
        NfElem { poly, ctx }
    }

    fn inv(&self) -> Option<Self> {
        if self.poly.is_zero() {
            return None;
        }
        match &self.ctx {
            None => Some(NfElem {
                poly: UniPoly::constant(self.poly.coeff(0).inv()?),
                ctx: None,
            }),
            Some(c) => {
                // Extended Euclid: s*self + t*m = 1 since m is irreducible.
                let (g, s, _) = self.poly.extended_gcd(c.modulus());
                assert!(g.is_one(), "inverse in a field extension");
                Some(NfElem {
                    poly: s.rem(c.modulus()).unwrap(),
                    ctx: Some(Arc::clone(c)),
                })
            }
        }
    }

    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn to_rat(&self) -> Option<Rat> {
        if self.poly.is_constant() {
            Some(self.poly.coeff(0))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::{rat, rat_int};
    use super::*;

    #[test]
    fn cbrt4_basic() {
        let k = NumberField::cbrt4();
        let a = NfElem::generator(&k);
        let a3 = a.mul(&a).mul(&a);
        assert_eq!(a3, NfElem::rational(rat_int(4)));
    }

    #[test]
    fn nf_invert_examples() {
        let k = NumberField::cbrt4();
        let a = NfElem::generator(&k);
        // a^-1 = a^2/4
        let inv = a.inv().unwrap();
        assert_eq!(inv, NfElem::new(UniPoly::monomial(rat(1, 4), 2), &k));
        assert!(a.mul(&inv).is_one());

        // 2^-1 = 1/2
        let two = NfElem::rational(rat_int(2));
        assert_eq!(two.inv().unwrap(), NfElem::rational(rat(1, 2)));

        // (a+1)^-1 = (a^2 - a + 1)/5, by extended Euclid against a^3 - 4
        let ap1 = a.add(&NfElem::one());
        let inv = ap1.inv().unwrap();
        let expected = NfElem::new(
            UniPoly::from_coeffs(vec![rat(1, 5), rat(-1, 5), rat(1, 5)]),
            &k,
        );
        assert_eq!(inv, expected);
        assert!(ap1.mul(&inv).is_one());
    }

    #[test]
    fn zero_inversion_rejected() {
        assert!(NfElem::zero().inv().is_none());
    }

    #[test]
    fn reducible_modulus_rejected() {
        // a^2 - 1 = (a-1)(a+1)
        assert_eq!(
            NumberField::new(UniPoly::from_ints(&[-1, 0, 1])).err(),
            Some(NumberFieldError::Reducible)
        );
    }
}
