//! Arithmetic in the function field `C(X3) = K(y1, y2)[t] / (t^3 - R)`,
//! R = (y1^2 - 1)(y2^2 - 1).
//!
//! Elements are kept with t-degree <= 2; every product is reduced eagerly
//! by the defining relation. Identity verification never eliminates
//! variables: an expression is checked by reducing it here and testing the
//! three t-coefficients for zero.

pub mod mpoly;

use std::fmt;

use crate::exactalg::{Field, Rat};

pub use mpoly::{Frac, MPoly};

/// The fixed relation polynomial t^3 - (y1^2-1)(y2^2-1), exposed as the
/// right-hand side R.
pub fn relation_rhs<K: Field>() -> MPoly<K> {
    let y1 = MPoly::<K>::y1();
    let y2 = MPoly::<K>::y2();
    let one = MPoly::one();
    y1.pow(2).sub(&one).mul(&y2.pow(2).sub(&one))
}

/// c0 + c1 t + c2 t^2 with coefficients in K(y1, y2).
#[derive(Debug, Clone)]
pub struct X3Elem<K: Field> {
    c: [Frac<K>; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum X3Error {
    DivisionByZero,
}

impl fmt::Display for X3Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            X3Error::DivisionByZero => write!(f, "division by zero in C(X3)"),
        }
    }
}

impl<K: Field> X3Elem<K> {
    pub fn zero() -> Self {
        X3Elem {
            c: [Frac::zero(), Frac::zero(), Frac::zero()],
        }
    }

    pub fn one() -> Self {
        X3Elem {
            c: [Frac::one(), Frac::zero(), Frac::zero()],
        }
    }

    pub fn from_frac(f: Frac<K>) -> Self {
        X3Elem {
            c: [f, Frac::zero(), Frac::zero()],
        }
    }

    pub fn from_mpoly(p: MPoly<K>) -> Self {
        X3Elem::from_frac(Frac::from_poly(p))
    }

    pub fn from_int(n: i64) -> Self {
        X3Elem::from_mpoly(MPoly::from_int(n))
    }

    pub fn from_rat(r: &Rat) -> Self {
        X3Elem::from_mpoly(MPoly::constant(K::from_rat(r)))
    }

    pub fn y1() -> Self {
        X3Elem::from_mpoly(MPoly::y1())
    }

    pub fn y2() -> Self {
        X3Elem::from_mpoly(MPoly::y2())
    }

    pub fn t() -> Self {
        X3Elem {
            c: [Frac::zero(), Frac::one(), Frac::zero()],
        }
    }

    /// Extension generator as a field constant (e.g. cbrt 4).
    pub fn constant(c: K) -> Self {
        X3Elem::from_mpoly(MPoly::constant(c))
    }

    /// Build from arbitrary t-coefficients, reducing by t^3 = R.
    pub fn from_t_coeffs(coeffs: Vec<Frac<K>>) -> Self {
        let r = Frac::from_poly(relation_rhs::<K>());
        let mut out = [Frac::zero(), Frac::zero(), Frac::zero()];
        let mut rpow = Frac::one();
        for (i, c) in coeffs.into_iter().enumerate() {
            if i > 0 && i % 3 == 0 {
                rpow = rpow.mul(&r);
            }
            let slot = i % 3;
            out[slot] = out[slot].add(&c.mul(&rpow));
        }
        X3Elem { c: out }
    }

    pub fn coeff(&self, i: usize) -> &Frac<K> {
        &self.c[i]
    }

    pub fn add(&self, rhs: &Self) -> Self {
        X3Elem {
            c: [
                self.c[0].add(&rhs.c[0]),
                self.c[1].add(&rhs.c[1]),
                self.c[2].add(&rhs.c[2]),
            ],
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        X3Elem {
            c: [
                self.c[0].sub(&rhs.c[0]),
                self.c[1].sub(&rhs.c[1]),
                self.c[2].sub(&rhs.c[2]),
            ],
        }
    }

    pub fn neg(&self) -> Self {
        X3Elem {
            c: [self.c[0].neg(), self.c[1].neg(), self.c[2].neg()],
        }
    }

    /// Product reduced to t-degree <= 2 by t^3 = (y1^2-1)(y2^2-1).
    pub fn mul(&self, rhs: &Self) -> Self {
        let r = Frac::from_poly(relation_rhs::<K>());
        let a = &self.c;
        let b = &rhs.c;
        let c0 = a[0]
            .mul(&b[0])
            .add(&r.mul(&a[1].mul(&b[2]).add(&a[2].mul(&b[1]))));
        let c1 = a[0]
            .mul(&b[1])
            .add(&a[1].mul(&b[0]))
            .add(&r.mul(&a[2].mul(&b[2])));
        let c2 = a[0].mul(&b[2]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[0]));
        X3Elem { c: [c0, c1, c2] }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = X3Elem::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// True iff the element is zero in the field. Denominators are nonzero
    /// polynomials in (y1, y2) by construction, so it suffices to test the
    /// three numerators.
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|f| f.is_zero())
    }

    /// Inverse via extended Euclid of c(T) against T^3 - R over K(y1, y2).
    ///
    /// Denominators are cleared first, and the Euclid runs in its
    /// pseudo-remainder form: remainder and cofactor are rescaled by the
    /// same base-ring unit at every step, so all coefficients stay
    /// polynomial and no nested fractions build up.
    pub fn invert(&self) -> Result<Self, X3Error> {
        if self.is_zero() {
            return Err(X3Error::DivisionByZero);
        }
        let d01 = self.c[0].den().mul(self.c[1].den());
        let all = d01.mul(self.c[2].den());
        let cleared: Vec<MPoly<K>> = vec![
            self.c[0].num().mul(&self.c[1].den().mul(self.c[2].den())),
            self.c[1].num().mul(&self.c[0].den().mul(self.c[2].den())),
            self.c[2].num().mul(&d01),
        ];

        // T-polynomials with MPoly coefficients, lowest degree first
        let trim = |mut v: Vec<MPoly<K>>| -> Vec<MPoly<K>> {
            while v.last().is_some_and(|c| c.is_zero()) {
                v.pop();
            }
            v
        };
        let r = relation_rhs::<K>();
        // invariant: s_i * (cleared element) === r_i  (mod T^3 - R)
        let mut r0 = vec![r.neg(), MPoly::zero(), MPoly::zero(), MPoly::one()];
        let mut s0: Vec<MPoly<K>> = vec![];
        let mut r1 = trim(cleared);
        let mut s1: Vec<MPoly<K>> = vec![MPoly::one()];

        while r1.len() > 1 {
            let lead = r1.last().unwrap().clone();
            let mut rem = r0.clone();
            let mut srem = s0.clone();
            while rem.len() >= r1.len() {
                let top = rem.last().unwrap().clone();
                if top.is_zero() {
                    rem.pop();
                    continue;
                }
                let shift = rem.len() - r1.len();
                // rem <- lead * rem - top T^shift * r1, and the same
                // combination on the cofactors
                rem = rem.iter().map(|c| c.mul(&lead)).collect();
                for (i, c) in r1.iter().enumerate() {
                    rem[shift + i] = rem[shift + i].sub(&top.mul(c));
                }
                srem = srem.iter().map(|c| c.mul(&lead)).collect();
                for (i, c) in s1.iter().enumerate() {
                    if srem.len() <= shift + i {
                        srem.resize(shift + i + 1, MPoly::zero());
                    }
                    srem[shift + i] = srem[shift + i].sub(&top.mul(c));
                }
                rem = trim(rem);
            }
            r0 = r1;
            s0 = s1;
            r1 = trim(rem);
            s1 = srem;
        }
        let g = r1
            .first()
            .cloned()
            .filter(|g| !g.is_zero())
            .expect("t^3 - R is irreducible over K(y1, y2), gcd must be a unit");
        // inverse of the original element: (s1 / g) * (cleared denominator)
        let mut out = [Frac::zero(), Frac::zero(), Frac::zero()];
        for (i, c) in s1.iter().enumerate() {
            out[i] = Frac::new(c.mul(&all), g.clone());
        }
        Ok(X3Elem { c: out })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, X3Error> {
        Ok(self.mul(&rhs.invert()?))
    }
}

impl<K: Field> PartialEq for X3Elem<K> {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl<K: Field> Field for X3Elem<K> {
    fn zero() -> Self {
        X3Elem::zero()
    }

    fn one() -> Self {
        X3Elem::one()
    }

    fn from_rat(r: &Rat) -> Self {
        X3Elem::from_rat(r)
    }

    fn add(&self, rhs: &Self) -> Self {
        X3Elem::add(self, rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        X3Elem::sub(self, rhs)
    }

    fn neg(&self) -> Self {
        X3Elem::neg(self)
    }

    fn mul(&self, rhs: &Self) -> Self {
        X3Elem::mul(self, rhs)
    }

    fn inv(&self) -> Option<Self> {
        X3Elem::invert(self).ok()
    }

    fn is_zero(&self) -> bool {
        X3Elem::is_zero(self)
    }

    fn to_rat(&self) -> Option<Rat> {
        if !self.c[1].is_zero() || !self.c[2].is_zero() {
            return None;
        }
        self.c[0].to_rat()
    }
}

impl<K: Field> fmt::Display for X3Elem<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "*t", "*t^2"];
        let mut parts = Vec::new();
        for (i, c) in self.c.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("({}){}", c, names[i]));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
