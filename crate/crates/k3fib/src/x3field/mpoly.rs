//! Sparse polynomials in (y1, y2) over an exact field.

use std::collections::BTreeMap;
use std::fmt;

use crate::exactalg::{Field, Rat};

/// Exponent-vector to coefficient map; zero coefficients never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct MPoly<K: Field> {
    terms: BTreeMap<(u32, u32), K>,
}

impl<K: Field> MPoly<K> {
    pub fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        MPoly::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        MPoly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        MPoly::constant(K::from_int(n))
    }

    pub fn y1() -> Self {
        MPoly::term(K::one(), 1, 0)
    }

    pub fn y2() -> Self {
        MPoly::term(K::one(), 0, 1)
    }

    pub fn term(c: K, e1: u32, e2: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((e1, e2), c);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &K)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.terms.clone();
        for (e, c) in &rhs.terms {
            match out.get_mut(e) {
                Some(v) => {
                    let s = v.add(c);
                    if s.is_zero() {
                        out.remove(e);
                    } else {
                        *v = s;
                    }
                }
                None => {
                    out.insert(*e, c.clone());
                }
            }
        }
        MPoly { terms: out }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out: BTreeMap<(u32, u32), K> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = (ea.0 + eb.0, ea.1 + eb.1);
                let prod = ca.mul(cb);
                match out.get_mut(&e) {
                    Some(v) => {
                        let s = v.add(&prod);
                        if s.is_zero() {
                            out.remove(&e);
                        } else {
                            *v = s;
                        }
                    }
                    None => {
                        if !prod.is_zero() {
                            out.insert(e, prod);
                        }
                    }
                }
            }
        }
        MPoly { terms: out }
    }

    pub fn mul_scalar(&self, c: &K) -> Self {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v.mul(c))).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = MPoly::one();
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

    /// Constant value if the polynomial has no variables.
    pub fn to_const(&self) -> Option<K> {
        if self.is_zero() {
            return Some(K::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&(0, 0)) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn map_coeffs<F: Field>(&self, f: impl Fn(&K) -> F) -> MPoly<F> {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter_map(|(e, c)| {
                    let v = f(c);
                    (!v.is_zero()).then_some((*e, v))
                })
                .collect(),
        }
    }
}

impl<K: Field> fmt::Display for MPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((e1, e2), c) in self.terms.iter().rev() {
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let mut parts = Vec::new();
            if mag != "1" || (*e1 == 0 && *e2 == 0) {
                let needs_paren = mag.contains('+') || mag.contains('-');
                parts.push(if needs_paren { format!("({mag})") } else { mag });
            }
            for (name, e) in [("y1", e1), ("y2", e2)] {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Divisibility of bivariate polynomials, by division along a variable in
/// which the divisor has a single leading term of degree zero in the other
/// variable. Returns None when neither variable admits that strategy.
pub fn divisible<K: Field>(n: &MPoly<K>, f: &MPoly<K>) -> Option<bool> {
    division(n, f).map(|q| q.is_some())
}

/// The exact quotient n / f when it exists, found by the same single-leading-
/// term division; None when the strategy does not apply or f does not
/// divide n.
pub fn try_div<K: Field>(n: &MPoly<K>, f: &MPoly<K>) -> Option<MPoly<K>> {
    division(n, f).flatten()
}

/// Outer None: strategy inapplicable. Inner None: strategy ran, not
/// divisible.
fn division<K: Field>(n: &MPoly<K>, f: &MPoly<K>) -> Option<Option<MPoly<K>>> {
    for var in [0usize, 1] {
        let deg_of = |p: &MPoly<K>, v: usize| -> u32 {
            p.terms()
                .map(|(e, _)| if v == 0 { e.0 } else { e.1 })
                .max()
                .unwrap_or(0)
        };
        let fd = deg_of(f, var);
        if fd == 0 {
            continue;
        }
        if deg_of(n, var) < fd && !n.is_zero() {
            return Some(None);
        }
        let lead_terms: Vec<_> = f
            .terms()
            .filter(|(e, _)| (if var == 0 { e.0 } else { e.1 }) == fd)
            .collect();
        if lead_terms.len() != 1 {
            continue;
        }
        let (&le, lc) = lead_terms[0];
        let other_deg = if var == 0 { le.1 } else { le.0 };
        if other_deg != 0 {
            continue;
        }
        let lc_inv = lc.inv()?;
        let mut rem = n.clone();
        let mut quot = MPoly::zero();
        loop {
            let rd = deg_of(&rem, var);
            if rem.is_zero() || rd < fd {
                return Some(rem.is_zero().then_some(quot));
            }
            let (&(e0, e1), c) = rem
                .terms()
                .find(|(e, _)| (if var == 0 { e.0 } else { e.1 }) == rd)
                .unwrap();
            let q = c.mul(&lc_inv);
            let shift = if var == 0 {
                (rd - fd, e1)
            } else {
                (e0, rd - fd)
            };
            let qterm = MPoly::term(q, shift.0, shift.1);
            rem = rem.sub(&qterm.mul(f));
            quot = quot.add(&qterm);
        }
    }
    None
}

/// Unreduced fractions of multivariate polynomials. Equality and the zero
/// test go through cross-multiplication; no multivariate gcd anywhere.
#[derive(Debug, Clone)]
pub struct Frac<K: Field> {
    num: MPoly<K>,
    den: MPoly<K>,
}

impl<K: Field> Frac<K> {
    pub fn new(num: MPoly<K>, den: MPoly<K>) -> Self {
        assert!(!den.is_zero(), "fraction with zero denominator");
        if num.is_zero() {
            return Frac {
                num,
                den: MPoly::one(),
            };
        }
        Frac { num, den }
    }

    pub fn from_poly(p: MPoly<K>) -> Self {
        Frac {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Frac::from_poly(MPoly::zero())
    }

    pub fn one() -> Self {
        Frac::from_poly(MPoly::one())
    }

    pub fn num(&self) -> &MPoly<K> {
        &self.num
    }

    pub fn den(&self) -> &MPoly<K> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Frac::new(self.num.add(&rhs.num), self.den.clone());
        }
        // when one denominator divides the other, lift to the larger one
        // instead of multiplying them; this keeps powers of a common base
        // from piling up (still no gcd anywhere)
        if let Some(q) = try_div(&rhs.den, &self.den) {
            return Frac::new(self.num.mul(&q).add(&rhs.num), rhs.den.clone());
        }
        if let Some(q) = try_div(&self.den, &rhs.den) {
            return Frac::new(self.num.add(&rhs.num.mul(&q)), self.den.clone());
        }
        Frac::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Frac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Frac::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Frac {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, e: u32) -> Self {
        Frac {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }
}

impl<K: Field> PartialEq for Frac<K> {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl<K: Field> fmt::Display for Frac<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<K: Field> Field for Frac<K> {
    fn zero() -> Self {
        Frac::zero()
    }

    fn one() -> Self {
        Frac::one()
    }

    fn from_rat(r: &Rat) -> Self {
        Frac::from_poly(MPoly::constant(K::from_rat(r)))
    }

    fn add(&self, rhs: &Self) -> Self {
        Frac::add(self, rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Frac::sub(self, rhs)
    }

    fn neg(&self) -> Self {
        Frac::neg(self)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Frac::mul(self, rhs)
    }

    fn inv(&self) -> Option<Self> {
        Frac::inv(self)
    }

    fn is_zero(&self) -> bool {
        Frac::is_zero(self)
    }

    fn to_rat(&self) -> Option<Rat> {
        let n = self.num.to_const()?.to_rat()?;
        let d = self.den.to_const()?.to_rat()?;
        Some(n / d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat_int;

    #[test]
    fn mpoly_arith() {
        let y1 = MPoly::<Rat>::y1();
        let y2 = MPoly::<Rat>::y2();
        let p = y1.add(&y2); // y1 + y2
        let q = y1.sub(&y2); // y1 - y2
        let prod = p.mul(&q);
        let expect = y1.mul(&y1).sub(&y2.mul(&y2));
        assert_eq!(prod, expect);
        assert_eq!(p.pow(2), p.mul(&p));
    }

    #[test]
    fn frac_cross_multiplication_equality() {
        let y1 = MPoly::<Rat>::y1();
        // (y1^2 - 1)/(y1 - 1) == (y1 + 1)/1 without any gcd computation
        let a = Frac::new(y1.pow(2).sub(&MPoly::one()), y1.sub(&MPoly::one()));
        let b = Frac::from_poly(y1.add(&MPoly::one()));
        assert_eq!(a, b);
        assert!(a.sub(&b).is_zero());
    }

    #[test]
    fn frac_display() {
        let f = Frac::new(MPoly::<Rat>::y1(), MPoly::from_int(2));
        assert_eq!(f.to_string(), "(y1)/(2)");
        assert_eq!(MPoly::<Rat>::constant(rat_int(-3)).to_string(), "-3");
    }
}
