//! Univariate polynomials over an exact field, lowest degree first.

use std::fmt;

use super::field::{rat_int, Field, Rat};

#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly<K: Field> {
    coeffs: Vec<K>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    DivisionByZero,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DivisionByZero => write!(f, "division by zero polynomial"),
        }
    }
}

impl<K: Field> UniPoly<K> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        if c.is_zero() {
            UniPoly::zero()
        } else {
            UniPoly { coeffs: vec![c] }
        }
    }

    /// The variable itself.
    pub fn var() -> Self {
        UniPoly {
            coeffs: vec![K::zero(), K::one()],
        }
    }

    /// `c * x^k`.
    pub fn monomial(c: K, k: usize) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![K::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        UniPoly::from_coeffs(cs.iter().map(|&c| K::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> K {
        self.coeffs.get(k).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` is the zero polynomial's sentinel.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&rhs.coeff(i)));
        }
        UniPoly::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).sub(&rhs.coeff(i)));
        }
        UniPoly::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::from_coeffs(out)
    }

    pub fn mul_scalar(&self, c: &K) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = UniPoly::one();
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

    /// Quotient and remainder with `deg r < deg rhs`.
    pub fn divmod(&self, rhs: &Self) -> Result<(Self, Self), PolyError> {
        let d = rhs.degree().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = rhs
            .leading()
            .unwrap()
            .inv()
            .expect("unit leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![K::zero(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let k = rem.len() - 1;
            let c = rem[k].mul(&lead_inv);
            if !c.is_zero() {
                quot[k - d] = c.clone();
                for (i, b) in rhs.coeffs.iter().enumerate() {
                    rem[k - d + i] = rem[k - d + i].sub(&c.mul(b));
                }
            }
            rem.pop();
        }
        Ok((UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem)))
    }

    /// Exact division; error carries the nonzero remainder case as a panic
    /// in debug builds only, callers are expected to know divisibility.
    pub fn div_exact(&self, rhs: &Self) -> Result<Self, PolyError> {
        let (q, r) = self.divmod(rhs)?;
        debug_assert!(r.is_zero(), "div_exact with nonzero remainder");
        Ok(q)
    }

    pub fn rem(&self, rhs: &Self) -> Result<Self, PolyError> {
        Ok(self.divmod(rhs)?.1)
    }

    /// True iff `rhs` divides `self`.
    pub fn divisible_by(&self, rhs: &Self) -> bool {
        match self.divmod(rhs) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => self.mul_scalar(&l.inv().expect("unit leading coefficient")),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|l| l.is_one())
    }

    /// Monic gcd.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Monic `g = gcd` together with `s, t` such that `s*self + t*rhs = g`.
    pub fn extended_gcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = rhs.clone();
        let mut s0 = UniPoly::one();
        let mut s1 = UniPoly::zero();
        let mut t0 = UniPoly::zero();
        let mut t1 = UniPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).unwrap();
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        match r0.leading() {
            None => (UniPoly::zero(), s0, t0),
            Some(l) => {
                let li = l.inv().expect("unit leading coefficient");
                (r0.mul_scalar(&li), s0.mul_scalar(&li), t0.mul_scalar(&li))
            }
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.mul(&K::from_int(i as i64)));
        }
        UniPoly::from_coeffs(out)
    }

    /// Horner evaluation in any field containing the coefficients via `embed`.
    pub fn eval_in<F: Field>(&self, x: &F, embed: impl Fn(&K) -> F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&embed(c));
        }
        acc
    }

    pub fn eval(&self, x: &K) -> K {
        self.eval_in(x, |c| c.clone())
    }

    /// The polynomial `self(x + c)`.
    pub fn translate(&self, c: &K) -> Self {
        let shift = UniPoly::from_coeffs(vec![c.clone(), K::one()]);
        let mut acc = UniPoly::zero();
        for co in self.coeffs.iter().rev() {
            acc = acc.mul(&shift).add(&UniPoly::constant(co.clone()));
        }
        acc
    }

    /// The reversal `x^n * self(1/x)` where `n = deg self`.
    pub fn reverse(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        UniPoly::from_coeffs(coeffs)
    }

    /// Coefficient-wise map into another field.
    pub fn map_coeffs<F: Field>(&self, f: impl Fn(&K) -> F) -> UniPoly<F> {
        UniPoly::from_coeffs(self.coeffs.iter().map(&f).collect())
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            // parenthesize non-atomic coefficients such as number-field sums
            let needs_paren = mag.contains('+') || mag.contains('-') || mag.contains(' ');
            let mag = if needs_paren && i > 0 {
                format!("({mag})")
            } else {
                mag
            };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push(if sign == "-" { '-' } else { '+' });
            }
            match i {
                0 => out.push_str(&mag),
                _ => {
                    if mag == "1" {
                        // bare power
                    } else {
                        out.push_str(&mag);
                        out.push('*');
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        out
    }
}

impl UniPoly<Rat> {
    /// Content `c` and primitive integer coefficients `self = c * prim`.
    pub fn to_primitive_ints(&self) -> (Rat, Vec<super::field::Int>) {
        use num_integer::Integer as _;
        use num_traits::{One, Signed, Zero};
        type Z = super::field::Int;
        if self.is_zero() {
            return (rat_int(1), Vec::new());
        }
        let mut den = Z::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let scaled: Vec<Z> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut g = Z::zero();
        for c in &scaled {
            g = g.gcd(c);
        }
        if g.is_zero() {
            g = Z::one();
        }
        if scaled.last().map(|c| c.is_negative()).unwrap_or(false) {
            g = -g;
        }
        let prim: Vec<Z> = scaled.iter().map(|c| c / &g).collect();
        (Rat::new(g, den), prim)
    }
}

impl<K: Field> fmt::Display for UniPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("u"))
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::{rat, rat_int};
    use super::*;

    fn p(cs: &[i64]) -> UniPoly<Rat> {
        UniPoly::from_ints(cs)
    }

    #[test]
    fn divmod_examples() {
        // (u^2 - 1) / (u - 1) = (u + 1, 0)
        let (q, r) = p(&[-1, 0, 1]).divmod(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());

        // (u^3 - 4) * 1 = u^3 - 4
        assert_eq!(p(&[-4, 0, 0, 1]).mul(&p(&[1])), p(&[-4, 0, 0, 1]));

        // (27u^6 + 4) divmod u^2 = (27u^4, 4)
        let (q, r) = p(&[4, 0, 0, 0, 0, 0, 27]).divmod(&p(&[0, 0, 1])).unwrap();
        assert_eq!(q, p(&[0, 0, 0, 0, 27]));
        assert_eq!(r, p(&[4]));
    }

    #[test]
    fn divmod_zero_divisor() {
        assert_eq!(
            p(&[1, 1]).divmod(&UniPoly::zero()),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn extended_gcd_bezout() {
        let a = p(&[1, 0, 1]);
        let b = p(&[-1, 1]);
        let (g, s, t) = a.extended_gcd(&b);
        assert!(g.is_one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn translate_and_eval() {
        // f(x) = x^2, f(x + 3) = x^2 + 6x + 9
        let f = p(&[0, 0, 1]);
        assert_eq!(f.translate(&rat_int(3)), p(&[9, 6, 1]));
        assert_eq!(f.eval(&rat(1, 2)), rat(1, 4));
    }

    #[test]
    fn display_matches_cli_format() {
        assert_eq!(p(&[0, 4, 0, 0, -2]).to_string(), "-2*u^4+4*u");
        assert_eq!(p(&[1, -1]).to_string_var("s"), "-s+1");
    }
}
