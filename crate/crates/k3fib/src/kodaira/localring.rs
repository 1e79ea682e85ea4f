//! Arithmetic in the local ring of Q(u) at a monic irreducible p, with
//! exact reductions modulo p^N and Hensel lifting.
//!
//! Residue-field elements are represented by their canonical lifts
//! (polynomials of degree < deg p); mod-p^N representatives by lifts of
//! degree < N deg p.

use crate::exactalg::{QPoly, QRatFunc, Rat, UniPoly};

/// Multiplicity of `p` in a nonzero polynomial.
pub fn poly_ord(f: &QPoly, p: &QPoly) -> i64 {
    assert!(!f.is_zero());
    let mut f = f.clone();
    let mut ord = 0;
    loop {
        let (q, r) = f.divmod(p).unwrap();
        if !r.is_zero() {
            return ord;
        }
        ord += 1;
        f = q;
    }
}

/// Valuation of a nonzero rational function at `p`.
pub fn ratfunc_ord(f: &QRatFunc, p: &QPoly) -> i64 {
    assert!(!f.is_zero());
    poly_ord(f.num(), p) - poly_ord(f.den(), p)
}

/// Strip all factors of `p`: returns (k, g) with f = p^k g, p not | g.
pub fn strip_p(f: &QPoly, p: &QPoly) -> (i64, QPoly) {
    let k = poly_ord(f, p);
    let mut g = f.clone();
    for _ in 0..k {
        g = g.div_exact(p).unwrap();
    }
    (k, g)
}

/// Inverse of `f` modulo `m`, where gcd(f, m) = 1.
pub fn inv_mod(f: &QPoly, m: &QPoly) -> Option<QPoly> {
    let (g, s, _) = f.extended_gcd(m);
    if !g.is_one() {
        return None;
    }
    Some(s.rem(m).unwrap())
}

/// Canonical representative of a p-integral rational function mod `p^N`.
pub fn reduce_mod(f: &QRatFunc, p: &QPoly, n: u32) -> QPoly {
    if f.is_zero() {
        return QPoly::zero();
    }
    let pk = p.pow(n);
    let (a, num) = strip_p(f.num(), p);
    let (b, den) = strip_p(f.den(), p);
    let shift = a - b;
    assert!(shift >= 0, "reduce_mod of a non-integral element");
    if shift >= n as i64 {
        return QPoly::zero();
    }
    let d_inv = inv_mod(&den.rem(&pk).unwrap(), &pk).expect("denominator is a unit");
    let mut rep = num.rem(&pk).unwrap().mul(&d_inv).rem(&pk).unwrap();
    for _ in 0..shift {
        rep = rep.mul(p).rem(&pk).unwrap();
    }
    rep
}

/// Residue in `k(v) = Q[u]/(p)` of a p-integral rational function.
pub fn residue(f: &QRatFunc, p: &QPoly) -> QPoly {
    reduce_mod(f, p, 1)
}

/// Newton-lift a simple root of f (coefficients p-integral rational
/// functions) from an initial residue root to precision p^N.
pub fn hensel_root(f: &[QRatFunc], r0: &QPoly, p: &QPoly, n: u32) -> QPoly {
    let pk = p.pow(n);
    let coeffs: Vec<QPoly> = f.iter().map(|c| reduce_mod(c, p, n)).collect();
    let eval = |r: &QPoly| -> QPoly {
        let mut acc = QPoly::zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(r).add(c).rem(&pk).unwrap();
        }
        acc
    };
    let deriv = |r: &QPoly| -> QPoly {
        let mut acc = QPoly::zero();
        for (i, c) in coeffs.iter().enumerate().rev() {
            if i == 0 {
                break;
            }
            let ci = c.mul_scalar(&crate::exactalg::rat_int(i as i64));
            acc = acc.mul(r).add(&ci).rem(&pk).unwrap();
        }
        acc
    };
    let mut r = r0.rem(&pk).unwrap();
    // quadratic convergence: log2(N) + 2 rounds are plenty
    let rounds = 64 - u64::from(n).leading_zeros() + 2;
    for _ in 0..rounds {
        let fr = eval(&r);
        if fr.is_zero() {
            break;
        }
        let dr = deriv(&r);
        let d_inv = inv_mod(&dr, &pk).expect("simple root: derivative is a unit");
        r = r.sub(&fr.mul(&d_inv)).rem(&pk).unwrap();
    }
    debug_assert!(eval(&r).is_zero(), "hensel_root did not converge");
    r
}

/// Square root of a unit `w` modulo p^N, given a residue square root.
pub fn hensel_sqrt(w: &QRatFunc, z0: &QPoly, p: &QPoly, n: u32) -> QPoly {
    let pk = p.pow(n);
    let wr = reduce_mod(w, p, n);
    let half = UniPoly::constant(crate::exactalg::rat(1, 2));
    let mut z = z0.rem(&pk).unwrap();
    let rounds = 64 - u64::from(n).leading_zeros() + 2;
    for _ in 0..rounds {
        let zi = inv_mod(&z, &pk).expect("square root of a unit stays a unit");
        let next = z
            .add(&wr.mul(&zi).rem(&pk).unwrap())
            .mul(&half)
            .rem(&pk)
            .unwrap();
        if next == z {
            break;
        }
        z = next;
    }
    debug_assert!(z.mul(&z).sub(&wr).rem(&pk).unwrap().is_zero());
    z
}

/// Square root of a rational number, if it is a perfect square.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    use num_traits::Signed;
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(Rat::new(ns, ds))
    } else {
        None
    }
}

// --- polynomials over the residue field k(v) = Q[u]/(p) ---

/// Polynomial in an auxiliary variable with coefficients in k(v),
/// coefficients stored as canonical lifts.
#[derive(Debug, Clone, PartialEq)]
pub struct ResPoly {
    pub coeffs: Vec<QPoly>,
}

pub struct ResCtx<'a> {
    pub p: &'a QPoly,
}

impl<'a> ResCtx<'a> {
    pub fn new(p: &'a QPoly) -> Self {
        ResCtx { p }
    }

    pub fn red(&self, f: &QPoly) -> QPoly {
        f.rem(self.p).unwrap()
    }

    pub fn is_zero(&self, f: &QPoly) -> bool {
        self.red(f).is_zero()
    }

    pub fn inv(&self, f: &QPoly) -> Option<QPoly> {
        inv_mod(&self.red(f), self.p)
    }

    pub fn poly(&self, coeffs: Vec<QPoly>) -> ResPoly {
        let mut coeffs: Vec<QPoly> = coeffs.iter().map(|c| self.red(c)).collect();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ResPoly { coeffs }
    }

    pub fn degree(&self, f: &ResPoly) -> Option<usize> {
        f.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, a: &ResPoly, b: &ResPoly) -> ResPoly {
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return ResPoly { coeffs: vec![] };
        }
        let mut out = vec![QPoly::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
        self.poly(out)
    }

    pub fn rem(&self, a: &ResPoly, m: &ResPoly) -> ResPoly {
        let dm = self.degree(m).expect("division by zero");
        let lead_inv = self
            .inv(m.coeffs.last().unwrap())
            .expect("unit leading coefficient");
        let mut r = a.coeffs.clone();
        while r.len() > dm {
            let k = r.len() - 1;
            let c = self.red(&r[k].mul(&lead_inv));
            if !c.is_zero() {
                for (i, mc) in m.coeffs.iter().enumerate() {
                    r[k - dm + i] = self.red(&r[k - dm + i].sub(&c.mul(mc)));
                }
            }
            r.pop();
            while r.last().is_some_and(|c| self.is_zero(c)) {
                r.pop();
            }
        }
        self.poly(r)
    }

    pub fn gcd(&self, a: &ResPoly, b: &ResPoly) -> ResPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.coeffs.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        // monic normalization
        if let Some(l) = a.coeffs.last() {
            let li = self.inv(l).expect("unit leading coefficient");
            let coeffs = a.coeffs.iter().map(|c| self.red(&c.mul(&li))).collect();
            return ResPoly { coeffs };
        }
        a
    }

    pub fn derivative(&self, f: &ResPoly) -> ResPoly {
        if f.coeffs.len() <= 1 {
            return ResPoly { coeffs: vec![] };
        }
        let coeffs = f
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul_scalar(&crate::exactalg::rat_int(i as i64)))
            .collect();
        self.poly(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat_int, RatFunc};

    fn p(cs: &[i64]) -> QPoly {
        QPoly::from_ints(cs)
    }

    #[test]
    fn ord_and_strip() {
        let u = p(&[0, 1]);
        let f = p(&[0, 0, 0, 2]); // 2u^3
        assert_eq!(poly_ord(&f, &u), 3);
        let (k, g) = strip_p(&f, &u);
        assert_eq!(k, 3);
        assert_eq!(g, p(&[2]));
    }

    #[test]
    fn reduce_and_invert() {
        let u = p(&[0, 1]);
        // 1/(1-u) = 1 + u + u^2 + ... mod u^4
        let f = RatFunc::new(p(&[1]), p(&[1, -1])).unwrap();
        assert_eq!(reduce_mod(&f, &u, 4), p(&[1, 1, 1, 1]));
    }

    #[test]
    fn hensel_sqrt_of_one_minus_u() {
        let u = p(&[0, 1]);
        let w = RatFunc::from_poly(p(&[1, -1]));
        let z = hensel_sqrt(&w, &p(&[1]), &u, 5);
        let pk = u.pow(5);
        assert!(z.mul(&z).sub(&p(&[1, -1])).rem(&pk).unwrap().is_zero());
        // sqrt(1-u) = 1 - u/2 - u^2/8 - u^3/16 - 5u^4/128 + ...
        assert_eq!(z.coeff(1), crate::exactalg::rat(-1, 2));
        assert_eq!(z.coeff(2), crate::exactalg::rat(-1, 8));
    }

    #[test]
    fn hensel_root_refines() {
        let u = p(&[0, 1]);
        // f(x) = x^2 - (1 + u): root near 1
        let f = [
            RatFunc::from_poly(p(&[-1, -1])),
            RatFunc::from_poly(QPoly::zero()),
            RatFunc::from_poly(p(&[1])),
        ];
        let r = hensel_root(&f, &p(&[1]), &u, 4);
        let pk = u.pow(4);
        let val = r.mul(&r).sub(&p(&[1, 1])).rem(&pk).unwrap();
        assert!(val.is_zero());
    }

    #[test]
    fn residue_field_gcd_quadratic_place() {
        // k(v) = Q[u]/(u^2+u+1); check (x - u)(x + u) has gcd x - u with
        // (x - u)^2
        let m = p(&[1, 1, 1]);
        let ctx = ResCtx::new(&m);
        let xu = ctx.poly(vec![p(&[0, -1]), p(&[1])]);
        let xpu = ctx.poly(vec![p(&[0, 1]), p(&[1])]);
        let a = ctx.mul(&xu, &xpu);
        let b = ctx.mul(&xu, &xu);
        let g = ctx.gcd(&a, &b);
        assert_eq!(g, xu);
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rat_sqrt(&rat_int(4)), Some(rat_int(2)));
        assert_eq!(
            rat_sqrt(&crate::exactalg::rat(9, 16)),
            Some(crate::exactalg::rat(3, 4))
        );
        assert_eq!(rat_sqrt(&rat_int(2)), None);
        assert_eq!(rat_sqrt(&rat_int(-4)), None);
    }
}
