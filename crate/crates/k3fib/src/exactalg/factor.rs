//! Squarefree decomposition and irreducible factorization over Q.
//!
//! Factorization is only ever needed for the small polynomials that locate
//! bad fibers (degree <= 8 in practice). The strategy: Yun's squarefree
//! decomposition, rational-root stripping, then for what remains a modular
//! factor-degree analysis to prove irreducibility, with Kronecker's
//! interpolation method as the complete fallback when a proper factor can
//! exist.

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{rat_int, Field, Int, Rat};
use super::poly::UniPoly;

/// Yun's algorithm. Returns monic squarefree factors with multiplicities;
/// constants yield an empty list. The product of `f^m` equals the input up
/// to a unit.
pub fn squarefree_factor<K: Field>(p: &UniPoly<K>) -> Vec<(UniPoly<K>, u32)> {
    assert!(!p.is_zero(), "squarefree_factor of zero");
    let p = p.make_monic();
    if p.is_constant() {
        return Vec::new();
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_exact(&a0).unwrap();
    let mut c = dp.div_exact(&a0).unwrap();
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut mult = 1u32;
    loop {
        let a = b.gcd(&d);
        if !a.is_constant() {
            out.push((a.make_monic(), mult));
        }
        b = b.div_exact(&a).unwrap();
        if b.is_constant() {
            break;
        }
        c = d.div_exact(&a).unwrap();
        d = c.sub(&b.derivative());
        mult += 1;
    }
    out
}

/// Monic irreducible factorization over Q with multiplicities.
pub fn irreducible_factor(p: &UniPoly<Rat>) -> Vec<(UniPoly<Rat>, u32)> {
    let mut out: Vec<(UniPoly<Rat>, u32)> = Vec::new();
    for (sf, mult) in squarefree_factor(p) {
        for piece in split_squarefree(&sf) {
            match out.iter_mut().find(|(f, _)| *f == piece) {
                Some((_, m)) => *m += mult,
                None => out.push((piece, mult)),
            }
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.to_string().cmp(&b.0.to_string()))
    });
    out
}

pub fn is_irreducible(p: &UniPoly<Rat>) -> bool {
    match p.degree() {
        None | Some(0) => false,
        Some(1) => true,
        Some(_) => {
            let f = irreducible_factor(p);
            f.len() == 1 && f[0].1 == 1
        }
    }
}

/// Fully factor a monic squarefree polynomial.
fn split_squarefree(f: &UniPoly<Rat>) -> Vec<UniPoly<Rat>> {
    let mut todo = vec![f.clone()];
    let mut out = Vec::new();
    while let Some(g) = todo.pop() {
        let deg = g.degree().unwrap_or(0);
        if deg == 0 {
            continue;
        }
        if deg == 1 {
            out.push(g.make_monic());
            continue;
        }
        if let Some(root) = rational_root(&g) {
            let lin = UniPoly::from_coeffs(vec![root.neg(), rat_int(1)]);
            todo.push(g.div_exact(&lin).unwrap());
            out.push(lin);
            continue;
        }
        // No rational root: degrees 2 and 3 are settled.
        if deg <= 3 {
            out.push(g.make_monic());
            continue;
        }
        let degrees = possible_factor_degrees(&g);
        let proper: Vec<usize> = degrees
            .iter()
            .copied()
            .filter(|&d| d >= 2 && d <= deg / 2)
            .collect();
        if proper.is_empty() {
            out.push(g.make_monic());
            continue;
        }
        match kronecker_split(&g, &proper) {
            Some(h) => {
                todo.push(g.div_exact(&h).unwrap());
                todo.push(h);
            }
            None => out.push(g.make_monic()),
        }
    }
    out.sort_by_key(|h| h.degree());
    out
}

/// One rational root of `g`, if any.
fn rational_root(g: &UniPoly<Rat>) -> Option<Rat> {
    let (_, prim) = g.to_primitive_ints();
    let lead = prim.last()?.clone();
    let konst = prim
        .iter()
        .find(|c| !c.is_zero())
        .cloned()
        .unwrap_or_else(Int::one);
    // x = 0 root when the constant term vanishes
    if prim.first().map(|c| c.is_zero()).unwrap_or(false) {
        return Some(rat_int(0));
    }
    let ps = small_divisors(&konst);
    let qs = small_divisors(&lead);
    for p in &ps {
        for q in &qs {
            for sign in [1i64, -1] {
                let cand = Rat::new(p * Int::from(sign), q.clone());
                if Field::is_zero(&g.eval(&cand)) {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// Positive divisors of |n|, exhaustively (values in scope are small).
fn small_divisors(n: &Int) -> Vec<Int> {
    let n = n.abs();
    if n.is_zero() {
        return vec![Int::one()];
    }
    let mut divs = Vec::new();
    let mut d = Int::one();
    loop {
        let dd = &d * &d;
        if dd > n {
            break;
        }
        if (&n % &d).is_zero() {
            divs.push(d.clone());
            let q = &n / &d;
            if q != d {
                divs.push(q);
            }
        }
        d += 1;
        if d > Int::from(1_000_000) {
            // give up enumerating huge divisor sets; the root test then
            // simply misses exotic roots, which the Kronecker stage catches
            break;
        }
    }
    divs.sort();
    divs
}

/// Degrees d such that a factor of degree d is not excluded by factoring
/// modulo several small primes. Always contains 0 and deg.
fn possible_factor_degrees(g: &UniPoly<Rat>) -> Vec<usize> {
    let deg = g.degree().unwrap();
    let (_, prim) = g.to_primitive_ints();
    let mut possible: u64 = (1u64 << (deg + 1)) - 1;
    let primes = [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let mut used = 0;
    for &p in &primes {
        if used >= 6 {
            break;
        }
        let Some(fp) = reduce_mod_p(&prim, p) else {
            continue;
        };
        if fp.len() - 1 != deg {
            continue; // leading coefficient vanished
        }
        let Some(degs) = modp_factor_degrees(&fp, p) else {
            continue; // not squarefree mod p
        };
        // subset sums of the mod-p factor degrees
        let mut sums: u64 = 1;
        for d in degs {
            sums |= sums << d;
        }
        possible &= sums;
        used += 1;
        if possible == (1 | (1u64 << deg)) {
            break;
        }
    }
    (0..=deg).filter(|&d| possible >> d & 1 == 1).collect()
}

fn reduce_mod_p(prim: &[Int], p: u64) -> Option<Vec<u64>> {
    let m = Int::from(p);
    let out: Vec<u64> = prim
        .iter()
        .map(|c| c.mod_floor(&m).to_u64().unwrap())
        .collect();
    Some(out)
}

/// Distinct-degree analysis mod p: the multiset of irreducible factor
/// degrees of a squarefree polynomial over F_p. Returns None when the
/// reduction is not squarefree.
fn modp_factor_degrees(f: &[u64], p: u64) -> Option<Vec<usize>> {
    let f = fp_monic(f, p)?;
    let df = fp_derivative(&f, p);
    if fp_gcd(&f, &df, p).len() > 1 {
        return None;
    }
    let mut degrees = Vec::new();
    let mut rest = f;
    let mut d = 1usize;
    // x^(p^d) mod rest, maintained incrementally
    let mut xq = fp_powmod_x(p, &rest, p);
    while rest.len() - 1 >= 2 * d {
        // gcd(rest, x^(p^d) - x)
        let mut diff = xq.clone();
        diff = fp_sub(&diff, &[0, 1], p);
        let g = fp_gcd(&rest, &diff, p);
        if g.len() > 1 {
            let count = (g.len() - 1) / d;
            for _ in 0..count {
                degrees.push(d);
            }
            rest = fp_divexact(&rest, &g, p);
            xq = fp_rem(&xq, &rest, p);
        }
        d += 1;
        if rest.len() <= 1 {
            break;
        }
        xq = fp_powmod(&xq, p, &rest, p);
    }
    if rest.len() > 1 {
        degrees.push(rest.len() - 1);
    }
    Some(degrees)
}

// --- tiny F_p[x] kernel (dense, lowest first, u64 arithmetic) ---

fn fp_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fp_monic(f: &[u64], p: u64) -> Option<Vec<u64>> {
    let f = fp_trim(f.to_vec());
    let lead = *f.last()?;
    let li = fp_inv(lead, p)?;
    Some(f.iter().map(|&c| c * li % p).collect())
}

fn fp_inv(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    // Fermat
    Some(fp_pownum(a % p, p - 2, p))
}

fn fp_pownum(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y % p) % p;
    }
    fp_trim(out)
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(out)
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let m = fp_trim(m.to_vec());
    let mut r = fp_trim(a.to_vec());
    let dm = m.len() - 1;
    let li = fp_inv(*m.last().unwrap(), p).unwrap();
    while r.len() > dm {
        let k = r.len() - 1;
        let c = r[k] * li % p;
        if c != 0 {
            for (i, &mc) in m.iter().enumerate() {
                r[k - dm + i] = (r[k - dm + i] + p * p - c * mc % p) % p;
            }
        }
        r.pop();
        r = fp_trim(r);
        if r.len() <= dm {
            break;
        }
    }
    fp_trim(r)
}

fn fp_divexact(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let b = fp_trim(b.to_vec());
    let mut r = fp_trim(a.to_vec());
    let db = b.len() - 1;
    let li = fp_inv(*b.last().unwrap(), p).unwrap();
    let mut q = vec![0u64; r.len().saturating_sub(db)];
    while r.len() > db {
        let k = r.len() - 1;
        let c = r[k] * li % p;
        q[k - db] = c;
        for (i, &bc) in b.iter().enumerate() {
            r[k - db + i] = (r[k - db + i] + p * p - c * bc % p) % p;
        }
        r.pop();
        r = fp_trim(r);
    }
    fp_trim(q)
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = fp_trim(a.to_vec());
    let mut b = fp_trim(b.to_vec());
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    match fp_monic(&a, p) {
        Some(m) => m,
        None => Vec::new(),
    }
}

fn fp_derivative(f: &[u64], p: u64) -> Vec<u64> {
    if f.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(f.len() - 1);
    for (i, &c) in f.iter().enumerate().skip(1) {
        out.push(c * (i as u64 % p) % p);
    }
    fp_trim(out)
}

/// x^e mod m over F_p.
fn fp_powmod_x(e: u64, m: &[u64], p: u64) -> Vec<u64> {
    fp_powmod(&[0, 1], e, m, p)
}

fn fp_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut b = fp_rem(base, m, p);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_rem(&fp_mul(&acc, &b, p), m, p);
        }
        b = fp_rem(&fp_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

/// Kronecker interpolation: find a monic factor of `g` with degree in
/// `degrees`, or None if `g` has no such factor (then `g` is irreducible
/// whenever `degrees` covers 2..=deg/2).
fn kronecker_split(g: &UniPoly<Rat>, degrees: &[usize]) -> Option<UniPoly<Rat>> {
    let (_, prim) = g.to_primitive_ints();
    let gz =
        UniPoly::<Rat>::from_coeffs(prim.iter().map(|c| Rat::from_integer(c.clone())).collect());
    for &d in degrees {
        // evaluation points 0, 1, -1, 2, -2, ...
        let points: Vec<i64> = (0..=(d as i64))
            .map(|i| if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 })
            .collect();
        let values: Vec<Int> = points
            .iter()
            .map(|&x| {
                let v = gz.eval(&Rat::from_integer(Int::from(x)));
                v.numer().clone()
            })
            .collect();
        if values.iter().any(|v| v.is_zero()) {
            // a root slipped through; handled by the rational-root stage
            continue;
        }
        let divisor_lists: Vec<Vec<Int>> = values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let ds = small_divisors(v);
                if i == 0 {
                    // a factor or its negative has positive value here, so
                    // the first coordinate can stay positive
                    return ds;
                }
                let mut signed = Vec::with_capacity(ds.len() * 2);
                for d in ds {
                    signed.push(-d.clone());
                    signed.push(d);
                }
                signed
            })
            .collect();
        let combos: u128 = divisor_lists.iter().map(|l| l.len() as u128).product();
        if combos > 1_000_000 {
            // candidate explosion; out of scope for the inputs this crate
            // handles, leave the factor whole
            continue;
        }
        let mut idx = vec![0usize; d + 1];
        'outer: loop {
            let choice: Vec<Rat> = idx
                .iter()
                .zip(&divisor_lists)
                .map(|(&i, l)| Rat::from_integer(l[i].clone()))
                .collect();
            if let Some(cand) = interpolate(&points, &choice) {
                if cand.degree() == Some(d) {
                    let cand = cand.make_monic();
                    if g.divisible_by(&cand) {
                        return Some(cand);
                    }
                }
            }
            // advance the odometer
            let mut k = 0;
            loop {
                if k > d {
                    break 'outer;
                }
                idx[k] += 1;
                if idx[k] < divisor_lists[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
    None
}

/// Lagrange interpolation through (points[i], values[i]).
fn interpolate(points: &[i64], values: &[Rat]) -> Option<UniPoly<Rat>> {
    let mut acc = UniPoly::<Rat>::zero();
    for (i, &xi) in points.iter().enumerate() {
        let mut basis = UniPoly::<Rat>::one();
        let mut denom = rat_int(1);
        for (j, &xj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&UniPoly::from_ints(&[-xj, 1]));
            denom *= Rat::from_integer(Int::from(xi - xj));
        }
        acc = acc.add(&basis.mul_scalar(&(values[i].clone() / denom)));
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> UniPoly<Rat> {
        UniPoly::from_ints(cs)
    }

    #[test]
    fn squarefree_of_f1_discriminant() {
        // u^10 (u-1)^4, the u-part of Delta for Fibration 1
        let f = p(&[0, 1]).pow(10).mul(&p(&[-1, 1]).pow(4));
        let sf = squarefree_factor(&f);
        assert_eq!(sf, vec![(p(&[-1, 1]), 4), (p(&[0, 1]), 10)]);
    }

    #[test]
    fn squarefree_keeps_squarefree_input_whole() {
        let f = p(&[1, 0, 0, 1]); // u^3 + 1
        assert_eq!(squarefree_factor(&f), vec![(f.clone(), 1)]);
    }

    #[test]
    fn squarefree_of_unit_is_empty() {
        assert!(squarefree_factor(&p(&[5])).is_empty());
    }

    #[test]
    fn squarefree_reconstructs_input() {
        let f = p(&[0, 2, 1]).pow(3).mul(&p(&[1, 1])).mul(&p(&[3]));
        let mut rebuilt = UniPoly::one();
        for (g, m) in squarefree_factor(&f) {
            rebuilt = rebuilt.mul(&g.pow(m));
        }
        assert_eq!(rebuilt, f.make_monic());
    }

    #[test]
    fn factor_cubics() {
        // u^3 + 1 = (u + 1)(u^2 - u + 1)
        assert_eq!(
            irreducible_factor(&p(&[1, 0, 0, 1])),
            vec![(p(&[1, 1]), 1), (p(&[1, -1, 1]), 1)]
        );
        // u^3 - 1 = (u - 1)(u^2 + u + 1)
        assert_eq!(
            irreducible_factor(&p(&[-1, 0, 0, 1])),
            vec![(p(&[-1, 1]), 1), (p(&[1, 1, 1]), 1)]
        );
    }

    #[test]
    fn factor_sextic_discriminant_factor() {
        // 27u^6 + 4 is irreducible; only the degree count is contractual
        let f = p(&[4, 0, 0, 0, 0, 0, 27]);
        let fac = irreducible_factor(&f);
        let total: usize = fac
            .iter()
            .map(|(g, m)| g.degree().unwrap() * *m as usize)
            .sum();
        assert_eq!(total, 6);
        assert_eq!(fac.len(), 1);
        assert!(is_irreducible(&f));
    }

    #[test]
    fn factor_with_multiplicities() {
        // u^2 (u^2 + u + 1)^3
        let f = p(&[0, 0, 1]).mul(&p(&[1, 1, 1]).pow(3));
        assert_eq!(
            irreducible_factor(&f),
            vec![(p(&[0, 1]), 2), (p(&[1, 1, 1]), 3)]
        );
    }

    #[test]
    fn factor_finds_quartic_splits() {
        // (u^2 + 1)(u^2 + 2) has no rational roots and needs the modular
        // degree analysis plus Kronecker to split
        let f = p(&[1, 0, 1]).mul(&p(&[2, 0, 1]));
        assert_eq!(
            irreducible_factor(&f),
            vec![(p(&[1, 0, 1]), 1), (p(&[2, 0, 1]), 1)]
        );
    }

    #[test]
    fn factor_f6_text_variant_sextic() {
        // u^6 - 2u^3 + 2 (discriminant factor of the misprinted Fibration 6
        // equation) is irreducible
        assert!(is_irreducible(&p(&[2, 0, 0, -2, 0, 0, 1])));
    }
}
