//! Tate's algorithm over Q(u) with residue-field computations in `Q[u]/(p)`.
//!
//! The residue characteristic is zero, so the algorithm runs in its
//! simplified chord form on a depressed model y^2 = x^3 + A x^2 + B x + C.
//! Every classification is double-checked against the (ord c4, ord Delta)
//! table valid away from residue characteristic 2 and 3; a mismatch is an
//! internal error, never silently patched.

use std::fmt;

use crate::ellcurve::WeierstrassCurve;
use crate::exactalg::{irreducible_factor, rat, rat_int, QPoly, QRatFunc, Rat, RatFunc, UniPoly};

use super::localring::{ratfunc_ord, reduce_mod, ResCtx};
use super::{FiberData, KodairaType, Place};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KodairaError {
    /// Discriminant vanishes identically.
    Degenerate,
    /// An internal consistency check failed; the message names it.
    Internal(String),
}

impl fmt::Display for KodairaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaError::Degenerate => write!(f, "degenerate curve (discriminant is zero)"),
            KodairaError::Internal(m) => write!(f, "internal inconsistency: {m}"),
        }
    }
}

/// The minimal integral depressed model at one place, plus the translation
/// data accumulated by Tate's algorithm. Everything a height computation
/// needs to locate the component met by a section.
#[derive(Debug, Clone)]
pub struct LocalModel {
    pub place: Place,
    /// Uniformizer in the chart variable: p itself at a finite place, the
    /// variable s at infinity (u = 1/s).
    pub uniformizer: QPoly,
    /// y^2 = x^3 + A x^2 + B x + C, integral and minimal at the place.
    pub a: QRatFunc,
    pub b: QRatFunc,
    pub c: QRatFunc,
    /// x_loc = (x_chart + shift0) * p^(2 scale)
    pub scale: i64,
    pub shift0: QRatFunc,
    /// y_loc = (y_chart + h1 x_chart + h0) * p^(3 scale)
    pub h1: QRatFunc,
    pub h0: QRatFunc,
    /// Residue lift of the singular x of the special fiber, if any.
    pub sing_x: Option<QPoly>,
    /// Additional shift for I_n* fibers: the double root of P(T) was moved
    /// to zero by x -> x - p*tau.
    pub star_tau: Option<QPoly>,
}

impl LocalModel {
    /// Coordinates of a section on this local model.
    pub fn section_coords(&self, x: &QRatFunc, y: &QRatFunc) -> Option<(QRatFunc, QRatFunc)> {
        let (xc, yc) = match &self.place {
            Place::Finite(_) => (x.clone(), y.clone()),
            Place::Infinity => {
                let inv = RatFunc::new(UniPoly::one(), UniPoly::var()).unwrap();
                (x.compose(&inv)?, y.compose(&inv)?)
            }
        };
        let pe2 = self.power(2 * self.scale);
        let pe3 = self.power(3 * self.scale);
        let xl = xc.add(&self.shift0).mul(&pe2);
        let yl = yc.add(&self.h1.mul(&xc)).add(&self.h0).mul(&pe3);
        Some((xl, yl))
    }

    fn power(&self, k: i64) -> QRatFunc {
        let p = RatFunc::from_poly(self.uniformizer.clone());
        if k >= 0 {
            p.pow(k as u32)
        } else {
            p.pow((-k) as u32).inv().unwrap()
        }
    }

    /// The cubic x^3 + A x^2 + B x + C as coefficient list, lowest first.
    pub fn cubic(&self) -> [QRatFunc; 4] {
        [
            self.c.clone(),
            self.b.clone(),
            self.a.clone(),
            RatFunc::one(),
        ]
    }
}

fn vord(f: &QRatFunc, p: &QPoly) -> Option<i64> {
    if f.is_zero() {
        None
    } else {
        Some(ratfunc_ord(f, p))
    }
}

/// Depressed coefficients (A, B, C) = (b2/4, b4/2, b6/4) and the y-shift
/// (h1, h0) = (a1/2, a3/2).
fn depress(e: &WeierstrassCurve<Rat>) -> (QRatFunc, QRatFunc, QRatFunc, QRatFunc, QRatFunc) {
    let half = RatFunc::from_rat(&rat(1, 2));
    let quarter = RatFunc::from_rat(&rat(1, 4));
    let a = e.a2.add(&quarter.mul(&e.a1).mul(&e.a1));
    let b = e.a4.add(&half.mul(&e.a1).mul(&e.a3));
    let c = e.a6.add(&quarter.mul(&e.a3).mul(&e.a3));
    (a, b, c, half.mul(&e.a1), half.mul(&e.a3))
}

/// Translate y^2 = x^3 + Ax^2 + Bx + C by x -> x + r.
fn translate(
    a: &QRatFunc,
    b: &QRatFunc,
    c: &QRatFunc,
    r: &QRatFunc,
) -> (QRatFunc, QRatFunc, QRatFunc) {
    let three_r = r.mul(&RatFunc::from_rat(&rat_int(3)));
    let a2 = a.add(&three_r);
    let b2 = b
        .add(&a.mul(r).mul(&RatFunc::from_rat(&rat_int(2))))
        .add(&r.mul(r).mul(&RatFunc::from_rat(&rat_int(3))));
    let c2 = c.add(&b.mul(r)).add(&a.mul(r).mul(r)).add(&r.pow(3));
    (a2, b2, c2)
}

fn disc_abc(a: &QRatFunc, b: &QRatFunc, c: &QRatFunc) -> QRatFunc {
    WeierstrassCurve::from_a2_a4_a6(a.clone(), b.clone(), c.clone()).discriminant()
}

fn c4_c6(a: &QRatFunc, b: &QRatFunc, c: &QRatFunc) -> (QRatFunc, QRatFunc) {
    let n = |k: i64| RatFunc::from_rat(&rat_int(k));
    let c4 = n(16).mul(&a.mul(a)).sub(&n(48).mul(b));
    let c6 = n(-64)
        .mul(&a.pow(3))
        .add(&n(288).mul(a).mul(b))
        .sub(&n(864).mul(c));
    (c4, c6)
}

/// Integral, minimal model at p: returns (A, B, C, scale e, shift0).
fn minimal_model(
    a: &QRatFunc,
    b: &QRatFunc,
    c: &QRatFunc,
    p: &QPoly,
) -> Result<(QRatFunc, QRatFunc, QRatFunc, i64, QRatFunc), KodairaError> {
    let ceil_div = |n: i64, d: i64| -> i64 {
        // ceiling of n/d for positive d
        if n >= 0 {
            (n + d - 1) / d
        } else {
            -((-n) / d)
        }
    };
    let mut e0 = i64::MIN;
    for (f, w) in [(a, 2i64), (b, 4), (c, 6)] {
        if let Some(o) = vord(f, p) {
            e0 = e0.max(ceil_div(-o, w));
        }
    }
    if e0 == i64::MIN {
        return Err(KodairaError::Degenerate);
    }
    let scale_by = |f: &QRatFunc, k: i64| -> QRatFunc {
        let pw = RatFunc::from_poly(p.clone());
        if k >= 0 {
            f.mul(&pw.pow(k as u32))
        } else {
            f.div(&pw.pow((-k) as u32)).unwrap()
        }
    };
    let a1 = scale_by(a, 2 * e0);
    let b1 = scale_by(b, 4 * e0);
    let c1 = scale_by(c, 6 * e0);
    let (c4, c6) = c4_c6(&a1, &b1, &c1);
    let delta = disc_abc(&a1, &b1, &c1);
    if delta.is_zero() {
        return Err(KodairaError::Degenerate);
    }
    let mut k = vord(&delta, p).unwrap() / 12;
    if let Some(o) = vord(&c4, p) {
        k = k.min(o / 4);
    }
    if let Some(o) = vord(&c6, p) {
        k = k.min(o / 6);
    }
    if k == 0 {
        return Ok((a1, b1, c1, e0, RatFunc::zero()));
    }
    // The quadratic-term model cannot descend; complete the cube and scale
    // the short model instead.
    let e = e0 - k;
    let (c4u, c6u) = c4_c6(a, b, c);
    let n = |v: i64, d: i64| RatFunc::from_rat(&rat(v, d));
    let short_b = c4u.mul(&n(-1, 48));
    let short_c = c6u.mul(&n(-1, 864));
    let a2 = RatFunc::zero();
    let b2 = scale_by(&short_b, 4 * e);
    let c2 = scale_by(&short_c, 6 * e);
    for (f, w) in [(&b2, 4i64), (&c2, 6)] {
        if let Some(o) = vord(f, p) {
            if o < 0 {
                return Err(KodairaError::Internal(
                    "short minimal model is not integral".into(),
                ));
            }
            let _ = w;
        }
    }
    let shift0 = a.mul(&RatFunc::from_rat(&rat(1, 3)));
    Ok((a2, b2, c2, e, shift0))
}

/// The (ord c4, ord Delta) classification, valid for residue
/// characteristic 0.
fn classify_by_ords(oc4: Option<i64>, od: i64) -> Result<KodairaType, KodairaError> {
    if od == 0 {
        return Ok(KodairaType::I(0));
    }
    match oc4 {
        Some(c) if 3 * c < od => match c {
            0 => Ok(KodairaType::I(od as u32)),
            2 => Ok(KodairaType::IStar(od as u32 - 6)),
            _ => Err(KodairaError::Internal(format!(
                "non-minimal valuations (ord c4 = {c}, ord Delta = {od})"
            ))),
        },
        _ => match od {
            2 => Ok(KodairaType::II),
            3 => Ok(KodairaType::III),
            4 => Ok(KodairaType::IV),
            6 => Ok(KodairaType::IStar(0)),
            8 => Ok(KodairaType::IVStar),
            9 => Ok(KodairaType::IIIStar),
            10 => Ok(KodairaType::IIStar),
            _ => Err(KodairaError::Internal(format!(
                "integral j with ord Delta = {od} admits no Kodaira type"
            ))),
        },
    }
}

struct StepOutcome {
    kodaira: KodairaType,
    sing_x: Option<QPoly>,
    star_tau: Option<QPoly>,
}

/// Tate's algorithm steps on a minimal integral model.
fn tate_steps(
    a0: &QRatFunc,
    b0: &QRatFunc,
    c0: &QRatFunc,
    p: &QPoly,
) -> Result<StepOutcome, KodairaError> {
    let delta = disc_abc(a0, b0, c0);
    let d = vord(&delta, p).ok_or(KodairaError::Degenerate)?;
    if d == 0 {
        return Ok(StepOutcome {
            kodaira: KodairaType::I(0),
            sing_x: None,
            star_tau: None,
        });
    }

    // Step 2: move the singular point of the special fiber to x = 0.
    let ctx = ResCtx::new(p);
    let fbar = ctx.poly(vec![
        reduce_mod(c0, p, 1),
        reduce_mod(b0, p, 1),
        reduce_mod(a0, p, 1),
        QPoly::one(),
    ]);
    let g = ctx.gcd(&fbar, &ctx.derivative(&fbar));
    let x0 = match ctx.degree(&g) {
        Some(1) => g.coeffs[0].neg(),
        Some(2) => g.coeffs[1].mul_scalar(&rat(-1, 2)),
        other => {
            return Err(KodairaError::Internal(format!(
                "singular fiber with gcd(f, f') of degree {other:?}"
            )))
        }
    };
    let x0 = ctx.red(&x0);
    let r = RatFunc::from_poly(x0.clone());
    let (a, b, c) = translate(a0, b0, c0, &r);
    let sing_x = Some(x0);

    let va = vord(&a, p);
    if va == Some(0) {
        // multiplicative reduction
        return Ok(StepOutcome {
            kodaira: KodairaType::I(d as u32),
            sing_x,
            star_tau: None,
        });
    }

    // additive: now v(A) >= 1, v(B) >= 1, v(C) >= 1
    let ord_ge = |f: &QRatFunc, k: i64| vord(f, p).map(|o| o >= k).unwrap_or(true);
    if !ord_ge(&c, 2) {
        return finish(KodairaType::II, sing_x, None);
    }
    let b8 = RatFunc::from_rat(&rat_int(4))
        .mul(&a)
        .mul(&c)
        .sub(&b.mul(&b));
    if !ord_ge(&b8, 3) {
        return finish(KodairaType::III, sing_x, None);
    }
    if !ord_ge(&c, 3) {
        return finish(KodairaType::IV, sing_x, None);
    }

    // Step 6: P(T) = T^3 + A_1 T^2 + B_2 T + C_3 over the residue field.
    let pr = RatFunc::from_poly(p.clone());
    let digit = |f: &QRatFunc, k: u32| -> QPoly {
        let shifted = f.div(&pr.pow(k)).unwrap_or_else(RatFunc::zero);
        reduce_mod(&shifted, p, 1)
    };
    let pt = ctx.poly(vec![digit(&c, 3), digit(&b, 2), digit(&a, 1), QPoly::one()]);
    let gp = ctx.gcd(&pt, &ctx.derivative(&pt));
    match ctx.degree(&gp) {
        None | Some(0) => finish(KodairaType::IStar(0), sing_x, None),
        Some(1) => {
            // one double root: I_n* sub-loop
            let tau = ctx.red(&gp.coeffs[0].neg());
            let shift = RatFunc::from_poly(tau.mul(p));
            let (mut a, mut b, mut c) = translate(&a, &b, &c, &shift);
            if vord(&a, p) != Some(1) {
                return Err(KodairaError::Internal(
                    "I_n* normalization expects v(A) = 1".into(),
                ));
            }
            let a1r = digit(&a, 1);
            let two_a1_inv = ctx
                .inv(&a1r.mul_scalar(&rat_int(2)))
                .ok_or_else(|| KodairaError::Internal("unit 2A_1 in I_n* loop".into()))?;
            let mut q: u32 = 1;
            loop {
                if q as i64 > d {
                    return Err(KodairaError::Internal("runaway I_n* sub-loop".into()));
                }
                if q % 2 == 1 {
                    // quadratic Y^2 - C_{q+3}: separable iff the digit is a unit
                    let cm = digit(&c, q + 3);
                    if !cm.is_zero() {
                        break;
                    }
                } else {
                    // quadratic A_1 X^2 + B_{q/2+2} X + C_{q+3}
                    let k2 = q / 2 + 2;
                    let bk = digit(&b, k2);
                    let cm = digit(&c, q + 3);
                    let disc = ctx.red(&bk.mul(&bk).sub(&a1r.mul(&cm).mul_scalar(&rat_int(4))));
                    if !disc.is_zero() {
                        break;
                    }
                    let xi = ctx.red(&bk.neg().mul(&two_a1_inv));
                    let shift = RatFunc::from_poly(xi).mul(&pr.pow(q / 2 + 1));
                    let moved = translate(&a, &b, &c, &shift);
                    a = moved.0;
                    b = moved.1;
                    c = moved.2;
                }
                q += 1;
            }
            if i64::from(q) != d - 6 {
                return Err(KodairaError::Internal(format!(
                    "I_n* loop found n = {q}, expected ord Delta - 6 = {}",
                    d - 6
                )));
            }
            finish(KodairaType::IStar(q), sing_x, Some(tau))
        }
        Some(2) => {
            // triple root: translate it to zero and finish the chain
            let tau = ctx.red(&gp.coeffs[1].mul_scalar(&rat(-1, 2)));
            let shift = RatFunc::from_poly(tau.mul(p));
            let (_a, b, c) = translate(&a, &b, &c, &shift);
            if !ord_ge(&c, 5) {
                return finish(KodairaType::IVStar, sing_x, Some(tau));
            }
            if !ord_ge(&b, 4) {
                return finish(KodairaType::IIIStar, sing_x, Some(tau));
            }
            if !ord_ge(&c, 6) {
                return finish(KodairaType::IIStar, sing_x, Some(tau));
            }
            Err(KodairaError::Internal(
                "non-minimal model reached the end of Tate's algorithm".into(),
            ))
        }
        other => Err(KodairaError::Internal(format!(
            "gcd(P, P') of degree {other:?}"
        ))),
    }
}

fn finish(
    kodaira: KodairaType,
    sing_x: Option<QPoly>,
    star_tau: Option<QPoly>,
) -> Result<StepOutcome, KodairaError> {
    Ok(StepOutcome {
        kodaira,
        sing_x,
        star_tau,
    })
}

/// Classify the fiber of `e` at the place `v`.
pub fn tate_at(e: &WeierstrassCurve<Rat>, v: &Place) -> Result<FiberData, KodairaError> {
    let (a, b, c, h1, h0) = depress(e);
    let (a, b, c, h1, h0, p_chart) = match v {
        Place::Finite(p) => (a, b, c, h1, h0, p.clone()),
        Place::Infinity => {
            let inv = RatFunc::new(UniPoly::one(), UniPoly::var()).unwrap();
            let cmp = |f: &QRatFunc| f.compose(&inv).expect("composition with 1/s");
            (
                cmp(&a),
                cmp(&b),
                cmp(&c),
                cmp(&h1),
                cmp(&h0),
                UniPoly::var(),
            )
        }
    };
    let (am, bm, cm, scale, shift0) = minimal_model(&a, &b, &c, &p_chart)?;

    let (c4, c6) = c4_c6(&am, &bm, &cm);
    let delta = disc_abc(&am, &bm, &cm);
    if delta.is_zero() {
        return Err(KodairaError::Degenerate);
    }
    let od = vord(&delta, &p_chart).unwrap();
    let oc4 = vord(&c4, &p_chart);
    let oc6 = vord(&c6, &p_chart);
    let expected = classify_by_ords(oc4, od)?;

    let out = tate_steps(&am, &bm, &cm, &p_chart)?;
    if out.kodaira != expected {
        return Err(KodairaError::Internal(format!(
            "Tate steps found {} but valuations demand {} at {}",
            out.kodaira, expected, v
        )));
    }
    if i64::from(out.kodaira.euler()) != od {
        return Err(KodairaError::Internal(
            "Euler number does not match ord Delta".into(),
        ));
    }

    Ok(FiberData {
        place: v.clone(),
        kodaira: out.kodaira,
        ord_delta: od as u32,
        ord_c4: oc4.map(|o| o as u32),
        ord_c6: oc6.map(|o| o as u32),
        local: LocalModel {
            place: v.clone(),
            uniformizer: p_chart,
            a: am,
            b: bm,
            c: cm,
            scale,
            shift0,
            h1,
            h0,
            sing_x: out.sing_x,
            star_tau: out.star_tau,
        },
    })
}

/// All places with bad reduction: the irreducible factors of the
/// discriminant numerator and of every coefficient denominator, plus
/// infinity, classified by `tate_at` and sorted deterministically.
pub fn fiber_configuration(e: &WeierstrassCurve<Rat>) -> Result<Vec<FiberData>, KodairaError> {
    let delta = e.discriminant();
    if delta.is_zero() {
        return Err(KodairaError::Degenerate);
    }
    let (a, b, c, _, _) = depress(e);
    let mut candidates: Vec<QPoly> = Vec::new();
    let mut push_factors = |f: &QPoly| {
        if f.degree().unwrap_or(0) == 0 {
            return;
        }
        for (g, _) in irreducible_factor(f) {
            if g.degree() == Some(0) {
                continue;
            }
            if !candidates.contains(&g) {
                candidates.push(g);
            }
        }
    };
    push_factors(delta.num());
    push_factors(delta.den());
    for f in [&a, &b, &c] {
        if !f.is_zero() {
            push_factors(f.den());
        }
    }

    let mut config = Vec::new();
    for p in candidates {
        let fd = tate_at(e, &Place::finite(p))?;
        if fd.ord_delta > 0 {
            config.push(fd);
        }
    }
    let at_inf = tate_at(e, &Place::Infinity)?;
    if at_inf.ord_delta > 0 {
        config.push(at_inf);
    }
    config.sort_by_key(|fd| fd.place.sort_key());
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellcurve::curve_a2_a4_a6;
    use crate::kodaira::euler_sum;

    fn place(cs: &[i64]) -> Place {
        Place::finite(UniPoly::from_ints(cs))
    }

    fn f1() -> WeierstrassCurve<Rat> {
        curve_a2_a4_a6(&[], &[], &[0, 0, 0, 0, 0, 1, -2, 1])
    }

    fn f2() -> WeierstrassCurve<Rat> {
        curve_a2_a4_a6(&[0, 4, 0, 0, -2], &[0, 0, 0, 0, 0, 0, 0, 0, 1], &[])
    }

    fn f3() -> WeierstrassCurve<Rat> {
        curve_a2_a4_a6(&[0, 0, 0, 4], &[0, 0, 0, -4], &[])
    }

    fn f4() -> WeierstrassCurve<Rat> {
        let mut a6 = vec![0i64; 13];
        a6[12] = 1;
        let mut a4 = vec![0i64; 7];
        a4[6] = -2;
        curve_a2_a4_a6(&[1], &a4, &a6)
    }

    fn f5() -> WeierstrassCurve<Rat> {
        let w = UniPoly::<Rat>::from_ints(&[-1, 0, 1]);
        WeierstrassCurve::from_a2_a4_a6(
            RatFunc::zero(),
            RatFunc::zero(),
            RatFunc::from_poly(w.pow(4)),
        )
    }

    fn f6() -> WeierstrassCurve<Rat> {
        curve_a2_a4_a6(&[4, 0, 0, -2], &[0, 0, 0, 0, 0, 0, 1], &[])
    }

    #[test]
    fn tate_f1_at_zero_is_ii_star() {
        let fd = tate_at(&f1(), &place(&[0, 1])).unwrap();
        assert_eq!(fd.kodaira, KodairaType::IIStar);
        assert_eq!(fd.ord_delta, 10);
        assert_eq!(fd.ord_c4, None);
    }

    #[test]
    fn tate_f3_at_infinity_is_i6_star() {
        let fd = tate_at(&f3(), &Place::Infinity).unwrap();
        assert_eq!(fd.kodaira, KodairaType::IStar(6));
        assert_eq!(fd.ord_delta, 12);
        assert_eq!(fd.ord_c4, Some(2));
    }

    #[test]
    fn tate_f4_at_zero_is_i18() {
        let fd = tate_at(&f4(), &place(&[0, 1])).unwrap();
        assert_eq!(fd.kodaira, KodairaType::I(18));
        assert_eq!(fd.ord_delta, 18);
        assert_eq!(fd.ord_c4, Some(0));
    }

    #[test]
    fn config_f1() {
        let cfg = fiber_configuration(&f1()).unwrap();
        let got: Vec<(String, String)> = cfg
            .iter()
            .map(|f| (f.place.to_string(), f.kodaira.symbol()))
            .collect();
        assert_eq!(
            got,
            vec![
                ("u".into(), "II*".into()),
                ("u-1".into(), "IV".into()),
                ("inf".into(), "II*".into()),
            ]
        );
        assert_eq!(euler_sum(&cfg), 24);
    }

    #[test]
    fn config_f2_table_variant() {
        let cfg = fiber_configuration(&f2()).unwrap();
        let got: Vec<(String, String)> = cfg
            .iter()
            .map(|f| (f.place.to_string(), f.kodaira.symbol()))
            .collect();
        assert_eq!(
            got,
            vec![
                ("u".into(), "I12*".into()),
                ("u-1".into(), "I1".into()),
                ("u^2+u+1".into(), "I1".into()),
                ("inf".into(), "I3".into()),
            ]
        );
        assert_eq!(euler_sum(&cfg), 24);
    }

    #[test]
    fn config_f5() {
        let cfg = fiber_configuration(&f5()).unwrap();
        let got: Vec<(String, String)> = cfg
            .iter()
            .map(|f| (f.place.to_string(), f.kodaira.symbol()))
            .collect();
        assert_eq!(
            got,
            vec![
                ("u+1".into(), "IV*".into()),
                ("u-1".into(), "IV*".into()),
                ("inf".into(), "IV*".into()),
            ]
        );
        assert_eq!(euler_sum(&cfg), 24);
    }

    #[test]
    fn config_f3_f4_f6_euler() {
        for (e, expected) in [
            (f3(), vec!["III*", "I1", "I6*"]),
            (f4(), vec!["I18", "I1", "I0"]),
            (f6(), vec!["I12", "I1", "I3*"]),
        ] {
            let cfg = fiber_configuration(&e).unwrap();
            assert_eq!(euler_sum(&cfg), 24, "Euler sum for {expected:?}");
        }
    }

    #[test]
    fn minimality_invariant() {
        // after minimalization, not (ord c4 >= 4 and ord Delta >= 12)
        for e in [f1(), f2(), f3(), f4(), f5(), f6()] {
            for fd in fiber_configuration(&e).unwrap() {
                let c4_big = fd.ord_c4.map(|o| o >= 4).unwrap_or(true);
                let c6_big = fd.ord_c6.map(|o| o >= 6).unwrap_or(true);
                assert!(
                    !(c4_big && c6_big && fd.ord_delta >= 12),
                    "non-minimal model at {}",
                    fd.place
                );
            }
        }
    }

    #[test]
    fn rescaling_invariance_for_neighbor_models() {
        // eq for Fibration 2 before and after the 2-neighbor base change:
        // the multisets of Kodaira symbols agree
        let before = curve_a2_a4_a6(&[-8, 0, 0, 2], &[16], &[]);
        let after = f2();
        let mut syms_before: Vec<String> = fiber_configuration(&before)
            .unwrap()
            .iter()
            .flat_map(|f| std::iter::repeat_n(f.kodaira.symbol(), f.place.degree()))
            .collect();
        let mut syms_after: Vec<String> = fiber_configuration(&after)
            .unwrap()
            .iter()
            .flat_map(|f| std::iter::repeat_n(f.kodaira.symbol(), f.place.degree()))
            .collect();
        syms_before.sort();
        syms_after.sort();
        assert_eq!(syms_before, syms_after);
    }

    #[test]
    fn non_minimal_input_is_reduced() {
        // y^2 = x^3 + u^12: minimalizes at (u) to y^2 = x^3 + 1, good fiber
        let mut a6 = vec![0i64; 13];
        a6[12] = 1;
        let e = curve_a2_a4_a6(&[], &[], &a6);
        let fd = tate_at(&e, &place(&[0, 1])).unwrap();
        assert_eq!(fd.kodaira, KodairaType::I(0));
        assert_eq!(fd.local.scale, -2);
    }

    #[test]
    fn long_weierstrass_is_depressed_first() {
        // a1 = 1, a3 = u: completing the square must precede everything
        let e = WeierstrassCurve {
            a1: RatFunc::one(),
            a2: RatFunc::zero(),
            a3: RatFunc::from_poly(UniPoly::from_ints(&[0, 1])),
            a4: RatFunc::zero(),
            a6: RatFunc::from_poly(UniPoly::from_ints(&[0, 0, 0, 1])),
        };
        let cfg = fiber_configuration(&e).unwrap();
        let at_zero = cfg.iter().find(|f| f.place.to_string() == "u").unwrap();
        assert_eq!(at_zero.kodaira, KodairaType::I(4));
        assert_eq!(euler_sum(&cfg), 12);
    }

    #[test]
    fn non_integral_coefficients_are_rescaled() {
        // y^2 = x^3 + x/u + 1/u^2 has the integral model y^2 = x^3 + u^3 x + u^4
        let e = WeierstrassCurve::from_a2_a4_a6(
            RatFunc::zero(),
            RatFunc::new(UniPoly::one(), UniPoly::from_ints(&[0, 1])).unwrap(),
            RatFunc::new(UniPoly::one(), UniPoly::from_ints(&[0, 0, 1])).unwrap(),
        );
        let cfg = fiber_configuration(&e).unwrap();
        let got: Vec<(String, String)> = cfg
            .iter()
            .map(|f| (f.place.to_string(), f.kodaira.symbol()))
            .collect();
        assert_eq!(
            got,
            vec![
                ("4*u+27".into(), "I1".into()),
                ("u".into(), "IV*".into()),
                ("inf".into(), "III".into()),
            ]
        );
        let at_zero = cfg.iter().find(|f| f.place.to_string() == "u").unwrap();
        assert_eq!(at_zero.local.scale, 1);
    }

    #[test]
    fn constant_curve_has_no_bad_fibers() {
        let e = curve_a2_a4_a6(&[], &[], &[1]);
        let cfg = fiber_configuration(&e).unwrap();
        assert!(cfg.is_empty());
        assert_eq!(euler_sum(&cfg), 0);
    }

    #[test]
    fn degenerate_rejected() {
        let e = curve_a2_a4_a6(&[], &[], &[]);
        assert_eq!(
            fiber_configuration(&e).err(),
            Some(KodairaError::Degenerate)
        );
    }
}
