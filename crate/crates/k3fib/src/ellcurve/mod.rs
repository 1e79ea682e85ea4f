//! Weierstrass curves over K(u): invariants, group law, twists, base
//! change, and conversion of plane cubics.

pub mod cubic;

use std::fmt;

use crate::exactalg::{Field, Rat, RatFunc, UniPoly};

pub use cubic::{cubic_to_weierstrass, CubicError, CubicMap, PlaneCubic};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over K(u).
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassCurve<K: Field> {
    pub a1: RatFunc<K>,
    pub a2: RatFunc<K>,
    pub a3: RatFunc<K>,
    pub a4: RatFunc<K>,
    pub a6: RatFunc<K>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveError {
    /// Discriminant vanishes: the generic fiber is singular.
    Degenerate,
    /// The group law implemented here needs a1 = a3 = 0.
    LongFormUnsupported,
    /// A point fed to the group law does not satisfy the curve equation.
    PointNotOnCurve,
    /// Twist by zero or a constant base-change substitution.
    BadParameter,
}

impl fmt::Display for CurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            CurveError::Degenerate => "degenerate curve (discriminant is zero)",
            CurveError::LongFormUnsupported => "group law requires a1 = a3 = 0",
            CurveError::PointNotOnCurve => "point does not lie on the curve",
            CurveError::BadParameter => "invalid twist or base-change parameter",
        };
        write!(f, "{msg}")
    }
}

/// The standard b-, c-invariants, discriminant, and j.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveInvariants<K: Field> {
    pub b2: RatFunc<K>,
    pub b4: RatFunc<K>,
    pub b6: RatFunc<K>,
    pub b8: RatFunc<K>,
    pub c4: RatFunc<K>,
    pub c6: RatFunc<K>,
    pub disc: RatFunc<K>,
    pub j: RatFunc<K>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CurvePoint<K: Field> {
    Infinity,
    Affine(RatFunc<K>, RatFunc<K>),
}

impl<K: Field> CurvePoint<K> {
    pub fn affine(x: RatFunc<K>, y: RatFunc<K>) -> Self {
        CurvePoint::Affine(x, y)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn xy(&self) -> Option<(&RatFunc<K>, &RatFunc<K>)> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine(x, y) => Some((x, y)),
        }
    }
}

impl<K: Field> fmt::Display for CurvePoint<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine(x, y) => write!(f, "({}, {})", x, y),
        }
    }
}

impl<K: Field> WeierstrassCurve<K> {
    /// Short-ish form y^2 = x^3 + a2 x^2 + a4 x + a6.
    pub fn from_a2_a4_a6(a2: RatFunc<K>, a4: RatFunc<K>, a6: RatFunc<K>) -> Self {
        WeierstrassCurve {
            a1: RatFunc::zero(),
            a2,
            a3: RatFunc::zero(),
            a4,
            a6,
        }
    }

    pub fn coefficients(&self) -> [&RatFunc<K>; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn b_invariants(&self) -> (RatFunc<K>, RatFunc<K>, RatFunc<K>, RatFunc<K>) {
        let WeierstrassCurve { a1, a2, a3, a4, a6 } = self;
        let four = RatFunc::from_rat(&crate::exactalg::rat_int(4));
        let two = RatFunc::from_rat(&crate::exactalg::rat_int(2));
        let b2 = a1.mul(a1).add(&four.mul(a2));
        let b4 = two.mul(a4).add(&a1.mul(a3));
        let b6 = a3.mul(a3).add(&four.mul(a6));
        // b8 = a1^2 a6 + 4 a2 a6 - a1 a3 a4 + a2 a3^2 - a4^2
        let b8 = a1
            .mul(a1)
            .mul(a6)
            .add(&four.mul(a2).mul(a6))
            .sub(&a1.mul(a3).mul(a4))
            .add(&a2.mul(a3).mul(a3))
            .sub(&a4.mul(a4));
        (b2, b4, b6, b8)
    }

    pub fn discriminant(&self) -> RatFunc<K> {
        let (b2, b4, b6, b8) = self.b_invariants();
        let c = |n: i64| RatFunc::from_rat(&crate::exactalg::rat_int(n));
        // -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6
        b2.mul(&b2)
            .mul(&b8)
            .neg()
            .sub(&c(8).mul(&b4.pow(3)))
            .sub(&c(27).mul(&b6.mul(&b6)))
            .add(&c(9).mul(&b2).mul(&b4).mul(&b6))
    }

    /// All standard invariants; errors on a degenerate curve.
    pub fn invariants(&self) -> Result<CurveInvariants<K>, CurveError> {
        let (b2, b4, b6, b8) = self.b_invariants();
        let c = |n: i64| RatFunc::from_rat(&crate::exactalg::rat_int(n));
        let c4 = b2.mul(&b2).sub(&c(24).mul(&b4));
        let c6 = b2
            .pow(3)
            .neg()
            .add(&c(36).mul(&b2).mul(&b4))
            .sub(&c(216).mul(&b6));
        let disc = self.discriminant();
        if disc.is_zero() {
            return Err(CurveError::Degenerate);
        }
        let j = c4.pow(3).div(&disc).unwrap();
        Ok(CurveInvariants {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            disc,
            j,
        })
    }

    pub fn is_on_curve(&self, p: &CurvePoint<K>) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => {
                // y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6
                y.mul(y)
                    .add(&self.a1.mul(x).mul(y))
                    .add(&self.a3.mul(y))
                    .sub(&x.pow(3))
                    .sub(&self.a2.mul(x).mul(x))
                    .sub(&self.a4.mul(x))
                    .sub(&self.a6)
                    .is_zero()
            }
        }
    }

    fn require_short(&self) -> Result<(), CurveError> {
        if self.a1.is_zero() && self.a3.is_zero() {
            Ok(())
        } else {
            Err(CurveError::LongFormUnsupported)
        }
    }

    pub fn negate(&self, p: &CurvePoint<K>) -> Result<CurvePoint<K>, CurveError> {
        self.require_short()?;
        Ok(match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(x.clone(), y.neg()),
        })
    }

    /// Chord-tangent addition for a1 = a3 = 0.
    pub fn add(&self, p: &CurvePoint<K>, q: &CurvePoint<K>) -> Result<CurvePoint<K>, CurveError> {
        self.require_short()?;
        if !self.is_on_curve(p) || !self.is_on_curve(q) {
            return Err(CurveError::PointNotOnCurve);
        }
        let (x1, y1) = match p.xy() {
            None => return Ok(q.clone()),
            Some(v) => v,
        };
        let (x2, y2) = match q.xy() {
            None => return Ok(p.clone()),
            Some(v) => v,
        };
        let lambda = if x1 == x2 {
            if y1.add(y2).is_zero() {
                return Ok(CurvePoint::Infinity);
            }
            // tangent: (3x^2 + 2 a2 x + a4) / (2y)
            let c = |n: i64| RatFunc::from_rat(&crate::exactalg::rat_int(n));
            let num = c(3)
                .mul(&x1.mul(x1))
                .add(&c(2).mul(&self.a2).mul(x1))
                .add(&self.a4);
            let den = c(2).mul(y1);
            num.div(&den).expect("nonzero 2y for non-2-torsion")
        } else {
            y2.sub(y1).div(&x2.sub(x1)).expect("distinct x-coordinates")
        };
        let x3 = lambda.mul(&lambda).sub(&self.a2).sub(x1).sub(x2);
        let y3 = lambda.mul(&x1.sub(&x3)).sub(y1);
        Ok(CurvePoint::Affine(x3, y3))
    }

    pub fn sub(&self, p: &CurvePoint<K>, q: &CurvePoint<K>) -> Result<CurvePoint<K>, CurveError> {
        let nq = self.negate(q)?;
        self.add(p, &nq)
    }

    /// n-fold sum by iterated addition; n = 0 gives O.
    pub fn multiply(&self, p: &CurvePoint<K>, n: u32) -> Result<CurvePoint<K>, CurveError> {
        let mut acc = CurvePoint::Infinity;
        for _ in 0..n {
            acc = self.add(&acc, p)?;
        }
        Ok(acc)
    }

    /// Quadratic twist by d: y^2 = x^3 + d a2 x^2 + d^2 a4 x + d^3 a6.
    pub fn quadratic_twist(&self, d: &RatFunc<K>) -> Result<WeierstrassCurve<K>, CurveError> {
        self.require_short()?;
        if d.is_zero() {
            return Err(CurveError::BadParameter);
        }
        Ok(WeierstrassCurve::from_a2_a4_a6(
            d.mul(&self.a2),
            d.mul(d).mul(&self.a4),
            d.pow(3).mul(&self.a6),
        ))
    }

    /// Substitute u := phi(s) and rescale (x, y) = (rho^2 X, rho^3 Y).
    ///
    /// The transformed coefficients are a_i(phi) / rho^i, so the Weierstrass
    /// identity is preserved on the nose.
    pub fn base_change(
        &self,
        phi: &RatFunc<K>,
        rho: &RatFunc<K>,
    ) -> Result<WeierstrassCurve<K>, CurveError> {
        if phi.is_constant() || rho.is_zero() {
            return Err(CurveError::BadParameter);
        }
        let sub = |a: &RatFunc<K>, w: u32| -> Result<RatFunc<K>, CurveError> {
            let composed = a.compose(phi).ok_or(CurveError::BadParameter)?;
            composed.div(&rho.pow(w)).ok_or(CurveError::BadParameter)
        };
        Ok(WeierstrassCurve {
            a1: sub(&self.a1, 1)?,
            a2: sub(&self.a2, 2)?,
            a3: sub(&self.a3, 3)?,
            a4: sub(&self.a4, 4)?,
            a6: sub(&self.a6, 6)?,
        })
    }

    /// Map a point along a base change, (x, y) -> (x(phi)/rho^2, y(phi)/rho^3).
    pub fn base_change_point(
        p: &CurvePoint<K>,
        phi: &RatFunc<K>,
        rho: &RatFunc<K>,
    ) -> Result<CurvePoint<K>, CurveError> {
        match p {
            CurvePoint::Infinity => Ok(CurvePoint::Infinity),
            CurvePoint::Affine(x, y) => {
                let xx = x
                    .compose(phi)
                    .and_then(|v| v.div(&rho.pow(2)))
                    .ok_or(CurveError::BadParameter)?;
                let yy = y
                    .compose(phi)
                    .and_then(|v| v.div(&rho.pow(3)))
                    .ok_or(CurveError::BadParameter)?;
                Ok(CurvePoint::Affine(xx, yy))
            }
        }
    }

    pub fn map_coeffs<F: Field>(&self, f: impl Fn(&K) -> F) -> WeierstrassCurve<F> {
        WeierstrassCurve {
            a1: self.a1.map_coeffs(&f),
            a2: self.a2.map_coeffs(&f),
            a3: self.a3.map_coeffs(&f),
            a4: self.a4.map_coeffs(&f),
            a6: self.a6.map_coeffs(&f),
        }
    }

    /// Curve literal in the CLI format `a1;a2;a3;a4;a6`.
    pub fn to_literal(&self) -> String {
        self.coefficients()
            .iter()
            .map(|a| a.to_string_var("u"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl<K: Field> fmt::Display for WeierstrassCurve<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lhs = String::from("Y^2");
        if !self.a1.is_zero() {
            lhs.push_str(&format!("+({})*XY", self.a1));
        }
        if !self.a3.is_zero() {
            lhs.push_str(&format!("+({})*Y", self.a3));
        }
        let mut rhs = String::from("X^3");
        for (a, m) in [(&self.a2, "X^2"), (&self.a4, "X"), (&self.a6, "")] {
            if a.is_zero() {
                continue;
            }
            let s = a.to_string();
            if m.is_empty() {
                rhs.push_str(&format!("+({s})"));
            } else {
                rhs.push_str(&format!("+({s})*{m}"));
            }
        }
        write!(f, "{lhs} = {rhs}")
    }
}

/// Convenience constructor from integer polynomial coefficient lists
/// (lowest degree first), used heavily in tests.
pub fn curve_a2_a4_a6(a2: &[i64], a4: &[i64], a6: &[i64]) -> WeierstrassCurve<Rat> {
    WeierstrassCurve::from_a2_a4_a6(
        RatFunc::from_poly(UniPoly::from_ints(a2)),
        RatFunc::from_poly(UniPoly::from_ints(a4)),
        RatFunc::from_poly(UniPoly::from_ints(a6)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::QRatFunc;

    fn poly(cs: &[i64]) -> QRatFunc {
        RatFunc::from_poly(UniPoly::from_ints(cs))
    }

    /// Fibration 1: Y^2 = X^3 + u^5 (u-1)^2.
    fn f1() -> WeierstrassCurve<Rat> {
        curve_a2_a4_a6(&[], &[], &[0, 0, 0, 0, 0, 1, -2, 1])
    }

    /// Fibration 4: Y^2 = X^3 + (X - u^6)^2.
    fn f4() -> WeierstrassCurve<Rat> {
        let mut a6 = vec![0i64; 13];
        a6[12] = 1;
        let mut a4 = vec![0i64; 7];
        a4[6] = -2;
        curve_a2_a4_a6(&[1], &a4, &a6)
    }

    /// Fibration 6: Y^2 = X^3 - 2(u^3-2)X^2 + u^6 X.
    fn f6() -> WeierstrassCurve<Rat> {
        curve_a2_a4_a6(&[4, 0, 0, -2], &[0, 0, 0, 0, 0, 0, 1], &[])
    }

    /// Fibration 2: Y^2 = X^3 - 2u(u^3-2)X^2 + u^8 X.
    fn f2() -> WeierstrassCurve<Rat> {
        curve_a2_a4_a6(&[0, 4, 0, 0, -2], &[0, 0, 0, 0, 0, 0, 0, 0, 1], &[])
    }

    #[test]
    fn invariants_fibration1() {
        // Delta = -432 u^10 (u-1)^4, c4 = 0, j = 0
        let inv = f1().invariants().unwrap();
        let expected = poly(&[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1])
            .mul(&poly(&[-1, 1]).pow(4))
            .mul(&poly(&[-432]));
        assert_eq!(inv.disc, expected);
        assert!(inv.c4.is_zero());
        assert!(inv.j.is_zero());
    }

    #[test]
    fn invariants_fibration4() {
        // Delta = -16 u^18 (27u^6 + 4)
        let inv = f4().invariants().unwrap();
        let mut u18 = vec![0i64; 19];
        u18[18] = 1;
        let expected = poly(&u18)
            .mul(&poly(&[4, 0, 0, 0, 0, 0, 27]))
            .mul(&poly(&[-16]));
        assert_eq!(inv.disc, expected);
    }

    #[test]
    fn invariants_fibration2() {
        // Delta = 256 u^18 (1 - u^3)
        let inv = f2().invariants().unwrap();
        let mut u18 = vec![0i64; 19];
        u18[18] = 1;
        let expected = poly(&u18).mul(&poly(&[1, 0, 0, -1])).mul(&poly(&[256]));
        assert_eq!(inv.disc, expected);
    }

    #[test]
    fn invariants_identity_1728() {
        for e in [f1(), f2(), f4(), f6()] {
            let inv = e.invariants().unwrap();
            let lhs = poly(&[1728]).mul(&inv.disc);
            let rhs = inv.c4.pow(3).sub(&inv.c6.mul(&inv.c6));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn degenerate_curve_rejected() {
        let e = curve_a2_a4_a6(&[], &[], &[]);
        assert_eq!(e.invariants().err(), Some(CurveError::Degenerate));
    }

    #[test]
    fn group_law_three_torsion_f5() {
        // On Y^2 = X^3 + (u^2-1)^4: (0,(u^2-1)^2) doubles to its negative
        let w = poly(&[-1, 0, 1]);
        let e = WeierstrassCurve::from_a2_a4_a6(RatFunc::zero(), RatFunc::zero(), w.pow(4));
        let p = CurvePoint::affine(RatFunc::zero(), w.pow(2));
        let two_p = e.add(&p, &p).unwrap();
        assert_eq!(two_p, CurvePoint::affine(RatFunc::zero(), w.pow(2).neg()));
        assert_eq!(e.multiply(&p, 3).unwrap(), CurvePoint::Infinity);
    }

    #[test]
    fn group_law_four_torsion_f6() {
        // 2 (u^3, 2u^3) = (0,0), 4 (u^3, 2u^3) = O, 2 (u^3, 2u^3) != O
        let e = f6();
        let p = CurvePoint::affine(poly(&[0, 0, 0, 1]), poly(&[0, 0, 0, 2]));
        let two_p = e.add(&p, &p).unwrap();
        assert_eq!(two_p, CurvePoint::affine(RatFunc::zero(), RatFunc::zero()));
        assert_eq!(e.multiply(&p, 4).unwrap(), CurvePoint::Infinity);
        assert_ne!(e.multiply(&p, 2).unwrap(), CurvePoint::Infinity);
    }

    #[test]
    fn group_law_identity_and_errors() {
        let e = f6();
        let p = CurvePoint::affine(poly(&[0, 0, 0, 1]), poly(&[0, 0, 0, 2]));
        assert_eq!(e.add(&p, &CurvePoint::Infinity).unwrap(), p);
        assert_eq!(e.multiply(&p, 1).unwrap(), p);
        assert_eq!(e.multiply(&p, 0).unwrap(), CurvePoint::Infinity);
        let bogus = CurvePoint::affine(poly(&[1]), poly(&[1]));
        assert_eq!(e.add(&p, &bogus).err(), Some(CurveError::PointNotOnCurve));
    }

    #[test]
    fn three_torsion_f4() {
        let e = f4();
        let mut u6 = vec![0i64; 7];
        u6[6] = 1;
        let p = CurvePoint::affine(RatFunc::zero(), poly(&u6));
        assert_eq!(e.multiply(&p, 3).unwrap(), CurvePoint::Infinity);
        assert_ne!(e.multiply(&p, 2).unwrap(), CurvePoint::Infinity);
    }

    #[test]
    fn twist_f6_by_u_gives_f2() {
        let twisted = f6().quadratic_twist(&poly(&[0, 1])).unwrap();
        assert_eq!(twisted, f2());
    }

    #[test]
    fn twist_trivial_and_square() {
        let e = f6();
        assert_eq!(e.quadratic_twist(&poly(&[1])).unwrap(), e);
        // twisting twice by d multiplies by d^2: j is unchanged
        let d = poly(&[3, 1]);
        let tt = e.quadratic_twist(&d).unwrap().quadratic_twist(&d).unwrap();
        assert_eq!(tt.invariants().unwrap().j, e.invariants().unwrap().j);
        assert!(e.quadratic_twist(&RatFunc::zero()).is_err());
    }

    #[test]
    fn base_change_neighbor_step_f4() {
        // y^2 = x^3 + (u'^2 x - 16)^2 / 4 under u' = 2/u, rho = 2/u^2
        // becomes Y^2 = X^3 + (X - u^6)^2
        let quarter = RatFunc::from_rat(&crate::exactalg::rat(1, 4));
        let e0 = WeierstrassCurve::from_a2_a4_a6(
            quarter.mul(&poly(&[0, 0, 0, 0, 1])), // u'^4 / 4
            poly(&[0, 0, -8]),                    // -8 u'^2
            poly(&[64]),
        );
        let phi = poly(&[2]).div(&poly(&[0, 1])).unwrap(); // 2/u
        let rho = poly(&[2]).div(&poly(&[0, 0, 1])).unwrap(); // 2/u^2
        assert_eq!(e0.base_change(&phi, &rho).unwrap(), f4());
    }

    #[test]
    fn base_change_neighbor_step_f2() {
        // y^2 = x^3 + 2(u'^3 - 4)x^2 + 16x under the same substitution
        // becomes the Fibration 2 equation
        let e0 = curve_a2_a4_a6(&[-8, 0, 0, 2], &[16], &[]);
        let phi = poly(&[2]).div(&poly(&[0, 1])).unwrap();
        let rho = poly(&[2]).div(&poly(&[0, 0, 1])).unwrap();
        assert_eq!(e0.base_change(&phi, &rho).unwrap(), f2());
    }

    #[test]
    fn base_change_identity_and_errors() {
        let e = f4();
        let id = poly(&[0, 1]);
        assert_eq!(e.base_change(&id, &poly(&[1])).unwrap(), e);
        assert_eq!(
            e.base_change(&poly(&[5]), &poly(&[1])).err(),
            Some(CurveError::BadParameter)
        );
        // j transforms by substitution only
        let phi = poly(&[2]).div(&poly(&[0, 1])).unwrap();
        let rho = poly(&[2]).div(&poly(&[0, 0, 1])).unwrap();
        let moved = e.base_change(&phi, &rho).unwrap();
        let j0 = e.invariants().unwrap().j;
        let j1 = moved.invariants().unwrap().j;
        assert_eq!(j1, j0.compose(&phi).unwrap());
    }

    #[test]
    fn derived_second_free_point_f4() {
        // (0, -u^6) - (2u^3, 2u^3 + u^6) = (-2u^3, u^6 - 2u^3), the group-law
        // replacement for the misprinted second free point
        let e = f4();
        let mut u6 = vec![0i64; 7];
        u6[6] = 1;
        let s = CurvePoint::affine(RatFunc::zero(), poly(&u6).neg());
        let gen = CurvePoint::affine(poly(&[0, 0, 0, 2]), poly(&[0, 0, 0, 2, 0, 0, 1]));
        let derived = e.sub(&s, &gen).unwrap();
        assert_eq!(
            derived,
            CurvePoint::affine(poly(&[0, 0, 0, -2]), poly(&[0, 0, 0, -2, 0, 0, 1]))
        );
        // the printed pair (-2u^6, u^3 - 2u^3) is not on the curve
        let printed = CurvePoint::affine(poly(&[0, 0, 0, 0, 0, 0, -2]), poly(&[0, 0, 0, -1]));
        assert!(!e.is_on_curve(&printed));
        // relation: derived + generator = (0, -u^6)
        assert_eq!(e.add(&derived, &gen).unwrap(), s);
    }
}
