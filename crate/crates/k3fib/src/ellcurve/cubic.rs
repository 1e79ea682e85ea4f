//! Plane cubics with a rational point and their Weierstrass forms.
//!
//! The conversion follows the classical tangent process. A flex point goes
//! directly: send the tangent line to infinity and the point to `[0:1:0]`,
//! then the equation is quadratic in y and normalizes to Weierstrass shape.
//! A non-flex point leads to a quartic v^2 = g(x) with square leading
//! coefficient, whose Jacobian is read off from the classical quartic
//! invariants I and J.
//!
//! Weierstrass models are unique only up to admissible rescaling, so
//! equality with a reference model is asserted via the j-invariant and the
//! fiber configuration, never coefficientwise.

use std::collections::BTreeMap;
use std::fmt;

use crate::exactalg::{rat_int, Field, RatFunc};
use crate::x3field::{Frac, MPoly};

use super::WeierstrassCurve;

/// A ternary cubic form with a designated rational point.
#[derive(Debug, Clone)]
pub struct PlaneCubic<K: Field> {
    /// coefficient of x^i y^j z^(3-i-j), keyed by (i, j)
    coeffs: BTreeMap<(u8, u8), RatFunc<K>>,
    point: [RatFunc<K>; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CubicError {
    NotDegreeThree,
    PointNotOnCubic,
    SingularAtPoint,
    SingularCubic,
    DegenerateTransform,
}

impl fmt::Display for CubicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            CubicError::NotDegreeThree => "form is not a cubic",
            CubicError::PointNotOnCubic => "designated point is not on the cubic",
            CubicError::SingularAtPoint => "cubic is singular at the designated point",
            CubicError::SingularCubic => "cubic is a singular curve",
            CubicError::DegenerateTransform => "could not build a projective transform",
        };
        write!(f, "{msg}")
    }
}

/// The change of variables from cubic coordinates to the Weierstrass model,
/// expressed in the affine chart z = 1 of the input.
pub struct CubicMap<K: Field> {
    pub x_map: Frac<RatFunc<K>>,
    pub y_map: Frac<RatFunc<K>>,
    /// Some(true) when the map was substituted back into the Weierstrass
    /// equation and checked to vanish modulo the cubic.
    pub verified: Option<bool>,
    pub description: String,
}

type Tri<K> = BTreeMap<(u8, u8, u8), RatFunc<K>>;

fn tri_mul<K: Field>(a: &Tri<K>, b: &Tri<K>) -> Tri<K> {
    let mut out: Tri<K> = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = (ea.0 + eb.0, ea.1 + eb.1, ea.2 + eb.2);
            let v = ca.mul(cb);
            match out.get_mut(&e) {
                Some(w) => {
                    let s = w.add(&v);
                    if s.is_zero() {
                        out.remove(&e);
                    } else {
                        *w = s;
                    }
                }
                None => {
                    if !v.is_zero() {
                        out.insert(e, v);
                    }
                }
            }
        }
    }
    out
}

fn tri_linear<K: Field>(row: &[RatFunc<K>; 3]) -> Tri<K> {
    let mut t = Tri::new();
    for (i, c) in row.iter().enumerate() {
        if !c.is_zero() {
            let e = match i {
                0 => (1, 0, 0),
                1 => (0, 1, 0),
                _ => (0, 0, 1),
            };
            t.insert(e, c.clone());
        }
    }
    t
}

impl<K: Field> PlaneCubic<K> {
    pub fn new(
        terms: Vec<((u8, u8, u8), RatFunc<K>)>,
        point: [RatFunc<K>; 3],
    ) -> Result<Self, CubicError> {
        let mut coeffs = BTreeMap::new();
        for ((i, j, k), c) in terms {
            if i + j + k != 3 {
                return Err(CubicError::NotDegreeThree);
            }
            if c.is_zero() {
                continue;
            }
            let e = (i, j);
            let entry = coeffs.entry(e).or_insert_with(RatFunc::zero);
            *entry = entry.add(&c);
        }
        coeffs.retain(|_, c: &mut RatFunc<K>| !c.is_zero());
        if coeffs.is_empty() {
            return Err(CubicError::NotDegreeThree);
        }
        let cubic = PlaneCubic { coeffs, point };
        if !cubic.eval(&cubic.point).is_zero() {
            return Err(CubicError::PointNotOnCubic);
        }
        if cubic.gradient(&cubic.point).iter().all(|g| g.is_zero()) {
            return Err(CubicError::SingularAtPoint);
        }
        Ok(cubic)
    }

    /// Affine input f(x, y) = 0, homogenized with z, point (x0, y0).
    pub fn from_affine(
        terms: Vec<((u8, u8), RatFunc<K>)>,
        point: (RatFunc<K>, RatFunc<K>),
    ) -> Result<Self, CubicError> {
        let mut t3 = Vec::new();
        for ((i, j), c) in terms {
            if i + j > 3 {
                return Err(CubicError::NotDegreeThree);
            }
            t3.push(((i, j, 3 - i - j), c));
        }
        PlaneCubic::new(t3, [point.0, point.1, RatFunc::one()])
    }

    pub fn designated_point(&self) -> &[RatFunc<K>; 3] {
        &self.point
    }

    fn eval(&self, p: &[RatFunc<K>; 3]) -> RatFunc<K> {
        let mut acc = RatFunc::zero();
        for (&(i, j), c) in &self.coeffs {
            let k = 3 - i - j;
            acc = acc.add(
                &c.mul(&p[0].pow(i as u32))
                    .mul(&p[1].pow(j as u32))
                    .mul(&p[2].pow(k as u32)),
            );
        }
        acc
    }

    fn gradient(&self, p: &[RatFunc<K>; 3]) -> [RatFunc<K>; 3] {
        let mut grad = [RatFunc::zero(), RatFunc::zero(), RatFunc::zero()];
        for (&(i, j), c) in &self.coeffs {
            let k = 3 - i - j;
            let exps = [i as u32, j as u32, k as u32];
            for (axis, g) in grad.iter_mut().enumerate() {
                if exps[axis] == 0 {
                    continue;
                }
                let mut term = c.mul(&RatFunc::from_rat(&rat_int(exps[axis] as i64)));
                for (other, &e) in exps.iter().enumerate() {
                    let e = if other == axis { e - 1 } else { e };
                    term = term.mul(&p[other].pow(e));
                }
                *g = g.add(&term);
            }
        }
        grad
    }

    /// Coefficients of the form after the substitution (x,y,z) = M (x',y',z').
    fn transform(&self, m: &[[RatFunc<K>; 3]; 3]) -> Tri<K> {
        let rows: [Tri<K>; 3] = [tri_linear(&m[0]), tri_linear(&m[1]), tri_linear(&m[2])];
        let mut out = Tri::new();
        for (&(i, j), c) in &self.coeffs {
            let k = 3 - i - j;
            let mut term = Tri::new();
            term.insert((0, 0, 0), c.clone());
            for _ in 0..i {
                term = tri_mul(&term, &rows[0]);
            }
            for _ in 0..j {
                term = tri_mul(&term, &rows[1]);
            }
            for _ in 0..k {
                term = tri_mul(&term, &rows[2]);
            }
            for (e, v) in term {
                let entry = out.entry(e).or_insert_with(RatFunc::zero);
                *entry = entry.add(&v);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

fn det3<K: Field>(m: &[[RatFunc<K>; 3]; 3]) -> RatFunc<K> {
    let a = |i: usize, j: usize| &m[i][j];
    a(0, 0)
        .mul(&a(1, 1).mul(a(2, 2)).sub(&a(1, 2).mul(a(2, 1))))
        .sub(&a(0, 1).mul(&a(1, 0).mul(a(2, 2)).sub(&a(1, 2).mul(a(2, 0)))))
        .add(&a(0, 2).mul(&a(1, 0).mul(a(2, 1)).sub(&a(1, 1).mul(a(2, 0)))))
}

fn inverse3<K: Field>(m: &[[RatFunc<K>; 3]; 3]) -> Option<[[RatFunc<K>; 3]; 3]> {
    let d = det3(m);
    let di = d.inv()?;
    let cof = |r: usize, c: usize| {
        let rs: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cs: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        let minor = m[rs[0]][cs[0]]
            .mul(&m[rs[1]][cs[1]])
            .sub(&m[rs[0]][cs[1]].mul(&m[rs[1]][cs[0]]));
        if (r + c) % 2 == 0 {
            minor
        } else {
            minor.neg()
        }
    };
    let mut out: [[RatFunc<K>; 3]; 3] = Default::default();
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            // adjugate transposes the cofactor matrix
            *v = cof(j, i).mul(&di);
        }
    }
    Some(out)
}

/// Convert a plane cubic with rational point into Weierstrass form.
///
/// The output curve has the same j-invariant and the designated point maps
/// to the origin O of the group law.
pub fn cubic_to_weierstrass<K: Field>(
    cubic: &PlaneCubic<K>,
) -> Result<(WeierstrassCurve<K>, CubicMap<K>), CubicError> {
    let p = &cubic.point;
    let tangent = cubic.gradient(p);

    // y'-row: coordinate form nonzero at P
    let pivot = (0..3)
        .find(|&i| !p[i].is_zero())
        .expect("projective point has a nonzero coordinate");

    // x'-row: p_pivot e_j - p_j e_pivot vanishes at P; pick j giving an
    // invertible matrix together with the tangent as the z'-row
    let mut chosen: Option<[[RatFunc<K>; 3]; 3]> = None;
    for j in 0..3 {
        if j == pivot {
            continue;
        }
        let mut xrow: [RatFunc<K>; 3] = Default::default();
        xrow[j] = p[pivot].clone();
        xrow[pivot] = p[j].neg();
        let mut yrow: [RatFunc<K>; 3] = Default::default();
        yrow[pivot] = RatFunc::one();
        let t = [xrow, yrow, tangent.clone()];
        if !det3(&t).is_zero() {
            chosen = Some(t);
            break;
        }
    }
    let t = chosen.ok_or(CubicError::DegenerateTransform)?;
    let t_inv = inverse3(&t).ok_or(CubicError::DegenerateTransform)?;

    // coefficients in the (x', y', z') coordinates
    let f = cubic.transform(&t_inv);
    let coeff = |i: u8, j: u8, k: u8| f.get(&(i, j, k)).cloned().unwrap_or_else(RatFunc::zero);

    // P now sits at [0:1:0] on the line z' = 0, so y'^3 cannot appear, and
    // tangency kills x' y'^2.
    debug_assert!(coeff(0, 3, 0).is_zero());
    debug_assert!(coeff(1, 2, 0).is_zero());

    let alpha = coeff(0, 2, 1); // y'^2 z'
    if alpha.is_zero() {
        return Err(CubicError::SingularAtPoint);
    }
    let q2 = coeff(2, 1, 0); // x'^2 y'

    if q2.is_zero() {
        // Flex: restricted to z' = 0 the form is gamma x'^3.
        let gamma = coeff(3, 0, 0);
        if gamma.is_zero() {
            return Err(CubicError::DegenerateTransform);
        }
        let ai = alpha.inv().unwrap();
        let g = gamma.mul(&ai);
        let b = coeff(1, 1, 1).mul(&ai);
        let d = coeff(0, 1, 2).mul(&ai);
        let e2 = coeff(2, 0, 1).mul(&ai);
        let e1 = coeff(1, 0, 2).mul(&ai);
        let e0 = coeff(0, 0, 3).mul(&ai);
        // alpha y^2 + beta xy + delta y + gamma x^3 + ... = 0 under
        // (X, Y) = (-g x, g y) becomes
        // Y^2 - bXY + dgY = X^3 - e2 X^2 + e1 g X - e0 g^2
        let curve = WeierstrassCurve {
            a1: b.neg(),
            a2: e2.neg(),
            a3: d.mul(&g),
            a4: e1.mul(&g),
            a6: e0.mul(&g.mul(&g)).neg(),
        };
        if curve.discriminant().is_zero() {
            return Err(CubicError::SingularCubic);
        }

        // Map in the affine chart z = 1 of the input coordinates.
        let lin = |row: &[RatFunc<K>; 3]| -> MPoly<RatFunc<K>> {
            MPoly::term(row[0].clone(), 1, 0)
                .add(&MPoly::term(row[1].clone(), 0, 1))
                .add(&MPoly::constant(row[2].clone()))
        };
        let xp = lin(&t[0]);
        let yp = lin(&t[1]);
        let zp = lin(&t[2]);
        let x_map = Frac::new(xp.mul_scalar(&g.neg()), zp.clone());
        let y_map = Frac::new(yp.mul_scalar(&g), zp);
        let verified = verify_map(cubic, &curve, &x_map, &y_map);
        let map = CubicMap {
            x_map,
            y_map,
            verified,
            description: "flex point sent to [0:1:0], tangent to the line at infinity".into(),
        };
        return Ok((curve, map));
    }

    // Non-flex: affine chart z' = 1 reads alpha y^2 + q(x) y + c(x) = 0 with
    // deg q = 2. Completing the square gives v^2 = q(x)^2 - 4 alpha c(x), a
    // quartic with square leading coefficient q2^2; its Jacobian is the
    // classical Y^2 = X^3 - 27 I X - 27 J.
    let q = [coeff(0, 1, 2), coeff(1, 1, 1), q2.clone()];
    let c = [
        coeff(0, 0, 3),
        coeff(1, 0, 2),
        coeff(2, 0, 1),
        coeff(3, 0, 0),
    ];
    let four_alpha = alpha.mul(&RatFunc::from_rat(&rat_int(4)));
    // g(x) = q(x)^2 - 4 alpha c(x), coefficients lowest first
    let mut gq = [
        RatFunc::zero(),
        RatFunc::zero(),
        RatFunc::zero(),
        RatFunc::zero(),
        RatFunc::zero(),
    ];
    for (i, qi) in q.iter().enumerate() {
        for (j, qj) in q.iter().enumerate() {
            gq[i + j] = gq[i + j].add(&qi.mul(qj));
        }
    }
    for (i, ci) in c.iter().enumerate() {
        gq[i] = gq[i].sub(&four_alpha.mul(ci));
    }
    let [e, d, cc, b, a] = gq; // a x^4 + b x^3 + cc x^2 + d x + e
    let n = |k: i64| RatFunc::from_rat(&rat_int(k));
    let i_inv = n(12)
        .mul(&a)
        .mul(&e)
        .sub(&n(3).mul(&b).mul(&d))
        .add(&cc.mul(&cc));
    let j_inv = n(72)
        .mul(&a)
        .mul(&cc)
        .mul(&e)
        .add(&n(9).mul(&b).mul(&cc).mul(&d))
        .sub(&n(27).mul(&a).mul(&d).mul(&d))
        .sub(&n(27).mul(&b).mul(&b).mul(&e))
        .sub(&n(2).mul(&cc.pow(3)));
    let curve =
        WeierstrassCurve::from_a2_a4_a6(RatFunc::zero(), n(-27).mul(&i_inv), n(-27).mul(&j_inv));
    if curve.discriminant().is_zero() {
        return Err(CubicError::SingularCubic);
    }
    let map = CubicMap {
        x_map: Frac::from_poly(MPoly::zero()),
        y_map: Frac::from_poly(MPoly::zero()),
        verified: None,
        description: "non-flex point: tangent coordinate gives v^2 = quartic with square \
                      leading coefficient; curve recovered from the quartic invariants I, J"
            .into(),
    };
    Ok((curve, map))
}

/// Substitute the map into the Weierstrass equation and check the result is
/// divisible by the affine cubic. Returns None when the division strategy
/// does not apply (non-constant leading coefficient in both variables).
fn verify_map<K: Field>(
    cubic: &PlaneCubic<K>,
    curve: &WeierstrassCurve<K>,
    x_map: &Frac<RatFunc<K>>,
    y_map: &Frac<RatFunc<K>>,
) -> Option<bool> {
    // affine cubic f(x, y) = F(x, y, 1)
    let mut f = MPoly::<RatFunc<K>>::zero();
    for (&(i, j), c) in &cubic.coeffs {
        f = f.add(&MPoly::term(c.clone(), i as u32, j as u32));
    }
    let x = x_map;
    let y = y_map;
    let lift = |r: &RatFunc<K>| Frac::from_poly(MPoly::constant(r.clone()));
    // W = y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6
    let w = y
        .mul(y)
        .add(&lift(&curve.a1).mul(x).mul(y))
        .add(&lift(&curve.a3).mul(y))
        .sub(&x.pow(3))
        .sub(&lift(&curve.a2).mul(&x.mul(x)))
        .sub(&lift(&curve.a4).mul(x))
        .sub(&lift(&curve.a6));
    if w.is_zero() {
        return Some(true);
    }
    crate::x3field::mpoly::divisible(w.num(), &f)
}
