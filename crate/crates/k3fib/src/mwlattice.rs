//! Mordell-Weil verification: torsion orders, the Shioda height pairing
//! with local correction terms, the Shioda-Tate rank identity, and the
//! Neron-Severi determinant identity pinning discriminant 3.
//!
//! The local correction at a fiber needs the component met by the section.
//! Components are identified from valuations on the minimal local model:
//! tangent-branch valuations at a node for I_n (with a Hensel-lifted branch
//! separation), the v(x) = 1 / v(x) >= 2 dichotomy after the double-root
//! translation for I_n*, and the reduction-to-singular-point test for the
//! remaining additive types. Every index feeds a height that the callers
//! cross-check against claimed values; mismatches fail loudly.

use std::fmt;

use crate::ellcurve::{CurveError, CurvePoint, WeierstrassCurve};
use crate::exactalg::{irreducible_factor, rat, rat_int, Field, QRatFunc, Rat, RatFunc};
use crate::kodaira::localring::{
    hensel_root, hensel_sqrt, poly_ord, rat_sqrt, reduce_mod, residue,
};
use crate::kodaira::{fiber_configuration, tate_at, FiberData, KodairaError, KodairaType, Place};

/// Fixed constants of the surface under verification.
pub struct SurfaceConstants;

impl SurfaceConstants {
    /// Euler characteristic chi(O_X) of an elliptic K3.
    pub const CHI: u32 = 2;
    /// Picard number of a singular K3.
    pub const RHO: u32 = 20;
    /// Discriminant of the transcendental lattice of X3.
    pub const TARGET_DETERMINANT: u32 = 3;
}

/// A claimed Mordell-Weil structure for one fibration.
#[derive(Debug, Clone)]
pub struct MWClaim {
    pub rank: u32,
    /// Cyclic orders of the torsion group (empty for trivial torsion).
    pub torsion_orders: Vec<u32>,
    /// Torsion points with their claimed exact orders.
    pub torsion_points: Vec<(CurvePoint<Rat>, u32)>,
    pub free_generators: Vec<CurvePoint<Rat>>,
    pub claimed_heights: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MwError {
    NotOnCurve,
    /// A section x-coordinate with a pole of odd order cannot occur.
    OddOrderPole,
    /// Component identification needs machinery out of scope (documented).
    Unsupported(String),
    Internal(String),
}

impl fmt::Display for MwError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MwError::NotOnCurve => write!(f, "point does not lie on the curve"),
            MwError::OddOrderPole => write!(f, "section x-coordinate has an odd-order pole"),
            MwError::Unsupported(m) => write!(f, "unsupported: {m}"),
            MwError::Internal(m) => write!(f, "internal inconsistency: {m}"),
        }
    }
}

impl From<CurveError> for MwError {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::PointNotOnCurve => MwError::NotOnCurve,
            other => MwError::Internal(other.to_string()),
        }
    }
}

impl From<KodairaError> for MwError {
    fn from(e: KodairaError) -> Self {
        MwError::Internal(e.to_string())
    }
}

/// The fiber component met by a section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Component {
    Identity,
    /// I_n cycle component, index normalized to 1 <= k <= n/2.
    Cycle(u32),
    /// The simple component at the near end of an I_n* chain.
    StarNear,
    /// One of the two simple components at the far end of an I_n* chain.
    StarFar,
    /// The non-identity simple component of III, IV, IV*, III*, I_0*.
    SimpleNonIdentity,
}

/// Local height contribution of a component on a fiber of the given type.
pub fn contribution(kodaira: &KodairaType, comp: &Component) -> Rat {
    match comp {
        Component::Identity => rat_int(0),
        Component::Cycle(k) => match kodaira {
            KodairaType::I(n) => {
                rat_int(*k as i64) * rat_int((*n - *k) as i64) / rat_int(*n as i64)
            }
            _ => unreachable!("cycle component on a non-I_n fiber"),
        },
        Component::StarNear => rat_int(1),
        Component::StarFar => match kodaira {
            KodairaType::IStar(n) => rat_int(1) + rat(*n as i64, 4),
            _ => unreachable!("far component on a non-I_n* fiber"),
        },
        Component::SimpleNonIdentity => match kodaira {
            KodairaType::III => rat(1, 2),
            KodairaType::IV => rat(2, 3),
            KodairaType::IVStar => rat(4, 3),
            KodairaType::IIIStar => rat(3, 2),
            KodairaType::IStar(0) => rat_int(1),
            _ => unreachable!("simple non-identity component on {kodaira:?}"),
        },
    }
}

fn vord(f: &QRatFunc, p: &crate::exactalg::QPoly) -> Option<i64> {
    if f.is_zero() {
        None
    } else {
        Some(crate::kodaira::localring::ratfunc_ord(f, p))
    }
}

/// Index of the fiber component met by the section `pt` at the fiber `fd`.
pub fn component_index(fd: &FiberData, pt: &CurvePoint<Rat>) -> Result<Component, MwError> {
    let (x, y) = match pt.xy() {
        None => return Ok(Component::Identity),
        Some(v) => v,
    };
    let (xl, yl) = fd
        .local
        .section_coords(x, y)
        .ok_or_else(|| MwError::Internal("chart transform failed".into()))?;
    let p = &fd.local.uniformizer;

    // a pole of x means the section reduces to the fiber's infinity point,
    // which lies on the identity component
    if vord(&xl, p).map(|o| o < 0).unwrap_or(false) {
        return Ok(Component::Identity);
    }
    let sing = match &fd.local.sing_x {
        None => return Ok(Component::Identity),
        Some(s) => s,
    };
    let x_shift = xl.sub(&RatFunc::from_poly(sing.clone()));
    let through = vord(&x_shift, p).map(|o| o >= 1).unwrap_or(true)
        && vord(&yl, p).map(|o| o >= 1).unwrap_or(true);
    if !through {
        return Ok(Component::Identity);
    }

    match fd.kodaira {
        KodairaType::I(0) => Ok(Component::Identity),
        KodairaType::I(n) => cycle_index(fd, &xl, &yl, n).map(Component::Cycle),
        KodairaType::IStar(0) => Ok(Component::SimpleNonIdentity),
        KodairaType::IStar(_) => {
            let tau =
                fd.local.star_tau.clone().ok_or_else(|| {
                    MwError::Internal("I_n* fiber without stored translation".into())
                })?;
            let x_t = x_shift.sub(&RatFunc::from_poly(tau.mul(p)));
            match vord(&x_t, p) {
                Some(1) => Ok(Component::StarNear),
                None => Ok(Component::StarFar),
                Some(o) if o >= 2 => Ok(Component::StarFar),
                Some(o) => Err(MwError::Internal(format!(
                    "section through an I_n* singular point with v(x) = {o}"
                ))),
            }
        }
        KodairaType::III | KodairaType::IV | KodairaType::IVStar | KodairaType::IIIStar => {
            Ok(Component::SimpleNonIdentity)
        }
        KodairaType::II | KodairaType::IIStar => Err(MwError::Internal(
            "a section cannot pass through the singular point of a II or II* fiber".into(),
        )),
    }
}

/// Cycle index on a multiplicative fiber from tangent-branch valuations.
fn cycle_index(fd: &FiberData, xl: &QRatFunc, yl: &QRatFunc, n: u32) -> Result<u32, MwError> {
    let p = &fd.local.uniformizer;
    let prec = n + 4;
    let [c, b, a, _] = fd.local.cubic();
    let sing = fd
        .local
        .sing_x
        .as_ref()
        .expect("I_n fiber has a singular point");

    // factor x^3 + Ax^2 + Bx + C = (x - t)(x^2 + q1 x + q0) with t the
    // Hensel lift of the simple root
    let ctx = crate::kodaira::localring::ResCtx::new(p);
    let a_res = residue(&a, p);
    let t0 = ctx.red(&a_res.add(&sing.mul_scalar(&rat_int(2))).neg());
    let f_coeffs = [c.clone(), b.clone(), a.clone(), RatFunc::one()];
    let t = hensel_root(&f_coeffs, &t0, p, prec);
    let pk = p.pow(prec);
    let a_n = reduce_mod(&a, p, prec);
    let q1 = a_n.add(&t).rem(&pk).unwrap();

    // branch separation: w = x(P) - t is a unit; gamma = sqrt(w)
    let w = xl.sub(&RatFunc::from_poly(t));
    let w_res = residue(&w, p);
    if p.degree() != Some(1) {
        return Err(MwError::Unsupported(
            "component index at a node over a place of degree > 1".into(),
        ));
    }
    let w0 = w_res.coeff(0);
    if Field::is_zero(&w0) {
        return Err(MwError::Internal("branch unit reduced to zero".into()));
    }
    let gamma = match rat_sqrt(&w0) {
        Some(z0) => hensel_sqrt(&w, &crate::exactalg::QPoly::constant(z0), p, prec),
        None => {
            // non-split node: the two branches are conjugate, so the
            // section meets the middle of the cycle
            if n % 2 != 0 {
                return Err(MwError::Internal(
                    "conjugate branches on an odd cycle".into(),
                ));
            }
            return Ok(n / 2);
        }
    };

    let half = rat(1, 2);
    let center = reduce_mod(xl, p, prec)
        .add(&q1.mul_scalar(&half))
        .rem(&pk)
        .unwrap();
    let y_n = reduce_mod(yl, p, prec);
    let minus = y_n.sub(&gamma.mul(&center)).rem(&pk).unwrap();
    let plus = y_n.add(&gamma.mul(&center)).rem(&pk).unwrap();
    let v1 = if minus.is_zero() {
        prec as i64
    } else {
        poly_ord(&minus, p)
    };
    let v2 = if plus.is_zero() {
        prec as i64
    } else {
        poly_ord(&plus, p)
    };
    let k = v1.min(v2);
    if v1 < prec as i64 && v2 < prec as i64 && v1 + v2 != n as i64 {
        return Err(MwError::Internal(format!(
            "branch valuations {v1} + {v2} do not sum to n = {n}"
        )));
    }
    if k < 1 || 2 * k > n as i64 {
        return Err(MwError::Internal(format!(
            "cycle index {k} out of range for I_{n}"
        )));
    }
    Ok(k as u32)
}

/// The intersection number (P.O) of a section with the zero section,
/// computed from poles of the x-coordinate on minimal local models.
pub fn section_meets_zero(e: &WeierstrassCurve<Rat>, pt: &CurvePoint<Rat>) -> Result<u32, MwError> {
    let config = fiber_configuration(e)?;
    section_meets_zero_with(e, pt, &config)
}

pub fn section_meets_zero_with(
    e: &WeierstrassCurve<Rat>,
    pt: &CurvePoint<Rat>,
    config: &[FiberData],
) -> Result<u32, MwError> {
    let (x, y) = match pt.xy() {
        None => return Ok(0),
        Some(v) => v,
    };
    if !e.is_on_curve(pt) {
        return Err(MwError::NotOnCurve);
    }
    let mut places: Vec<Place> = Vec::new();
    for (g, _) in irreducible_factor(x.den()) {
        if g.degree() == Some(0) {
            continue;
        }
        places.push(Place::finite(g));
    }
    for fd in config {
        if !places.contains(&fd.place) {
            places.push(fd.place.clone());
        }
    }
    if !places.contains(&Place::Infinity) {
        places.push(Place::Infinity);
    }

    let mut total: i64 = 0;
    for v in places {
        let local = match config.iter().find(|fd| fd.place == v) {
            Some(fd) => fd.local.clone(),
            None => tate_at(e, &v)?.local,
        };
        let (xl, _) = local
            .section_coords(x, y)
            .ok_or_else(|| MwError::Internal("chart transform failed".into()))?;
        if xl.is_zero() {
            continue;
        }
        let o = vord(&xl, &local.uniformizer).unwrap();
        if o < 0 {
            if o % 2 != 0 {
                return Err(MwError::OddOrderPole);
            }
            total += (-o) / 2 * v.degree() as i64;
        }
    }
    Ok(total as u32)
}

/// Shioda height <P, P> = 2 chi + 2 (P.O) - sum of local contributions.
pub fn height(
    e: &WeierstrassCurve<Rat>,
    pt: &CurvePoint<Rat>,
    config: &[FiberData],
) -> Result<Rat, MwError> {
    if pt.is_infinity() {
        return Ok(rat_int(0));
    }
    if !e.is_on_curve(pt) {
        return Err(MwError::NotOnCurve);
    }
    let po = section_meets_zero_with(e, pt, config)?;
    let mut h = rat_int(2 * SurfaceConstants::CHI as i64) + rat_int(2 * po as i64);
    for fd in config {
        let comp = component_index(fd, pt)?;
        let contr = contribution(&fd.kodaira, &comp);
        h -= contr * rat_int(fd.place.degree() as i64);
    }
    Ok(h)
}

/// True iff nP = O and kP != O for 1 <= k < n.
pub fn torsion_verify(
    e: &WeierstrassCurve<Rat>,
    pt: &CurvePoint<Rat>,
    n: u32,
) -> Result<bool, MwError> {
    if n == 0 {
        return Ok(false);
    }
    let mut acc = CurvePoint::Infinity;
    for k in 1..=n {
        acc = e.add(&acc, pt)?;
        if k < n && acc.is_infinity() {
            return Ok(false);
        }
    }
    Ok(acc.is_infinity())
}

/// Shioda-Tate: rho = 2 + sum deg(v) (m_v - 1) + rank.
pub fn shioda_tate_check(config: &[FiberData], claim: &MWClaim) -> bool {
    let fiber_part: u32 = config
        .iter()
        .map(|fd| (fd.kodaira.components() - 1) * fd.place.degree() as u32)
        .sum();
    2 + fiber_part + claim.rank == SurfaceConstants::RHO
}

/// Determinant identity:
/// (prod_v disc(root lattice)^deg v) * det(MWL) / |torsion|^2 = 3.
pub fn determinant_check(config: &[FiberData], claim: &MWClaim) -> bool {
    let mut value = rat_int(1);
    for fd in config {
        let disc = rat_int(fd.kodaira.lattice_disc() as i64);
        for _ in 0..fd.place.degree() {
            value *= disc.clone();
        }
    }
    let det_mwl = claim
        .claimed_heights
        .iter()
        .fold(rat_int(1), |acc, h| acc * h.clone());
    let torsion: i64 = claim.torsion_orders.iter().map(|&o| o as i64).product();
    value = value * det_mwl / (rat_int(torsion) * rat_int(torsion));
    value == rat_int(SurfaceConstants::TARGET_DETERMINANT as i64)
}

/// True iff the claimed torsion group embeds into the product of the
/// geometric component groups over all fibers (degree-d places contribute
/// d copies).
pub fn torsion_injection_check(config: &[FiberData], claim: &MWClaim) -> bool {
    let mut big: Vec<u32> = Vec::new();
    for fd in config {
        for _ in 0..fd.place.degree() {
            big.extend(fd.kodaira.component_group());
        }
    }
    abelian_embeds(&claim.torsion_orders, &big)
}

/// Embedding test for finite abelian groups given as lists of cyclic
/// orders: for every prime, the sorted p-exponent lists must dominate.
pub fn abelian_embeds(sub: &[u32], big: &[u32]) -> bool {
    let primes_of = |orders: &[u32]| -> Vec<u32> {
        let mut ps = Vec::new();
        for &o in orders {
            let mut o = o;
            let mut p = 2;
            while p * p <= o {
                if o % p == 0 {
                    ps.push(p);
                    while o % p == 0 {
                        o /= p;
                    }
                }
                p += 1;
            }
            if o > 1 {
                ps.push(o);
            }
        }
        ps.sort_unstable();
        ps.dedup();
        ps
    };
    for p in primes_of(sub) {
        let exps = |orders: &[u32]| -> Vec<u32> {
            let mut es: Vec<u32> = orders
                .iter()
                .map(|&o| {
                    let mut e = 0;
                    let mut o = o;
                    while o % p == 0 {
                        e += 1;
                        o /= p;
                    }
                    e
                })
                .filter(|&e| e > 0)
                .collect();
            es.sort_unstable_by(|a, b| b.cmp(a));
            es
        };
        let a = exps(sub);
        let b = exps(big);
        for (i, &ai) in a.iter().enumerate() {
            if b.get(i).copied().unwrap_or(0) < ai {
                return false;
            }
        }
    }
    true
}
