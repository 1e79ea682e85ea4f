//! Places of Q(u), Kodaira types, and fiber data.

pub mod localring;
pub mod tate;

use std::cmp::Ordering;
use std::fmt;

use crate::exactalg::{QPoly, QRatFunc, UniPoly};

pub use tate::{fiber_configuration, tate_at, KodairaError, LocalModel};

/// A place of Q(u): a monic irreducible polynomial or the degree valuation
/// at infinity. A finite place of degree d corresponds to d points of the
/// base over C.
#[derive(Debug, Clone, PartialEq)]
pub enum Place {
    Finite(QPoly),
    Infinity,
}

impl Place {
    pub fn finite(p: QPoly) -> Self {
        debug_assert!(p.is_monic());
        Place::Finite(p)
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    /// Deterministic ordering: finite places by (degree, display), then
    /// infinity last.
    pub fn sort_key(&self) -> (bool, usize, String) {
        match self {
            Place::Finite(_) => (false, self.degree(), self.to_string()),
            Place::Infinity => (true, 0, String::new()),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.sort_key().cmp(&other.sort_key()))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => {
                // display the primitive integer form: u^6 + 4/27 reads as
                // 27*u^6+4
                let (_, prim) = p.to_primitive_ints();
                let ints = UniPoly::from_coeffs(
                    prim.into_iter()
                        .map(crate::exactalg::Rat::from_integer)
                        .collect(),
                );
                write!(f, "{}", ints)
            }
            Place::Infinity => write!(f, "inf"),
        }
    }
}

/// Valuation of a rational function at a place; `None` encodes +infinity
/// (the zero function).
pub fn ord_at(f: &QRatFunc, v: &Place) -> Option<i64> {
    if f.is_zero() {
        return None;
    }
    Some(match v {
        Place::Finite(p) => localring::ratfunc_ord(f, p),
        Place::Infinity => {
            let dn = f.num().degree().unwrap() as i64;
            let dd = f.den().degree().unwrap() as i64;
            dd - dn
        }
    })
}

/// Kodaira symbol of a degenerate fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KodairaType {
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    /// Number of irreducible components of the fiber.
    pub fn components(&self) -> u32 {
        match self {
            KodairaType::I(0) => 1,
            KodairaType::I(n) => *n,
            KodairaType::IStar(n) => n + 5,
            KodairaType::II => 1,
            KodairaType::III => 2,
            KodairaType::IV => 3,
            KodairaType::IVStar => 7,
            KodairaType::IIIStar => 8,
            KodairaType::IIStar => 9,
        }
    }

    /// Euler number, which equals ord Delta of the minimal model.
    pub fn euler(&self) -> u32 {
        match self {
            KodairaType::I(n) => *n,
            KodairaType::IStar(n) => n + 6,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }

    /// Geometric component group as a list of cyclic orders.
    pub fn component_group(&self) -> Vec<u32> {
        match self {
            KodairaType::I(0) | KodairaType::I(1) | KodairaType::II | KodairaType::IIStar => {
                vec![]
            }
            KodairaType::I(n) => vec![*n],
            KodairaType::IStar(n) => {
                if n % 2 == 0 {
                    vec![2, 2]
                } else {
                    vec![4]
                }
            }
            KodairaType::III | KodairaType::IIIStar => vec![2],
            KodairaType::IV | KodairaType::IVStar => vec![3],
        }
    }

    /// Discriminant of the root lattice spanned by the non-identity
    /// components (A_{n-1}, D_{n+4}, E_6, E_7, E_8 as the case may be).
    pub fn lattice_disc(&self) -> u32 {
        match self {
            KodairaType::I(0) => 1,
            KodairaType::I(n) => *n,
            KodairaType::IStar(_) => 4,
            KodairaType::II => 1,
            KodairaType::III => 2,
            KodairaType::IV => 3,
            KodairaType::IVStar => 3,
            KodairaType::IIIStar => 2,
            KodairaType::IIStar => 1,
        }
    }

    pub fn symbol(&self) -> String {
        match self {
            KodairaType::I(n) => format!("I{n}"),
            KodairaType::IStar(n) => format!("I{n}*"),
            KodairaType::II => "II".into(),
            KodairaType::III => "III".into(),
            KodairaType::IV => "IV".into(),
            KodairaType::IVStar => "IV*".into(),
            KodairaType::IIIStar => "III*".into(),
            KodairaType::IIStar => "II*".into(),
        }
    }

    pub fn parse(s: &str) -> Option<KodairaType> {
        let s = s.trim();
        Some(match s {
            "II" => KodairaType::II,
            "III" => KodairaType::III,
            "IV" => KodairaType::IV,
            "II*" => KodairaType::IIStar,
            "III*" => KodairaType::IIIStar,
            "IV*" => KodairaType::IVStar,
            _ => {
                let rest = s.strip_prefix('I')?;
                if let Some(n) = rest.strip_suffix('*') {
                    KodairaType::IStar(n.parse().ok()?)
                } else {
                    KodairaType::I(rest.parse().ok()?)
                }
            }
        })
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Classification of the fiber at one place, along with the local data
/// needed to identify which component a section meets.
#[derive(Debug, Clone)]
pub struct FiberData {
    pub place: Place,
    pub kodaira: KodairaType,
    /// Valuations on the minimal model; `None` means the quantity vanishes.
    pub ord_delta: u32,
    pub ord_c4: Option<u32>,
    pub ord_c6: Option<u32>,
    pub local: LocalModel,
}

impl FiberData {
    pub fn euler_contribution(&self) -> u32 {
        self.kodaira.euler() * self.place.degree() as u32
    }
}

/// Sum of Euler numbers weighted by place degrees; 24 for a K3 surface.
pub fn euler_sum(config: &[FiberData]) -> u32 {
    config.iter().map(|f| f.euler_contribution()).sum()
}
