//! Exact arithmetic foundation: rationals, number fields, polynomials,
//! rational functions, and factorization over Q.

pub mod factor;
pub mod field;
pub mod numfield;
pub mod poly;
pub mod ratfunc;

pub use factor::{irreducible_factor, is_irreducible, squarefree_factor};
pub use field::{fmt_rat_coeff, rat, rat_int, Field, Int, Rat};
pub use numfield::{NfElem, NumberField, NumberFieldError};
pub use poly::{PolyError, UniPoly};
pub use ratfunc::RatFunc;

/// Polynomials over Q in the fibration base variable.
pub type QPoly = UniPoly<Rat>;
/// Elements of Q(u).
pub type QRatFunc = RatFunc<Rat>;
