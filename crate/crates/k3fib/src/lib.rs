//! Exact computer algebra for the Jacobian fibrations on the singular K3
//! surface of discriminant 3.
//!
//! The library verifies, with exact arithmetic throughout, the Weierstrass
//! models, singular-fiber configurations, Mordell-Weil data, Neron-Severi
//! divisor identities, and the 2-neighbor/twist relations of the six
//! fibrations, and resolves the handful of internal misprints in the source
//! data by computation rather than by editorial choice.
//!
//! Module layout:
//!
//! * [`exactalg`] - rationals, simple number-field extensions, univariate
//!   polynomials and rational functions, factorization over `Q`.
//! * [`x3field`] - arithmetic in `C(X3) = K(y1,y2)[t] / (t^3 - (y1^2-1)(y2^2-1))`.
//! * [`ellcurve`] - Weierstrass curves over K(u): invariants, group law,
//!   twists, base change, plane-cubic conversion.
//! * [`kodaira`] - places of Q(u), Tate's algorithm, fiber classification.
//! * [`mwlattice`] - torsion checks, Shioda height pairing, lattice identities.
//! * [`nslattice`] - the 24 named (-2)-curves, intersection pairing, and
//!   extended-Dynkin fiber recognition.
//! * [`catalog`] - the machine-readable fibration records and the full
//!   verification pipeline.

pub mod catalog;
pub mod ellcurve;
pub mod exactalg;
pub mod kodaira;
pub mod mwlattice;
pub mod nslattice;
pub mod parse;
pub mod x3field;
