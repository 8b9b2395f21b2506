//! Exact arithmetic for the tower of composition algebras — reals, complexes,
//! quaternions, octonions, sedenions — and for the finite geometry that
//! encodes octonion multiplication.
//!
//! Everything here verifies *exactly*: arbitrary-precision rationals and
//! integers throughout, symbolic polynomial identities reduced to the zero
//! polynomial, and exhaustive enumeration wherever a claim is finite.  No
//! floating point, no sampling-only arguments.
//!
//! Module map:
//!
//! * [`qcalc`] — q-binomial coefficients, Galois numbers, q-factorials, and
//!   the squared q-exponential identity whose coefficients count subspaces.
//! * [`symbolic`] — sparse multivariate polynomials over the integers; the
//!   workhorse behind every "identically zero" claim.
//! * [`finite_geometry`] — subspaces of V(n, q), their Hasse lattice, and
//!   projective spaces PG(n, q) with duality checks.
//! * [`cayley_dickson`] — the doubling construction from level 0 (reals) to
//!   level 4 (sedenions), with decisive probes for algebraic laws.
//! * [`fano_octonions`] — octonion multiplication tables coded by labelings
//!   and orientations of the Fano plane, validated symbolically.
//! * [`identities`] — the N-square identities (N = 1, 2, 4, 8) derived from
//!   multiplication tables, and the residual that refuses to vanish at 16.
//! * [`acceptance`] — the end-to-end self-check suite tying it all together.

pub mod acceptance;
pub mod cayley_dickson;
pub mod fano_octonions;
pub mod finite_geometry;
pub mod identities;
pub mod qcalc;
pub mod symbolic;

/// The scalar of every numeric computation in this crate: an exact
/// arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;
