//! The Cayley–Dickson tower with exact rational coefficients: level 0 is the
//! reals, then complexes, quaternions, octonions, and sedenions at level 4.
//!
//! # Doubling convention
//!
//! An element of level `l` is an ordered pair `(a, b)` of elements of level
//! `l - 1`, stored as the low and high halves of the coefficient vector.
//! Multiplication and conjugation are fixed, once and for all, as
//!
//! ```text
//! (a, b) * (c, d) = (a*c - conj(d)*b,  d*a + b*conj(c))
//! conj((a, b))    = (conj(a), -b)
//! ```
//!
//! All basis products below (e.g. `e1*e2 = e3`, `e1*e4 = e5`) are relative to
//! this convention; other sign conventions exist in the literature and give
//! isomorphic algebras with different-looking tables.
//!
//! # Law probes
//!
//! [`probe_law`] decides commutativity, associativity, alternativity,
//! flexibility, the Moufang identities, and norm composition at a given
//! level.  Each law is checked by an exhaustive pass over basis tuples —
//! using the multilinearized (polarized) form of the law where the law
//! itself is not multilinear, so the basis pass is genuinely decisive in
//! characteristic zero — followed by seeded random trials in exact rational
//! arithmetic as an independent confirmation.  Every `holds = false` report
//! carries a concrete counterexample that can be re-checked from scratch.

use crate::symbolic::Poly;
use crate::Rational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Highest supported level: 4, the sedenions.
pub const MAX_LEVEL: usize = 4;

/// Errors for the Cayley–Dickson operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CdError {
    /// Level beyond the sedenion cap.
    UnsupportedLevel { level: usize, max: usize },
    /// Coefficient vector length does not equal 2^level.
    WrongCoefficientCount { level: usize, expected: usize, got: usize },
    /// Two operands live at different levels.
    LevelMismatch { left: usize, right: usize },
    /// Basis index outside 0..2^level.
    UnitIndexOutOfRange { index: usize, dim: usize },
    /// The zero element has no inverse.
    ZeroInverse,
    /// Inverses stop being total once zero divisors appear (level >= 4).
    InverseUndefinedAtLevel { level: usize },
    /// A probe needs at least one random trial.
    NoTrials,
}

impl fmt::Display for CdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CdError::UnsupportedLevel { level, max } => {
                write!(f, "level {level} beyond the supported maximum {max}")
            }
            CdError::WrongCoefficientCount { level, expected, got } => {
                write!(f, "level {level} needs {expected} coefficients, got {got}")
            }
            CdError::LevelMismatch { left, right } => {
                write!(f, "cannot combine level {left} with level {right}")
            }
            CdError::UnitIndexOutOfRange { index, dim } => {
                write!(f, "unit index {index} out of range for dimension {dim}")
            }
            CdError::ZeroInverse => write!(f, "the zero element has no inverse"),
            CdError::InverseUndefinedAtLevel { level } => {
                write!(f, "inverse undefined at level {level}: zero divisors exist")
            }
            CdError::NoTrials => write!(f, "at least one random trial is required"),
        }
    }
}

impl std::error::Error for CdError {}

fn check_level(level: usize) -> Result<(), CdError> {
    if level > MAX_LEVEL {
        Err(CdError::UnsupportedLevel {
            level,
            max: MAX_LEVEL,
        })
    } else {
        Ok(())
    }
}

/// An element of the level-`l` Cayley–Dickson algebra: 2^l exact rational
/// coefficients, slot 0 being the real part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdElement {
    level: usize,
    coeffs: Vec<Rational>,
}

impl CdElement {
    /// Wraps a coefficient vector; its length must be exactly 2^level.
    pub fn new(level: usize, coeffs: Vec<Rational>) -> Result<Self, CdError> {
        check_level(level)?;
        let expected = 1usize << level;
        if coeffs.len() != expected {
            return Err(CdError::WrongCoefficientCount {
                level,
                expected,
                got: coeffs.len(),
            });
        }
        Ok(CdElement { level, coeffs })
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_integers(level: usize, coeffs: &[i64]) -> Result<Self, CdError> {
        CdElement::new(
            level,
            coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(),
        )
    }

    pub fn zero(level: usize) -> Result<Self, CdError> {
        check_level(level)?;
        Ok(CdElement {
            level,
            coeffs: vec![Rational::zero(); 1 << level],
        })
    }

    pub fn one(level: usize) -> Result<Self, CdError> {
        CdElement::unit(level, 0)
    }

    /// The basis unit e_index at the given level.
    pub fn unit(level: usize, index: usize) -> Result<Self, CdError> {
        check_level(level)?;
        let dim = 1usize << level;
        if index >= dim {
            return Err(CdError::UnitIndexOutOfRange { index, dim });
        }
        let mut coeffs = vec![Rational::zero(); dim];
        coeffs[index] = Rational::one();
        Ok(CdElement { level, coeffs })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// Coefficientwise sum.  Panics on mismatched levels; use
    /// [`CdElement::multiply`] for the fallible product.
    pub fn add(&self, other: &CdElement) -> CdElement {
        assert_eq!(self.level, other.level, "mixed levels in add");
        CdElement {
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &CdElement) -> CdElement {
        assert_eq!(self.level, other.level, "mixed levels in sub");
        CdElement {
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> CdElement {
        CdElement {
            level: self.level,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> CdElement {
        CdElement {
            level: self.level,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// The Cayley–Dickson product under the fixed doubling convention.
    pub fn multiply(&self, other: &CdElement) -> Result<CdElement, CdError> {
        if self.level != other.level {
            return Err(CdError::LevelMismatch {
                left: self.level,
                right: other.level,
            });
        }
        Ok(CdElement {
            level: self.level,
            coeffs: mul_slices(&self.coeffs, &other.coeffs),
        })
    }

    /// Conjugation: negate every coefficient except the real part.
    /// Structurally this is `conj((a, b)) = (conj(a), -b)` unwound.
    pub fn conjugate(&self) -> CdElement {
        let mut coeffs = self.coeffs.clone();
        for c in coeffs.iter_mut().skip(1) {
            *c = -&*c;
        }
        CdElement {
            level: self.level,
            coeffs,
        }
    }

    /// The norm N(x): the sum of squared coefficients, which equals the real
    /// part of `x * conj(x)` (see [`CdElement::norm_via_conjugate`]).
    pub fn norm(&self) -> Rational {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Computes `x * conj(x)` and returns its real part, provided the product
    /// is purely real; returns `None` if any imaginary coefficient survives.
    /// Independent route to [`CdElement::norm`].
    pub fn norm_via_conjugate(&self) -> Option<Rational> {
        let prod = self
            .multiply(&self.conjugate())
            .expect("same level by construction");
        if prod.coeffs.iter().skip(1).all(Rational::is_zero) {
            Some(prod.coeffs[0].clone())
        } else {
            None
        }
    }

    /// The multiplicative inverse conj(x) / N(x).  Defined for nonzero
    /// elements up to the octonions; sedenions are rejected because zero
    /// divisors make the inverse non-total.
    pub fn inverse(&self) -> Result<CdElement, CdError> {
        if self.level >= 4 {
            return Err(CdError::InverseUndefinedAtLevel { level: self.level });
        }
        if self.is_zero() {
            return Err(CdError::ZeroInverse);
        }
        let n = self.norm();
        Ok(self.conjugate().scale(&n.recip()))
    }
}

impl fmt::Display for CdElement {
    /// Human-readable form like `1/2 - 2*e3 + e5`; the zero element prints
    /// as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if wrote {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            } else if negative {
                write!(f, "-")?;
            }
            if i == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "e{i}")?;
            } else {
                write!(f, "{abs}*e{i}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Recursive doubling product on coefficient slices.
fn mul_slices(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    if x.len() == 1 {
        return vec![&x[0] * &y[0]];
    }
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    // (a, b)(c, d) = (a*c - conj(d)*b, d*a + b*conj(c))
    let ac = mul_slices(a, c);
    let db = mul_slices(&conj_slice(d), b);
    let da = mul_slices(d, a);
    let bc = mul_slices(b, &conj_slice(c));
    let mut out = Vec::with_capacity(x.len());
    for (p, q) in ac.iter().zip(&db) {
        out.push(p - q);
    }
    for (p, q) in da.iter().zip(&bc) {
        out.push(p + q);
    }
    out
}

fn conj_slice(x: &[Rational]) -> Vec<Rational> {
    let mut out = x.to_vec();
    for c in out.iter_mut().skip(1) {
        *c = -&*c;
    }
    out
}

/// A basis unit with a sign: `sign * e_index`, sign +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedUnit {
    pub sign: i8,
    pub index: usize,
}

impl SignedUnit {
    pub fn new(sign: i8, index: usize) -> Self {
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        SignedUnit { sign, index }
    }

    pub fn negate(self) -> Self {
        SignedUnit {
            sign: -self.sign,
            index: self.index,
        }
    }
}

impl fmt::Display for SignedUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}e{}", if self.sign < 0 { "-" } else { "+" }, self.index)
    }
}

/// The full basis multiplication table of a level: every product of basis
/// units is again a signed basis unit, so the table is dim x dim signed
/// indices.  Built by actually multiplying unit elements — never written
/// down by hand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitTable {
    level: usize,
    dim: usize,
    entries: Vec<SignedUnit>,
}

impl UnitTable {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The signed unit equal to `e_i * e_j`.
    pub fn product(&self, i: usize, j: usize) -> SignedUnit {
        assert!(i < self.dim && j < self.dim, "unit index out of range");
        self.entries[i * self.dim + j]
    }

    /// Builds a table directly from entries.  Internal/advanced use: entries
    /// must describe each product `e_i * e_j` as `entries[i * dim + j]`.
    pub fn from_entries(level: usize, dim: usize, entries: Vec<SignedUnit>) -> Self {
        assert_eq!(entries.len(), dim * dim);
        UnitTable {
            level,
            dim,
            entries,
        }
    }

    /// Structural sanity of an algebra table: e_0 is a two-sided identity,
    /// every other unit squares to -e_0, distinct imaginary units
    /// anticommute, and their product is a third distinct imaginary unit.
    pub fn validate_structure(&self) -> Result<(), String> {
        for i in 0..self.dim {
            if self.product(0, i) != SignedUnit::new(1, i) {
                return Err(format!("e0 * e{i} is not e{i}"));
            }
            if self.product(i, 0) != SignedUnit::new(1, i) {
                return Err(format!("e{i} * e0 is not e{i}"));
            }
        }
        for i in 1..self.dim {
            if self.product(i, i) != SignedUnit::new(-1, 0) {
                return Err(format!("e{i}^2 is not -e0"));
            }
            for j in 1..self.dim {
                if i == j {
                    continue;
                }
                let ij = self.product(i, j);
                let ji = self.product(j, i);
                if ij != ji.negate() {
                    return Err(format!("e{i} and e{j} do not anticommute"));
                }
                if ij.index == 0 || ij.index == i || ij.index == j {
                    return Err(format!("e{i} * e{j} lands on e{}", ij.index));
                }
            }
        }
        Ok(())
    }

    /// Multiplies two vectors of polynomial coordinates through this table:
    /// component k of the product collects `sign * a_i * b_j` over every pair
    /// with `e_i * e_j = sign * e_k`.
    pub fn symbolic_product(&self, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
        assert_eq!(a.len(), self.dim, "left operand has wrong arity");
        assert_eq!(b.len(), self.dim, "right operand has wrong arity");
        let mut out = vec![Poly::zero(); self.dim];
        for i in 0..self.dim {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if b[j].is_zero() {
                    continue;
                }
                let u = self.product(i, j);
                let term = &a[i] * &b[j];
                out[u.index] = if u.sign > 0 {
                    &out[u.index] + &term
                } else {
                    &out[u.index] - &term
                };
            }
        }
        out
    }
}

/// Computes the basis multiplication table of a level by multiplying the
/// unit elements pairwise with exact arithmetic.
pub fn unit_table(level: usize) -> Result<UnitTable, CdError> {
    check_level(level)?;
    let dim = 1usize << level;
    let units: Vec<CdElement> = (0..dim)
        .map(|i| CdElement::unit(level, i).expect("index in range"))
        .collect();
    let mut entries = Vec::with_capacity(dim * dim);
    for a in &units {
        for b in &units {
            let prod = a.multiply(b).expect("same level");
            let mut found: Option<SignedUnit> = None;
            for (k, c) in prod.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                assert!(
                    found.is_none(),
                    "basis product is not a signed unit at level {level}"
                );
                let sign = if c == &Rational::one() {
                    1
                } else if c == &(-Rational::one()) {
                    -1
                } else {
                    panic!("basis product has non-unit coefficient {c}")
                };
                found = Some(SignedUnit::new(sign, k));
            }
            entries.push(found.expect("basis product is nonzero"));
        }
    }
    Ok(UnitTable {
        level,
        dim,
        entries,
    })
}

/// The algebraic laws a level can be probed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraLaw {
    /// x*y = y*x
    Commutative,
    /// (x*y)*z = x*(y*z)
    Associative,
    /// x*(x*y) = (x*x)*y and (y*x)*x = y*(x*x)
    Alternative,
    /// x*(y*x) = (x*y)*x
    Flexible,
    /// The three Moufang identities.
    Moufang,
    /// N(x*y) = N(x)*N(y)
    NormComposing,
}

impl AlgebraLaw {
    pub const ALL: [AlgebraLaw; 6] = [
        AlgebraLaw::Commutative,
        AlgebraLaw::Associative,
        AlgebraLaw::Alternative,
        AlgebraLaw::Flexible,
        AlgebraLaw::Moufang,
        AlgebraLaw::NormComposing,
    ];
}

impl fmt::Display for AlgebraLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            AlgebraLaw::Commutative => "commutative",
            AlgebraLaw::Associative => "associative",
            AlgebraLaw::Alternative => "alternative",
            AlgebraLaw::Flexible => "flexible",
            AlgebraLaw::Moufang => "moufang",
            AlgebraLaw::NormComposing => "norm-composing",
        };
        write!(f, "{name}")
    }
}

/// A concrete violation of a law: the elements to plug back in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Counterexample {
    Pair(CdElement, CdElement),
    Triple(CdElement, CdElement, CdElement),
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::Pair(x, y) => write!(f, "x = {x}, y = {y}"),
            Counterexample::Triple(x, y, z) => write!(f, "x = {x}, y = {y}, z = {z}"),
        }
    }
}

/// Outcome of [`probe_law`]: whether the law holds at the level, plus a
/// re-checkable counterexample when it does not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub law: AlgebraLaw,
    pub level: usize,
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
    pub trials: u32,
    pub seed: u64,
}

impl LawReport {
    /// Re-derives the verdict from the stored counterexample with fresh
    /// exact arithmetic: true when the report is internally consistent
    /// (holds with no counterexample, or fails with a genuine violation).
    pub fn recheck(&self) -> bool {
        match (&self.holds, &self.counterexample) {
            (true, None) => true,
            (true, Some(_)) => false,
            (false, None) => false,
            (false, Some(ce)) => violates_law(self.law, ce),
        }
    }
}

/// True when the elements genuinely violate the law, by direct evaluation.
fn violates_law(law: AlgebraLaw, ce: &Counterexample) -> bool {
    let mul = |a: &CdElement, b: &CdElement| a.multiply(b).expect("levels agree");
    match (law, ce) {
        (AlgebraLaw::Commutative, Counterexample::Pair(x, y)) => mul(x, y) != mul(y, x),
        (AlgebraLaw::Associative, Counterexample::Triple(x, y, z)) => {
            mul(&mul(x, y), z) != mul(x, &mul(y, z))
        }
        (AlgebraLaw::Alternative, Counterexample::Pair(x, y)) => {
            mul(x, &mul(x, y)) != mul(&mul(x, x), y) || mul(&mul(y, x), x) != mul(y, &mul(x, x))
        }
        (AlgebraLaw::Flexible, Counterexample::Pair(x, y)) => {
            mul(x, &mul(y, x)) != mul(&mul(x, y), x)
        }
        (AlgebraLaw::Moufang, Counterexample::Triple(x, y, z)) => {
            let m1 = mul(z, &mul(x, &mul(z, y))) != mul(&mul(&mul(z, x), z), y);
            let m2 = mul(x, &mul(z, &mul(y, z))) != mul(&mul(&mul(x, z), y), z);
            let m3 = mul(&mul(z, x), &mul(y, z)) != mul(z, &mul(&mul(x, y), z));
            m1 || m2 || m3
        }
        (AlgebraLaw::NormComposing, Counterexample::Pair(x, y)) => {
            mul(x, y).norm() != x.norm() * y.norm()
        }
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// Exhaustive basis passes on the signed-unit table.
//
// Working with (sign, index) pairs instead of full coefficient vectors makes
// the sweeps over all basis tuples (16^4 at the sedenion level) integer-cheap
// while staying exact.
// ---------------------------------------------------------------------------

/// A formal sum of signed units, not normalized.
type Combo = Vec<SignedUnit>;

fn combo_mul(t: &UnitTable, a: &[SignedUnit], b: &[SignedUnit]) -> Combo {
    let mut out = Combo::with_capacity(a.len() * b.len());
    for u in a {
        for v in b {
            let p = t.product(u.index, v.index);
            out.push(SignedUnit {
                sign: u.sign * v.sign * p.sign,
                index: p.index,
            });
        }
    }
    out
}

fn combo_cancels(dim: usize, parts: &[&[SignedUnit]]) -> bool {
    let mut acc = vec![0i64; dim];
    for part in parts {
        for u in *part {
            acc[u.index] += u.sign as i64;
        }
    }
    acc.iter().all(|&c| c == 0)
}

/// `sum_of_signed_units` as a genuine element, for counterexample reporting.
fn combo_element(level: usize, combo: &[SignedUnit]) -> CdElement {
    let mut e = CdElement::zero(level).expect("level checked");
    for u in combo {
        let unit = CdElement::unit(level, u.index).expect("index in range");
        e = if u.sign > 0 { e.add(&unit) } else { e.sub(&unit) };
    }
    e
}

fn units(i: usize) -> Combo {
    vec![SignedUnit::new(1, i)]
}

fn unit_pair(i: usize, j: usize) -> Combo {
    vec![SignedUnit::new(1, i), SignedUnit::new(1, j)]
}

/// The associator [x, y, z] = (xy)z - x(yz) on combos: returns the formal
/// difference as two slices to cancel.
fn associator(t: &UnitTable, x: &[SignedUnit], y: &[SignedUnit], z: &[SignedUnit]) -> (Combo, Combo) {
    let left = combo_mul(t, &combo_mul(t, x, y), z);
    let right = combo_mul(t, x, &combo_mul(t, y, z));
    (left, right)
}

fn associator_vanishes(t: &UnitTable, x: &[SignedUnit], y: &[SignedUnit], z: &[SignedUnit]) -> bool {
    let (l, r) = associator(t, x, y, z);
    let neg: Combo = r.iter().map(|u| u.negate()).collect();
    combo_cancels(t.dim(), &[&l, &neg])
}

fn exhaustive_commutative(t: &UnitTable) -> Option<Counterexample> {
    let level = t.level();
    for i in 0..t.dim() {
        for j in (i + 1)..t.dim() {
            if t.product(i, j) != t.product(j, i) {
                return Some(Counterexample::Pair(
                    combo_element(level, &units(i)),
                    combo_element(level, &units(j)),
                ));
            }
        }
    }
    None
}

fn exhaustive_associative(t: &UnitTable) -> Option<Counterexample> {
    let level = t.level();
    for i in 0..t.dim() {
        for j in 0..t.dim() {
            for k in 0..t.dim() {
                if !associator_vanishes(t, &units(i), &units(j), &units(k)) {
                    return Some(Counterexample::Triple(
                        combo_element(level, &units(i)),
                        combo_element(level, &units(j)),
                        combo_element(level, &units(k)),
                    ));
                }
            }
        }
    }
    None
}

fn exhaustive_alternative(t: &UnitTable) -> Option<Counterexample> {
    let level = t.level();
    let dim = t.dim();
    // Direct pass: x, y single units.
    for i in 0..dim {
        for j in 0..dim {
            if !associator_vanishes(t, &units(i), &units(i), &units(j))
                || !associator_vanishes(t, &units(j), &units(i), &units(i))
            {
                return Some(Counterexample::Pair(
                    combo_element(level, &units(i)),
                    combo_element(level, &units(j)),
                ));
            }
        }
    }
    // Polarized pass: decisive because the direct pass cleared the diagonal
    // associators.  Left: [ei,ej,ek] + [ej,ei,ek] = 0; right likewise.
    for i in 0..dim {
        for j in (i + 1)..dim {
            for k in 0..dim {
                let (l1, r1) = associator(t, &units(i), &units(j), &units(k));
                let (l2, r2) = associator(t, &units(j), &units(i), &units(k));
                let n1: Combo = r1.iter().map(|u| u.negate()).collect();
                let n2: Combo = r2.iter().map(|u| u.negate()).collect();
                if !combo_cancels(dim, &[&l1, &n1, &l2, &n2]) {
                    return Some(Counterexample::Pair(
                        combo_element(level, &unit_pair(i, j)),
                        combo_element(level, &units(k)),
                    ));
                }
                let (l3, r3) = associator(t, &units(k), &units(i), &units(j));
                let (l4, r4) = associator(t, &units(k), &units(j), &units(i));
                let n3: Combo = r3.iter().map(|u| u.negate()).collect();
                let n4: Combo = r4.iter().map(|u| u.negate()).collect();
                if !combo_cancels(dim, &[&l3, &n3, &l4, &n4]) {
                    return Some(Counterexample::Pair(
                        combo_element(level, &unit_pair(i, j)),
                        combo_element(level, &units(k)),
                    ));
                }
            }
        }
    }
    None
}

fn exhaustive_flexible(t: &UnitTable) -> Option<Counterexample> {
    let level = t.level();
    let dim = t.dim();
    // Direct pass: [ei, ej, ei] = 0.
    for i in 0..dim {
        for j in 0..dim {
            if !associator_vanishes(t, &units(i), &units(j), &units(i)) {
                return Some(Counterexample::Pair(
                    combo_element(level, &units(i)),
                    combo_element(level, &units(j)),
                ));
            }
        }
    }
    // Polarized pass in the squared slot: [ei,ek,ej] + [ej,ek,ei] = 0.
    for i in 0..dim {
        for j in (i + 1)..dim {
            for k in 0..dim {
                let (l1, r1) = associator(t, &units(i), &units(k), &units(j));
                let (l2, r2) = associator(t, &units(j), &units(k), &units(i));
                let n1: Combo = r1.iter().map(|u| u.negate()).collect();
                let n2: Combo = r2.iter().map(|u| u.negate()).collect();
                if !combo_cancels(dim, &[&l1, &n1, &l2, &n2]) {
                    return Some(Counterexample::Pair(
                        combo_element(level, &unit_pair(i, j)),
                        combo_element(level, &units(k)),
                    ));
                }
            }
        }
    }
    None
}

/// The two sides of the three Moufang identities on combos.
fn moufang_sides(
    t: &UnitTable,
    x: &[SignedUnit],
    y: &[SignedUnit],
    z1: &[SignedUnit],
    z2: &[SignedUnit],
) -> [(Combo, Combo); 3] {
    // Each identity is quadratic in z; evaluating with the two z-slots split
    // as z1 and z2 gives the polarized form (summed over both orders by the
    // caller).
    let m1l = combo_mul(t, z1, &combo_mul(t, x, &combo_mul(t, z2, y)));
    let m1r = combo_mul(t, &combo_mul(t, &combo_mul(t, z1, x), z2), y);
    let m2l = combo_mul(t, x, &combo_mul(t, z1, &combo_mul(t, y, z2)));
    let m2r = combo_mul(t, &combo_mul(t, &combo_mul(t, x, z1), y), z2);
    let m3l = combo_mul(t, &combo_mul(t, z1, x), &combo_mul(t, y, z2));
    let m3r = combo_mul(t, z1, &combo_mul(t, &combo_mul(t, x, y), z2));
    [(m1l, m1r), (m2l, m2r), (m3l, m3r)]
}

fn exhaustive_moufang(t: &UnitTable) -> Option<Counterexample> {
    let level = t.level();
    let dim = t.dim();
    // Direct pass: x, y, z single units.
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let zs = units(k);
                let sides = moufang_sides(t, &units(i), &units(j), &zs, &zs);
                for (l, r) in &sides {
                    let n: Combo = r.iter().map(|u| u.negate()).collect();
                    if !combo_cancels(dim, &[l, &n]) {
                        return Some(Counterexample::Triple(
                            combo_element(level, &units(i)),
                            combo_element(level, &units(j)),
                            combo_element(level, &units(k)),
                        ));
                    }
                }
            }
        }
    }
    // Polarized pass over the quadratic slot: z = e_k1 + e_k2.
    for k1 in 0..dim {
        for k2 in (k1 + 1)..dim {
            for i in 0..dim {
                for j in 0..dim {
                    let (z1, z2) = (units(k1), units(k2));
                    let a = moufang_sides(t, &units(i), &units(j), &z1, &z2);
                    let b = moufang_sides(t, &units(i), &units(j), &z2, &z1);
                    for ((l1, r1), (l2, r2)) in a.iter().zip(&b) {
                        let n1: Combo = r1.iter().map(|u| u.negate()).collect();
                        let n2: Combo = r2.iter().map(|u| u.negate()).collect();
                        if !combo_cancels(dim, &[l1, &n1, l2, &n2]) {
                            return Some(Counterexample::Triple(
                                combo_element(level, &units(i)),
                                combo_element(level, &units(j)),
                                combo_element(level, &unit_pair(k1, k2)),
                            ));
                        }
                    }
                }
            }
        }
    }
    None
}

fn dot_signed(a: SignedUnit, b: SignedUnit) -> i64 {
    if a.index == b.index {
        (a.sign * b.sign) as i64
    } else {
        0
    }
}

fn exhaustive_norm_composing(t: &UnitTable) -> Option<Counterexample> {
    let level = t.level();
    let dim = t.dim();
    // Direct pass over basis-sum pairs (e_i ± e_j, e_k ± e_l): cheap, exact,
    // and the natural shape for a counterexample.
    for i in 0..dim {
        for j in (i + 1)..dim {
            for s in [1i8, -1] {
                for k in 0..dim {
                    for l in (k + 1)..dim {
                        for u in [1i8, -1] {
                            let x = vec![SignedUnit::new(1, i), SignedUnit::new(s, j)];
                            let y = vec![SignedUnit::new(1, k), SignedUnit::new(u, l)];
                            let prod = combo_mul(t, &x, &y);
                            let mut acc = vec![0i64; dim];
                            for unit in &prod {
                                acc[unit.index] += unit.sign as i64;
                            }
                            let norm: i64 = acc.iter().map(|c| c * c).sum();
                            if norm != 4 {
                                return Some(Counterexample::Pair(
                                    combo_element(level, &x),
                                    combo_element(level, &y),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    // Polarized pass, decisive: N(xy) - N(x)N(y) is the zero polynomial iff
    // for all i <= j, k <= l the polarized orthogonality conditions hold.
    for i in 0..dim {
        for j in i..dim {
            for k in 0..dim {
                for l in k..dim {
                    let ik = t.product(i, k);
                    let jl = t.product(j, l);
                    let il = t.product(i, l);
                    let jk = t.product(j, k);
                    let ok = if i == j && k == l {
                        dot_signed(ik, ik) == 1
                    } else if i == j {
                        dot_signed(ik, il) == 0
                    } else if k == l {
                        dot_signed(ik, jk) == 0
                    } else {
                        dot_signed(ik, jl) + dot_signed(il, jk) == 0
                    };
                    if !ok {
                        // The direct pass should already have produced a
                        // witness; construct one from this condition anyway.
                        return Some(norm_witness_from_condition(t, i, j, k, l));
                    }
                }
            }
        }
    }
    None
}

/// Builds a concrete norm-composition violation out of a failed polarized
/// condition at (i, j, k, l) by trying the finitely many sign choices; one of
/// them must violate, and the result is verified before being returned.
fn norm_witness_from_condition(
    t: &UnitTable,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
) -> Counterexample {
    let level = t.level();
    let mut candidates: Vec<(Combo, Combo)> = Vec::new();
    for s in [1i8, -1] {
        for u in [1i8, -1] {
            let x = if i == j {
                units(i)
            } else {
                vec![SignedUnit::new(1, i), SignedUnit::new(s, j)]
            };
            let y = if k == l {
                units(k)
            } else {
                vec![SignedUnit::new(1, k), SignedUnit::new(u, l)]
            };
            candidates.push((x, y));
        }
    }
    for (x, y) in candidates {
        let xe = combo_element(level, &x);
        let ye = combo_element(level, &y);
        let prod = xe.multiply(&ye).expect("same level");
        if prod.norm() != xe.norm() * ye.norm() {
            return Counterexample::Pair(xe, ye);
        }
    }
    unreachable!("a failed polarized condition always yields a sign choice that violates");
}

fn exhaustive_counterexample(t: &UnitTable, law: AlgebraLaw) -> Option<Counterexample> {
    match law {
        AlgebraLaw::Commutative => exhaustive_commutative(t),
        AlgebraLaw::Associative => exhaustive_associative(t),
        AlgebraLaw::Alternative => exhaustive_alternative(t),
        AlgebraLaw::Flexible => exhaustive_flexible(t),
        AlgebraLaw::Moufang => exhaustive_moufang(t),
        AlgebraLaw::NormComposing => exhaustive_norm_composing(t),
    }
}

/// A random element with small rational coefficients.
fn random_element(level: usize, rng: &mut ChaCha8Rng) -> CdElement {
    let dim = 1usize << level;
    let coeffs = (0..dim)
        .map(|_| {
            let num: i64 = rng.gen_range(-9..=9);
            let den: i64 = rng.gen_range(1..=4);
            Rational::new(num.into(), den.into())
        })
        .collect();
    CdElement::new(level, coeffs).expect("dimension matches level")
}

/// Probes one algebraic law at one level.
///
/// The verdict comes from an exhaustive pass over basis tuples (polarized
/// where the law is not multilinear, hence decisive over the rationals);
/// `trials` seeded random-element evaluations then re-confirm it with full
/// exact arithmetic.  When the law fails, the report carries the first
/// counterexample in scan order, re-checkable via [`LawReport::recheck`].
pub fn probe_law(
    level: usize,
    law: AlgebraLaw,
    trials: u32,
    seed: u64,
) -> Result<LawReport, CdError> {
    check_level(level)?;
    if trials == 0 {
        return Err(CdError::NoTrials);
    }
    let table = unit_table(level)?;
    let mut counterexample = exhaustive_counterexample(&table, law);
    if counterexample.is_none() {
        // Confirmation trials; with the exhaustive pass clean these cannot
        // fail unless the implementation itself is inconsistent, in which
        // case honesty demands we report the violation.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let candidate = match law {
                AlgebraLaw::Associative | AlgebraLaw::Moufang => Counterexample::Triple(
                    random_element(level, &mut rng),
                    random_element(level, &mut rng),
                    random_element(level, &mut rng),
                ),
                _ => Counterexample::Pair(
                    random_element(level, &mut rng),
                    random_element(level, &mut rng),
                ),
            };
            if violates_law(law, &candidate) {
                counterexample = Some(candidate);
                break;
            }
        }
    }
    let report = LawReport {
        law,
        level,
        holds: counterexample.is_none(),
        counterexample,
        trials,
        seed,
    };
    debug_assert!(report.recheck(), "law report fails its own recheck");
    Ok(report)
}

/// Searches for a pair of nonzero elements whose product is exactly zero,
/// scanning the signed basis-sum pairs (e_i ± e_j)(e_k ± e_l) in
/// lexicographic order.  Levels up to 3 are composition algebras and yield
/// none; level 4 always yields a pair, verified exactly before returning.
pub fn find_zero_divisors(level: usize) -> Result<Option<(CdElement, CdElement)>, CdError> {
    check_level(level)?;
    let t = unit_table(level)?;
    let dim = t.dim();
    for i in 0..dim {
        for j in (i + 1)..dim {
            for s in [1i8, -1] {
                for k in 0..dim {
                    for l in (k + 1)..dim {
                        for u in [1i8, -1] {
                            let x = vec![SignedUnit::new(1, i), SignedUnit::new(s, j)];
                            let y = vec![SignedUnit::new(1, k), SignedUnit::new(u, l)];
                            let prod = combo_mul(&t, &x, &y);
                            if combo_cancels(dim, &[&prod]) {
                                let xe = combo_element(level, &x);
                                let ye = combo_element(level, &y);
                                let check = xe.multiply(&ye).expect("same level");
                                assert!(check.is_zero(), "combo arithmetic disagrees");
                                assert!(!xe.is_zero() && !ye.is_zero());
                                return Ok(Some((xe, ye)));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}
