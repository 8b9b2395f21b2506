//! Sparse multivariate polynomials with exact integer coefficients.
//!
//! * Monomials are sorted exponent lists; polynomials are monomial → coefficient
//!   maps with no explicit zero terms, so structural equality is semantic
//!   equality and `is_zero` is a length check.
//! * Terms are ordered graded-lexicographically (total degree first, then
//!   lexicographic with earlier variable ids weighing more), which fixes both
//!   printing and iteration order.
//! * Variable ids are plain `usize`; human names live in a separate
//!   [`VarRegistry`] so the arithmetic core stays name-free.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Index of a variable; display names are looked up in a [`VarRegistry`].
pub type VarId = usize;

/// A power product of variables, e.g. `x0^2 * x3`.
///
/// Invariant: exponent pairs are sorted by variable id and strictly positive.
/// The empty product is the monomial `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<(VarId, u32)>,
}

impl Monomial {
    /// The constant monomial `1`.
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    /// The monomial consisting of a single variable to the first power.
    pub fn var(v: VarId) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    /// Builds a monomial from arbitrary (variable, exponent) pairs: pairs are
    /// merged, sorted, and zero exponents dropped.
    pub fn from_exponents<I: IntoIterator<Item = (VarId, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial {
            exps: map.into_iter().collect(),
        }
    }

    /// The sorted (variable, exponent) pairs of this monomial.
    pub fn exponents(&self) -> &[(VarId, u32)] {
        &self.exps
    }

    /// Exponent of variable `v` (zero when absent).
    pub fn degree_of(&self, v: VarId) -> u32 {
        self.exps
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// Sum of all exponents.
    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|(_, e)| *e).sum()
    }

    /// Product of two monomials (exponents add).
    pub fn mul(&self, other: &Self) -> Self {
        let mut out: Vec<(VarId, u32)> = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (va, ea) = self.exps[i];
            let (vb, eb) = other.exps[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    out.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((vb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        Monomial { exps: out }
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order: compare total degree first; ties are broken
    /// lexicographically with smaller variable ids weighing more (so with
    /// equal degrees, the monomial with the higher power of the earliest
    /// differing variable is the larger one).
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.exps.get(i), other.exps.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    // `self` has a power of an earlier variable that `other`
                    // lacks, so `self` is lexicographically larger.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse multivariate polynomial with exact `BigInt` coefficients.
///
/// Invariant: no stored coefficient is zero, so `PartialEq` is semantic
/// equality and the zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Poly::default()
    }

    /// A constant polynomial.
    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c.into());
        p
    }

    /// The polynomial consisting of the single variable `v`.
    pub fn var(v: VarId) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(v), BigInt::one());
        p
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, combining
    /// duplicates and dropping zero results.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `coeff * mono` into this polynomial, keeping the no-zero-terms
    /// invariant.
    pub fn add_term(&mut self, mono: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of (nonzero) terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest total degree among terms; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// Terms in descending graded-lexicographic order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    /// Leading term in graded-lexicographic order, if any.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    /// Small non-negative integer power by repeated multiplication.
    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation: `vals[v]` substitutes variable `v`.  Variables with
    /// ids beyond `vals` evaluate as zero.
    pub fn eval(&self, vals: &[BigInt]) -> BigInt {
        let mut sum = BigInt::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(v, e) in m.exponents() {
                let base = vals.get(v).cloned().unwrap_or_else(BigInt::zero);
                term *= num_traits::pow::pow(base, e as usize);
            }
            sum += term;
        }
        sum
    }

    /// Substitutes every variable `v` by `sign * new_v` where
    /// `f(v) = (sign, new_v)` and `sign` is `+1` or `-1`.
    pub fn rename_vars_signed<F: Fn(VarId) -> (i8, VarId)>(&self, f: F) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut pairs = Vec::with_capacity(m.exponents().len());
            for &(v, e) in m.exponents() {
                let (sign, w) = f(v);
                debug_assert!(sign == 1 || sign == -1);
                if sign < 0 && e % 2 == 1 {
                    coeff = -coeff;
                }
                pairs.push((w, e));
            }
            out.add_term(Monomial::from_exponents(pairs), coeff);
        }
        out
    }

    /// Renders with the registry's variable names; terms appear in descending
    /// graded-lexicographic order with explicit `^` exponents.
    pub fn render(&self, names: &VarRegistry) -> String {
        self.render_with(|v| {
            names
                .name(v)
                .map(str::to_owned)
                .unwrap_or_else(|| format!("x{v}"))
        })
    }

    /// Renders with caller-supplied variable names.
    pub fn render_with<F: Fn(VarId) -> String>(&self, name: F) -> String {
        if self.is_zero() {
            return "0".to_owned();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.exponents().is_empty() {
                factors.push(abs.to_string());
            }
            for &(v, e) in m.exponents() {
                if e == 1 {
                    factors.push(name(v));
                } else {
                    factors.push(format!("{}^{}", name(v), e));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_with(|v| format!("x{v}")))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

/// Human-readable names for variable ids, kept apart from the arithmetic.
#[derive(Clone, Debug, Default)]
pub struct VarRegistry {
    names: Vec<String>,
}

impl VarRegistry {
    pub fn new() -> Self {
        VarRegistry::default()
    }

    /// Registers a name and returns its id; re-registering an existing name
    /// returns the original id.
    pub fn add(&mut self, name: &str) -> VarId {
        if let Some(id) = self.names.iter().position(|n| n == name) {
            return id;
        }
        self.names.push(name.to_owned());
        self.names.len() - 1
    }

    /// The name registered for `id`, if any.
    pub fn name(&self, id: VarId) -> Option<&str> {
        self.names.get(id).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}
