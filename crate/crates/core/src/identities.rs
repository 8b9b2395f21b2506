//! N-square identities: exact bilinear forms z_1..z_n with
//!
//! ```text
//! (a1^2 + ... + an^2)(b1^2 + ... + bn^2) = z_1^2 + ... + z_n^2
//! ```
//!
//! The forms are never written down by hand: they are read off a basis
//! multiplication table as the coordinates of the product
//! `(sum a_i e_i)(sum b_j e_j)`, and the identity is then proved by
//! expanding both sides over the 2n indeterminates and checking that the
//! residual is the zero polynomial.  This works exactly for n = 1, 2, 4, 8
//! (any valid table of that size), and [`norm_residual`] exhibits the
//! nonzero residual that blocks n = 16.
//!
//! Variable convention: `a{i}` is variable id `i - 1`, `b{j}` is variable
//! id `n + j - 1`.

use crate::cayley_dickson::UnitTable;
use crate::symbolic::Poly;
use num_bigint::BigInt;
use std::fmt;

/// Errors for identity derivation and emission.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityError {
    /// Only n = 1, 2, 4, 8 admit an n-square identity of this shape.
    UnsupportedSize { n: usize },
    /// The source table's dimension does not match n.
    WrongTableSize { expected: usize, got: usize },
    /// The source table fails basic structural checks.
    InvalidSourceTable { reason: String },
    /// Emission is refused while the residual is nonzero.
    NotVerified,
    /// A bilinear form that is not a signed sum of a_i b_j terms.
    MalformedForm { reason: String },
}

impl fmt::Display for IdentityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityError::UnsupportedSize { n } => {
                write!(f, "no n-square identity is derived for n = {n}; use 1, 2, 4, or 8")
            }
            IdentityError::WrongTableSize { expected, got } => {
                write!(f, "need a table of dimension {expected}, got {got}")
            }
            IdentityError::InvalidSourceTable { reason } => {
                write!(f, "invalid source table: {reason}")
            }
            IdentityError::NotVerified => {
                write!(f, "identity does not verify: the residual is nonzero")
            }
            IdentityError::MalformedForm { reason } => write!(f, "malformed form: {reason}"),
        }
    }
}

impl std::error::Error for IdentityError {}

/// An n-square identity: the n bilinear forms plus the expanded residual
/// `sum z_k^2 - (sum a_i^2)(sum b_j^2)`, which is zero exactly when the
/// identity holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NSquareIdentity {
    n: usize,
    forms: Vec<Poly>,
    residual: Poly,
}

/// One signed product term `sign * a_i * b_j` (indices 1-based).
type FormTerm = (i8, usize, usize);

impl NSquareIdentity {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn forms(&self) -> &[Poly] {
        &self.forms
    }

    pub fn residual(&self) -> &Poly {
        &self.residual
    }

    pub fn is_verified(&self) -> bool {
        self.residual.is_zero()
    }

    /// The terms of form k as (sign, a-index, b-index) triples, 1-based,
    /// ordered by b-index (then a-index).
    pub fn form_terms(&self, k: usize) -> Result<Vec<FormTerm>, IdentityError> {
        let poly = &self.forms[k];
        let mut terms = Vec::new();
        for (monomial, coeff) in poly.terms() {
            let sign = if coeff == &BigInt::from(1) {
                1i8
            } else if coeff == &BigInt::from(-1) {
                -1i8
            } else {
                return Err(IdentityError::MalformedForm {
                    reason: format!("coefficient {coeff} is not a sign"),
                });
            };
            let exps = monomial.exponents();
            let bad = || IdentityError::MalformedForm {
                reason: "term is not a_i * b_j".into(),
            };
            if exps.len() != 2 || exps[0].1 != 1 || exps[1].1 != 1 {
                return Err(bad());
            }
            let (va, vb) = (exps[0].0, exps[1].0);
            if va >= self.n || vb < self.n || vb >= 2 * self.n {
                return Err(bad());
            }
            terms.push((sign, va + 1, vb - self.n + 1));
        }
        terms.sort_by_key(|&(_, a, b)| (b, a));
        Ok(terms)
    }

    /// The identity in textbook form, e.g. for n = 2:
    ///
    /// ```text
    /// (a1^2+a2^2)(b1^2+b2^2) = (a1b1-a2b2)^2 + (a2b1+a1b2)^2
    /// ```
    ///
    /// Refuses to print an unverified identity.
    pub fn emit_text(&self) -> Result<String, IdentityError> {
        if !self.is_verified() {
            return Err(IdentityError::NotVerified);
        }
        let side = |name: &str| {
            let body: Vec<String> = (1..=self.n).map(|i| format!("{name}{i}^2")).collect();
            format!("({})", body.join("+"))
        };
        let mut out = format!("{}{} = ", side("a"), side("b"));
        for k in 0..self.n {
            if k > 0 {
                out.push_str(" + ");
            }
            out.push('(');
            for (pos, (sign, a, b)) in self.form_terms(k)?.into_iter().enumerate() {
                if sign < 0 {
                    out.push('-');
                } else if pos > 0 {
                    out.push('+');
                }
                out.push_str(&format!("a{a}b{b}"));
            }
            out.push_str(")^2");
        }
        Ok(out)
    }

    /// Compact JSON: `{"n":2,"z":[[[1,1,1],[-1,2,2]],[[1,2,1],[1,1,2]]]}` —
    /// each form a list of `[sign, a_index, b_index]` terms in the same
    /// order as the text rendering.  Refuses unverified identities.
    pub fn emit_json(&self) -> Result<String, IdentityError> {
        if !self.is_verified() {
            return Err(IdentityError::NotVerified);
        }
        let mut zs = Vec::with_capacity(self.n);
        for k in 0..self.n {
            let terms: Vec<serde_json::Value> = self
                .form_terms(k)?
                .into_iter()
                .map(|(s, a, b)| serde_json::json!([s as i64, a as i64, b as i64]))
                .collect();
            zs.push(serde_json::Value::from(terms));
        }
        Ok(serde_json::json!({ "n": self.n, "z": zs }).to_string())
    }
}

/// The polynomial `N(xy) - N(x) N(y)` expanded over indeterminate
/// coordinates through a basis table of any dimension.  Zero exactly when
/// the table's norm composes; for the level-4 (sedenion) table it is a
/// nonzero certificate that no sixteen-square identity arises this way.
pub fn norm_residual(table: &UnitTable) -> Poly {
    let n = table.dim();
    let a: Vec<Poly> = (0..n).map(Poly::var).collect();
    let b: Vec<Poly> = (n..2 * n).map(Poly::var).collect();
    let z = table.symbolic_product(&a, &b);
    let sum_sq = |ps: &[Poly]| ps.iter().fold(Poly::zero(), |acc, p| &acc + &(p * p));
    &sum_sq(&z) - &(&sum_sq(&a) * &sum_sq(&b))
}

/// Reads the n bilinear forms off a structurally valid basis table of
/// dimension n (n = 1, 2, 4, or 8) and expands the residual.
///
/// A structurally valid table that is *not* norm-composing (e.g. a
/// mis-oriented Fano table) still derives, but carries a nonzero residual:
/// [`NSquareIdentity::is_verified`] is false and emission is refused.
pub fn derive_identity(n: usize, source: &UnitTable) -> Result<NSquareIdentity, IdentityError> {
    if !matches!(n, 1 | 2 | 4 | 8) {
        return Err(IdentityError::UnsupportedSize { n });
    }
    if source.dim() != n {
        return Err(IdentityError::WrongTableSize {
            expected: n,
            got: source.dim(),
        });
    }
    source
        .validate_structure()
        .map_err(|reason| IdentityError::InvalidSourceTable { reason })?;
    let a: Vec<Poly> = (0..n).map(Poly::var).collect();
    let b: Vec<Poly> = (n..2 * n).map(Poly::var).collect();
    let forms = source.symbolic_product(&a, &b);
    let residual = norm_residual(source);
    Ok(NSquareIdentity { n, forms, residual })
}

/// Re-proves an identity from its forms alone: expands
/// `sum z_k^2 - (sum a_i^2)(sum b_j^2)` afresh and checks for zero,
/// independently of the residual stored at derivation time.
pub fn verify_identity(identity: &NSquareIdentity) -> bool {
    let n = identity.n;
    let a: Vec<Poly> = (0..n).map(Poly::var).collect();
    let b: Vec<Poly> = (n..2 * n).map(Poly::var).collect();
    let sum_sq = |ps: &[Poly]| ps.iter().fold(Poly::zero(), |acc, p| &acc + &(p * p));
    let residual = &sum_sq(identity.forms()) - &(&sum_sq(&a) * &sum_sq(&b));
    residual.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley_dickson::{probe_law, unit_table, AlgebraLaw, Counterexample, SignedUnit};
    use crate::fano_octonions::MultTable;

    #[test]
    fn one_square_identity() {
        let id = derive_identity(1, &unit_table(0).unwrap()).unwrap();
        assert!(id.is_verified());
        assert!(verify_identity(&id));
        assert_eq!(id.emit_text().unwrap(), "(a1^2)(b1^2) = (a1b1)^2");
    }

    #[test]
    fn two_square_identity_text_and_json() {
        let id = derive_identity(2, &unit_table(1).unwrap()).unwrap();
        assert!(id.is_verified());
        assert_eq!(
            id.emit_text().unwrap(),
            "(a1^2+a2^2)(b1^2+b2^2) = (a1b1-a2b2)^2 + (a2b1+a1b2)^2"
        );
        assert_eq!(
            id.emit_json().unwrap(),
            "{\"n\":2,\"z\":[[[1,1,1],[-1,2,2]],[[1,2,1],[1,1,2]]]}"
        );
    }

    #[test]
    fn four_square_identity_is_eulers() {
        let id = derive_identity(4, &unit_table(2).unwrap()).unwrap();
        assert!(id.is_verified());
        assert!(verify_identity(&id));
        assert_eq!(
            id.emit_text().unwrap(),
            "(a1^2+a2^2+a3^2+a4^2)(b1^2+b2^2+b3^2+b4^2) = \
             (a1b1-a2b2-a3b3-a4b4)^2 + (a2b1+a1b2-a4b3+a3b4)^2 + \
             (a3b1+a4b2+a1b3-a2b4)^2 + (a4b1-a3b2+a2b3+a1b4)^2"
        );
    }

    #[test]
    fn eight_square_identities_from_both_sources() {
        let from_doubling = derive_identity(8, &unit_table(3).unwrap()).unwrap();
        let from_fano = derive_identity(8, &MultTable::classic().to_unit_table()).unwrap();
        assert!(from_doubling.is_verified());
        assert!(from_fano.is_verified());
        assert!(verify_identity(&from_doubling));
        assert!(verify_identity(&from_fano));
        // Different codings, different-looking forms.
        assert_ne!(
            from_doubling.emit_text().unwrap(),
            from_fano.emit_text().unwrap()
        );
        // Every form distributes each b-index exactly once with sign +/-1.
        for id in [&from_doubling, &from_fano] {
            for k in 0..8 {
                let terms = id.form_terms(k).unwrap();
                assert_eq!(terms.len(), 8);
                let bs: Vec<usize> = terms.iter().map(|&(_, _, b)| b).collect();
                assert_eq!(bs, (1..=8).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn eight_square_sources_agree_through_the_isomorphism() {
        // find_isomorphism gives phi(e_i) = s_i f_{pi(i)}; transporting
        // coordinates, the Fano forms must equal the doubling forms up to
        // the same signed permutation: z_f[k] = s_k * z_cd[pi(k)](a', b')
        // with a'_m = s_{inv(m)} a_{inv(m)}.
        use crate::fano_octonions::find_isomorphism;
        let table = MultTable::classic();
        let map = find_isomorphism(&table).unwrap().expect("octonion table");
        let id_fano = derive_identity(8, &table.to_unit_table()).unwrap();
        let id_cd = derive_identity(8, &unit_table(3).unwrap()).unwrap();
        let mut inv = [0usize; 8];
        for i in 0..8 {
            inv[map.images[i].index] = i;
        }
        for k in 0..8 {
            let pi_k = map.images[k].index;
            let transported = id_cd.forms()[pi_k].rename_vars_signed(|v| {
                let (m, base) = if v < 8 { (v, 0) } else { (v - 8, 8) };
                let source = inv[m];
                (map.images[source].sign, base + source)
            });
            let expected = transported.scale(&BigInt::from(map.images[k].sign));
            assert_eq!(
                id_fano.forms()[k], expected,
                "form {k} does not transport through the isomorphism"
            );
        }
    }

    #[test]
    fn sixteen_square_residual_is_nonzero() {
        let residual = norm_residual(&unit_table(4).unwrap());
        assert!(!residual.is_zero());
        // Numeric shadow: the residual evaluates nonzero at the norm
        // counterexample the law probe returns.
        let report = probe_law(4, AlgebraLaw::NormComposing, 1, 0).unwrap();
        let (x, y) = match report.counterexample {
            Some(Counterexample::Pair(x, y)) => (x, y),
            _ => panic!("expected a pair"),
        };
        let mut vals = Vec::with_capacity(32);
        for c in x.coeffs().iter().chain(y.coeffs()) {
            assert!(c.is_integer());
            vals.push(c.to_integer());
        }
        let value = residual.eval(&vals);
        assert_ne!(value, BigInt::from(0));
        // And it equals N(xy) - N(x)N(y) for that pair.
        let direct = x.multiply(&y).unwrap().norm() - x.norm() * y.norm();
        assert_eq!(crate::Rational::from_integer(value), direct);
    }

    #[test]
    fn unsupported_sizes_are_rejected() {
        assert!(matches!(
            derive_identity(16, &unit_table(4).unwrap()),
            Err(IdentityError::UnsupportedSize { n: 16 })
        ));
        assert!(matches!(
            derive_identity(3, &unit_table(2).unwrap()),
            Err(IdentityError::UnsupportedSize { n: 3 })
        ));
        assert!(matches!(
            derive_identity(4, &unit_table(3).unwrap()),
            Err(IdentityError::WrongTableSize { expected: 4, got: 8 })
        ));
    }

    #[test]
    fn structurally_broken_source_is_rejected() {
        let mut t = MultTable::classic();
        // Break anticommutativity.
        t.set_product(1, 2, SignedUnit::new(1, 3));
        assert!(matches!(
            derive_identity(8, &t.to_unit_table()),
            Err(IdentityError::InvalidSourceTable { .. })
        ));
    }

    #[test]
    fn structurally_sound_but_noncomposing_source_fails_verification() {
        // Flip a single pair's sign: structure survives, the norm does not.
        let mut t = MultTable::classic();
        t.set_product(1, 3, SignedUnit::new(-1, 2));
        t.set_product(3, 1, SignedUnit::new(1, 2));
        let id = derive_identity(8, &t.to_unit_table()).unwrap();
        assert!(!id.is_verified());
        assert!(!verify_identity(&id));
        assert!(matches!(id.emit_text(), Err(IdentityError::NotVerified)));
        assert!(matches!(id.emit_json(), Err(IdentityError::NotVerified)));
    }
}
