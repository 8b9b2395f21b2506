//! q-analogues of the classical counting functions, computed exactly.
//!
//! * [`gaussian_binomial`] — the q-binomial coefficient counting k-dimensional
//!   subspaces of an n-dimensional space over GF(q).
//! * [`galois_number`] — the total number of subspaces of V(n, q), i.e. the
//!   sum of the Gaussian binomials over all k.
//! * [`q_factorial`] — the product of the q-integers 1_q * 2_q * ... * n_q.
//! * [`verify_qexp_squared`] — the identity `exp_q(x)^2 = sum G_n x^n / (n_q)!`
//!   checked coefficientwise through a chosen truncation degree with exact
//!   rational arithmetic.
//!
//! Everything is `BigUint`/`BigRational` arithmetic; there is no overflow and
//! no rounding anywhere in this module.

use crate::Rational;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use std::fmt;

/// Errors for the q-combinatorics operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QcalcError {
    /// The base q of a q-analogue must be a positive integer.
    NonPositiveQ { q: i64 },
}

impl fmt::Display for QcalcError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QcalcError::NonPositiveQ { q } => {
                write!(f, "q must be a positive integer, got {q}")
            }
        }
    }
}

impl std::error::Error for QcalcError {}

fn check_q(q: i64) -> Result<BigUint, QcalcError> {
    if q <= 0 {
        Err(QcalcError::NonPositiveQ { q })
    } else {
        Ok(BigUint::from(q as u64))
    }
}

/// The q-integer n_q = 1 + q + q^2 + ... + q^(n-1); n_q = n when q = 1 and
/// 0_q = 0.  Constructed only through this definition, never by closed form,
/// so q = 1 needs no special case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QInt {
    value: BigUint,
}

impl QInt {
    pub fn new(n: u32, q: i64) -> Result<Self, QcalcError> {
        let q = check_q(q)?;
        let mut value = BigUint::zero();
        let mut power = BigUint::one();
        for _ in 0..n {
            value += &power;
            power *= &q;
        }
        Ok(QInt { value })
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }
}

/// The Gaussian binomial coefficient `[n, k]_q`, i.e. the number of
/// k-dimensional subspaces of V(n, q).  Returns 0 when k < 0 or k > n, and
/// degenerates to the ordinary binomial coefficient at q = 1.
///
/// Computed by the product formula
/// `prod_{i=1..k} (q^(n-k+i) - 1) / (q^i - 1)`
/// with an exact division after every factor pair: each prefix of the product
/// is itself a Gaussian binomial, hence an integer.
pub fn gaussian_binomial(n: u32, k: i64, q: i64) -> Result<BigUint, QcalcError> {
    let q = check_q(q)?;
    if k < 0 || k > n as i64 {
        return Ok(BigUint::zero());
    }
    let k = k as u32;
    if q.is_one() {
        // The product formula would hit 0/0 at q = 1; the q-integer form of
        // each factor, (n-k+i)_q / i_q, reduces to the ordinary binomial.
        let mut acc = BigUint::one();
        for i in 1..=k {
            acc *= BigUint::from((n - k + i) as u64);
            acc /= BigUint::from(i as u64);
        }
        return Ok(acc);
    }
    let mut acc = BigUint::one();
    for i in 1..=k {
        let numer = num_traits::pow::pow(q.clone(), (n - k + i) as usize) - BigUint::one();
        let denom = num_traits::pow::pow(q.clone(), i as usize) - BigUint::one();
        acc *= numer;
        debug_assert!((&acc % &denom).is_zero(), "interleaved division not exact");
        acc /= denom;
    }
    Ok(acc)
}

/// The Galois number G_{n,q}: the total number of subspaces of V(n, q),
/// including the zero subspace (k = 0) and the whole space (k = n).
pub fn galois_number(n: u32, q: i64) -> Result<BigUint, QcalcError> {
    check_q(q)?;
    let mut total = BigUint::zero();
    for k in 0..=n {
        total += gaussian_binomial(n, k as i64, q)?;
    }
    Ok(total)
}

/// The q-factorial (n_q)! = 1_q * 2_q * ... * n_q, with (0_q)! = 1.
pub fn q_factorial(n: u32, q: i64) -> Result<BigUint, QcalcError> {
    check_q(q)?;
    let mut acc = BigUint::one();
    for m in 1..=n {
        acc *= QInt::new(m, q)?.value();
    }
    Ok(acc)
}

/// A truncated formal power series with exact rational coefficients.
///
/// Invariant: `coeffs` has exactly `truncation_degree() + 1` entries;
/// multiplication truncates to the shorter of the two operands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSeries {
    coeffs: Vec<Rational>,
}

impl FormalSeries {
    /// Builds a series from coefficients c_0, c_1, ..., c_N.  At least the
    /// constant coefficient must be present.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least degree 0");
        FormalSeries { coeffs }
    }

    /// The q-exponential exp_q(x) = sum_{n>=0} x^n / (n_q)!, truncated at
    /// `degree`.
    pub fn q_exponential(q: i64, degree: usize) -> Result<Self, QcalcError> {
        let mut coeffs = Vec::with_capacity(degree + 1);
        for n in 0..=degree {
            let fact = q_factorial(n as u32, q)?;
            coeffs.push(Rational::new(BigInt::one(), BigInt::from(fact)));
        }
        Ok(FormalSeries::new(coeffs))
    }

    pub fn truncation_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of x^n; panics past the truncation degree.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    /// Truncating Cauchy product.
    pub fn mul(&self, other: &FormalSeries) -> FormalSeries {
        let degree = self.truncation_degree().min(other.truncation_degree());
        let mut coeffs = vec![Rational::zero(); degree + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(degree + 1) {
            for (j, b) in other.coeffs.iter().enumerate().take(degree + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        FormalSeries::new(coeffs)
    }
}

/// Outcome of [`verify_qexp_squared`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QExpReport {
    pub q: i64,
    pub degree: usize,
    /// True when every coefficient of exp_q(x)^2 equals G_{n,q} / (n_q)! for
    /// n = 0..=degree.
    pub holds: bool,
    /// Smallest degree at which the two sides differ, when they do.
    pub first_failure: Option<usize>,
}

/// Checks `exp_q(x)^2 = sum_n G_{n,q} x^n / (n_q)!` coefficientwise through
/// x^degree, entirely in exact rational arithmetic.
pub fn verify_qexp_squared(q: i64, degree: usize) -> Result<QExpReport, QcalcError> {
    let series = FormalSeries::q_exponential(q, degree)?;
    let squared = series.mul(&series);
    let mut first_failure = None;
    for n in 0..=degree {
        let galois = BigInt::from(galois_number(n as u32, q)?);
        let fact = BigInt::from(q_factorial(n as u32, q)?);
        let expected = Rational::new(galois, fact);
        if squared.coeff(n) != &expected {
            first_failure = Some(n);
            break;
        }
    }
    Ok(QExpReport {
        q,
        degree,
        holds: first_failure.is_none(),
        first_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn q_rejected_when_not_positive() {
        assert_eq!(
            gaussian_binomial(3, 1, 0),
            Err(QcalcError::NonPositiveQ { q: 0 })
        );
        assert_eq!(
            galois_number(3, -2),
            Err(QcalcError::NonPositiveQ { q: -2 })
        );
        assert_eq!(
            q_factorial(3, -1),
            Err(QcalcError::NonPositiveQ { q: -1 })
        );
    }

    #[test]
    fn q_integers_by_definition() {
        // 3_2 = 1 + 2 + 4 = 7; 0_q = 0; n_1 = n.
        assert_eq!(QInt::new(3, 2).unwrap().value(), &BigUint::from(7u32));
        assert_eq!(QInt::new(0, 5).unwrap().value(), &BigUint::zero());
        assert_eq!(QInt::new(9, 1).unwrap().value(), &BigUint::from(9u32));
    }

    #[test]
    fn gaussian_binomial_reference_values() {
        // Lines and planes of V(3, 2): 7 of each.
        assert_eq!(gaussian_binomial(3, 1, 2).unwrap(), BigUint::from(7u32));
        assert_eq!(gaussian_binomial(3, 2, 2).unwrap(), BigUint::from(7u32));
        // 2-dimensional subspaces of V(4, 2): 35.
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), BigUint::from(35u32));
        // Edges of the range.
        assert_eq!(gaussian_binomial(5, 0, 3).unwrap(), BigUint::one());
        assert_eq!(gaussian_binomial(5, 5, 3).unwrap(), BigUint::one());
    }

    #[test]
    fn out_of_range_k_gives_zero() {
        assert_eq!(gaussian_binomial(4, -1, 2).unwrap(), BigUint::zero());
        assert_eq!(gaussian_binomial(4, 5, 2).unwrap(), BigUint::zero());
    }

    #[test]
    fn q_equal_one_degenerates_to_binomial() {
        // [6, k]_1 = C(6, k)
        let expected = [1u32, 6, 15, 20, 15, 6, 1];
        for (k, want) in expected.iter().enumerate() {
            assert_eq!(
                gaussian_binomial(6, k as i64, 1).unwrap(),
                BigUint::from(*want)
            );
        }
    }

    /// Independent oracle: count k-dimensional subspaces of V(n, 2) by brute
    /// force, closing every independent spanning set and deduplicating by
    /// point set.  Vectors are bitmasks, subspaces are sorted point sets.
    fn brute_force_subspaces_gf2(n: u32, k: u32) -> usize {
        let dim = 1usize << n;
        let mut spaces: BTreeSet<Vec<usize>> = BTreeSet::new();
        // Enumerate all subsets of k generators out of the nonzero vectors.
        fn extend(
            start: usize,
            left: u32,
            dim: usize,
            span: &mut Vec<usize>,
            spaces: &mut BTreeSet<Vec<usize>>,
        ) {
            if left == 0 {
                let mut pts = span.clone();
                pts.sort_unstable();
                spaces.insert(pts);
                return;
            }
            for v in start..dim {
                if span.contains(&v) {
                    continue; // dependent: already in the span
                }
                let before = span.clone();
                let mut extended: Vec<usize> = Vec::new();
                for &w in span.iter() {
                    extended.push(w ^ v);
                }
                span.extend(extended);
                extend(v + 1, left - 1, dim, span, spaces);
                *span = before;
            }
        }
        let mut span = vec![0usize];
        extend(1, k, dim, &mut span, &mut spaces);
        if k == 0 {
            return 1;
        }
        spaces.len()
    }

    #[test]
    fn gaussian_binomial_matches_exhaustive_subspace_count() {
        for n in 0..=4u32 {
            for k in 0..=n {
                let brute = brute_force_subspaces_gf2(n, k);
                let formula = gaussian_binomial(n, k as i64, 2).unwrap();
                assert_eq!(
                    BigUint::from(brute),
                    formula,
                    "V({n}, 2) has a different number of {k}-subspaces"
                );
            }
        }
    }

    #[test]
    fn galois_numbers_reference_values() {
        // 1 + 7 + 7 + 1 = 16 subspaces of V(3, 2); 5 subspaces of V(2, 2).
        assert_eq!(galois_number(3, 2).unwrap(), BigUint::from(16u32));
        assert_eq!(galois_number(2, 2).unwrap(), BigUint::from(5u32));
        assert_eq!(galois_number(0, 2).unwrap(), BigUint::one());
        // q = 1 counts subsets instead: 2^n.
        assert_eq!(galois_number(5, 1).unwrap(), BigUint::from(32u32));
    }

    #[test]
    fn q_factorial_reference_values() {
        // (3_2)! = 1 * 3 * 7 = 21.
        assert_eq!(q_factorial(3, 2).unwrap(), BigUint::from(21u32));
        assert_eq!(q_factorial(0, 7).unwrap(), BigUint::one());
        // q = 1 gives the ordinary factorial.
        assert_eq!(q_factorial(5, 1).unwrap(), BigUint::from(120u32));
    }

    #[test]
    fn q_pascal_recurrence() {
        // [n, k]_q = [n-1, k-1]_q + q^k * [n-1, k]_q
        for q in [1i64, 2, 3, 5] {
            for n in 1..=8u32 {
                for k in 1..=n as i64 {
                    let lhs = gaussian_binomial(n, k, q).unwrap();
                    let a = gaussian_binomial(n - 1, k - 1, q).unwrap();
                    let b = gaussian_binomial(n - 1, k, q).unwrap();
                    let qk = num_traits::pow::pow(BigUint::from(q as u64), k as usize);
                    assert_eq!(lhs, a + qk * b, "q-Pascal fails at n={n} k={k} q={q}");
                }
            }
        }
    }

    #[test]
    fn symmetry_in_k() {
        for q in [1i64, 2, 3] {
            for n in 0..=8u32 {
                for k in 0..=n as i64 {
                    assert_eq!(
                        gaussian_binomial(n, k, q).unwrap(),
                        gaussian_binomial(n, n as i64 - k, q).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn qexp_coefficient_identity_as_integers() {
        // Independent route to the squared-series coefficients:
        // (n_q)! * sum_k 1/((k_q)! ((n-k)_q)!) must equal G_{n,q} exactly.
        for q in [1i64, 2, 3, 5] {
            for n in 0..=10u32 {
                let mut sum = Rational::zero();
                for k in 0..=n {
                    let a = BigInt::from(q_factorial(k, q).unwrap());
                    let b = BigInt::from(q_factorial(n - k, q).unwrap());
                    sum += Rational::new(BigInt::one(), a * b);
                }
                let scaled = sum * Rational::from(BigInt::from(q_factorial(n, q).unwrap()));
                let galois = Rational::from(BigInt::from(galois_number(n, q).unwrap()));
                assert_eq!(scaled, galois, "coefficient identity fails at n={n} q={q}");
            }
        }
    }

    #[test]
    fn qexp_squared_identity_holds() {
        for q in [1i64, 2, 3, 5] {
            let report = verify_qexp_squared(q, 12).unwrap();
            assert!(report.holds, "q-exponential identity fails for q={q}");
            assert_eq!(report.first_failure, None);
        }
    }

    #[test]
    fn qexp_squared_detects_perturbation() {
        // A deliberately wrong series (exp_q with one coefficient nudged)
        // must be caught at exactly the nudged degree.
        let q = 2;
        let degree = 6;
        let series = FormalSeries::q_exponential(q, degree).unwrap();
        let mut coeffs: Vec<Rational> = (0..=degree).map(|n| series.coeff(n).clone()).collect();
        coeffs[4] += Rational::one();
        let bad = FormalSeries::new(coeffs);
        let squared = bad.mul(&bad);
        // Degrees 0..=3 agree with the true square, degree 4 does not.
        let truth = series.mul(&series);
        for n in 0..=3 {
            assert_eq!(squared.coeff(n), truth.coeff(n));
        }
        assert_ne!(squared.coeff(4), truth.coeff(4));
    }

    #[test]
    fn formal_series_multiplication_truncates() {
        let a = FormalSeries::new(vec![Rational::one(); 5]); // 1+x+x^2+x^3+x^4
        let b = FormalSeries::new(vec![Rational::one(); 3]); // 1+x+x^2
        let prod = a.mul(&b);
        assert_eq!(prod.truncation_degree(), 2);
        // (1+x+x^2)(1+x+x^2...) coefficients 1, 2, 3.
        assert_eq!(prod.coeff(0), &Rational::one());
        assert_eq!(prod.coeff(1), &Rational::from(BigInt::from(2)));
        assert_eq!(prod.coeff(2), &Rational::from(BigInt::from(3)));
    }
}
