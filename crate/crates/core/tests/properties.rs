//! Property-based checks: ring axioms for the polynomial kernel, evaluation
//! as a ring homomorphism, q-binomial recurrences, and structural laws of
//! the Cayley–Dickson tower.

use hurwitz::cayley_dickson::CdElement;
use hurwitz::qcalc::gaussian_binomial;
use hurwitz::symbolic::{Monomial, Poly};
use hurwitz::Rational;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

/// A small random polynomial: up to four variables, exponents at most 3,
/// coefficients in -9..=9, at most five terms.
fn arb_poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec(
        (
            proptest::collection::vec((0usize..4, 1u32..=3), 0..3),
            -9i64..=9,
        ),
        0..5,
    )
    .prop_map(|terms| {
        Poly::from_terms(
            terms
                .into_iter()
                .map(|(exps, c)| (Monomial::from_exponents(exps), BigInt::from(c))),
        )
    })
}

fn arb_point() -> impl Strategy<Value = Vec<BigInt>> {
    proptest::collection::vec((-9i64..=9).prop_map(BigInt::from), 4)
}

/// Random rational coefficients for a Cayley–Dickson element of the level.
fn arb_cd(level: usize) -> impl Strategy<Value = CdElement> {
    proptest::collection::vec((-9i64..=9, 1i64..=4), 1 << level).prop_map(move |cs| {
        CdElement::new(
            level,
            cs.into_iter()
                .map(|(n, d)| Rational::new(n.into(), d.into()))
                .collect(),
        )
        .expect("length matches level")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn poly_addition_commutes(p in arb_poly(), q in arb_poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
    }

    #[test]
    fn poly_addition_associates(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
    }

    #[test]
    fn poly_multiplication_commutes(p in arb_poly(), q in arb_poly()) {
        prop_assert_eq!(&p * &q, &q * &p);
    }

    #[test]
    fn poly_multiplication_associates(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
    }

    #[test]
    fn poly_distributes(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
    }

    #[test]
    fn poly_additive_inverse(p in arb_poly()) {
        prop_assert!((&p + &(-&p)).is_zero());
        prop_assert_eq!(&p - &p, Poly::zero());
    }

    #[test]
    fn poly_units(p in arb_poly()) {
        prop_assert_eq!(&p * &Poly::constant(1), p.clone());
        prop_assert!((&p * &Poly::zero()).is_zero());
        prop_assert_eq!(&p + &Poly::zero(), p.clone());
    }

    #[test]
    fn eval_is_a_ring_homomorphism(p in arb_poly(), q in arb_poly(), v in arb_point()) {
        prop_assert_eq!((&p + &q).eval(&v), p.eval(&v) + q.eval(&v));
        prop_assert_eq!((&p * &q).eval(&v), p.eval(&v) * q.eval(&v));
    }

    #[test]
    fn product_degree_adds(p in arb_poly(), q in arb_poly()) {
        // Integer coefficients form an integral domain, so degrees add.
        prop_assume!(!p.is_zero() && !q.is_zero());
        prop_assert_eq!(
            (&p * &q).total_degree(),
            p.total_degree() + q.total_degree()
        );
    }

    #[test]
    fn q_pascal_recurrence(n in 1u32..=9, k in 0i64..=9, q in 1i64..=6) {
        // [n,k]_q = [n-1,k-1]_q + q^k [n-1,k]_q
        let lhs = gaussian_binomial(n, k, q).unwrap();
        let rhs = gaussian_binomial(n - 1, k - 1, q).unwrap()
            + num_bigint::BigUint::from(q as u64).pow(k as u32)
                * gaussian_binomial(n - 1, k, q).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gaussian_symmetry(n in 0u32..=9, k in 0i64..=9, q in 1i64..=6) {
        prop_assert_eq!(
            gaussian_binomial(n, k, q).unwrap(),
            gaussian_binomial(n, n as i64 - k, q).unwrap()
        );
    }

    #[test]
    fn gaussian_vanishes_outside_range(n in 0u32..=9, q in 1i64..=6) {
        prop_assert!(gaussian_binomial(n, -1, q).unwrap().is_zero());
        prop_assert!(gaussian_binomial(n, n as i64 + 1, q).unwrap().is_zero());
    }
}

proptest! {
    // Exact rational arithmetic on 8- and 16-dimensional elements is
    // heavier, so fewer cases.
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cd_multiplication_is_bilinear(
        level in 0usize..=4usize,
        seedx in proptest::collection::vec((-9i64..=9, 1i64..=4), 16),
        seedy in proptest::collection::vec((-9i64..=9, 1i64..=4), 16),
        seedz in proptest::collection::vec((-9i64..=9, 1i64..=4), 16),
    ) {
        let element = |cs: &[(i64, i64)]| CdElement::new(
            level,
            cs[..1 << level]
                .iter()
                .map(|&(n, d)| Rational::new(n.into(), d.into()))
                .collect(),
        ).unwrap();
        let (x, y, z) = (element(&seedx), element(&seedy), element(&seedz));
        let lhs = x.add(&y).multiply(&z).unwrap();
        let rhs = x.multiply(&z).unwrap().add(&y.multiply(&z).unwrap());
        prop_assert_eq!(lhs, rhs);
        let lhs = z.multiply(&x.add(&y)).unwrap();
        let rhs = z.multiply(&x).unwrap().add(&z.multiply(&y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cd_conjugation_is_an_antiautomorphism(x in arb_cd(4), y in arb_cd(4)) {
        // conj(xy) = conj(y) conj(x), even for sedenions.
        let lhs = x.multiply(&y).unwrap().conjugate();
        let rhs = y.conjugate().multiply(&x.conjugate()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cd_norm_is_multiplicative_up_to_octonions(
        level in 0usize..=3usize,
        seedx in proptest::collection::vec((-9i64..=9, 1i64..=4), 8),
        seedy in proptest::collection::vec((-9i64..=9, 1i64..=4), 8),
    ) {
        let element = |cs: &[(i64, i64)]| CdElement::new(
            level,
            cs[..1 << level]
                .iter()
                .map(|&(n, d)| Rational::new(n.into(), d.into()))
                .collect(),
        ).unwrap();
        let (x, y) = (element(&seedx), element(&seedy));
        prop_assert_eq!(x.multiply(&y).unwrap().norm(), x.norm() * y.norm());
    }

    #[test]
    fn cd_norm_routes_agree(x in arb_cd(4)) {
        prop_assert_eq!(x.norm_via_conjugate(), Some(x.norm()));
    }

    #[test]
    fn cd_inverse_inverts(x in arb_cd(3)) {
        prop_assume!(!x.is_zero());
        let inv = x.inverse().unwrap();
        let one = CdElement::one(3).unwrap();
        prop_assert_eq!(x.multiply(&inv).unwrap(), one.clone());
        prop_assert_eq!(inv.multiply(&x).unwrap(), one);
    }

    #[test]
    fn cd_flexibility_holds_everywhere(x in arb_cd(4), y in arb_cd(4)) {
        // x(yx) = (xy)x survives all the way to the sedenions.
        let lhs = x.multiply(&y.multiply(&x).unwrap()).unwrap();
        let rhs = x.multiply(&y).unwrap().multiply(&x).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
