//! Consistency checks that span modules: subspace enumeration against the
//! q-combinatorial counts, the Fano incidence data against PG(2,2), the
//! octonion codings against each other, and the eight-square identity derived
//! from two independent multiplication tables.

use std::collections::BTreeSet;

use hurwitz::cayley_dickson::unit_table;
use hurwitz::fano_octonions::{
    fano_lines, recode, validate_table, FanoPoint, MultTable, UnitLabeling,
};
use hurwitz::finite_geometry::{build_lattice, enumerate_subspaces, projective_space};
use hurwitz::identities::{derive_identity, verify_identity};
use hurwitz::qcalc::{galois_number, gaussian_binomial};
use num_bigint::BigUint;

#[test]
fn subspace_counts_sum_to_the_galois_number() {
    for n in 0..=4usize {
        for q in [2u64, 3] {
            let total: usize = (0..=n)
                .map(|k| enumerate_subspaces(n, q, k).unwrap().len())
                .sum();
            let expected = galois_number(n as u32, q as i64).unwrap();
            assert_eq!(BigUint::from(total), expected, "n={n} q={q}");
        }
    }
}

#[test]
fn lattice_node_count_matches_the_galois_number() {
    for n in 0..=4usize {
        for q in [2u64, 3] {
            let lattice = build_lattice(n, q).unwrap();
            let expected = galois_number(n as u32, q as i64).unwrap();
            assert_eq!(BigUint::from(lattice.node_count()), expected, "n={n} q={q}");
        }
    }
}

#[test]
fn each_lattice_level_matches_the_gaussian_binomial() {
    for n in 0..=4usize {
        for q in [2u64, 3] {
            let lattice = build_lattice(n, q).unwrap();
            for k in 0..=n {
                assert_eq!(
                    BigUint::from(lattice.level(k).len()),
                    gaussian_binomial(n as u32, k as i64, q as i64).unwrap(),
                    "n={n} q={q} k={k}"
                );
            }
        }
    }
}

/// The seven `fano_lines` triples, rendered as sorted bit-strings, must be
/// exactly the lines of PG(2,2) computed by linear algebra.
#[test]
fn fano_lines_are_the_lines_of_pg22() {
    let plane = projective_space(2, 2).unwrap();
    let from_geometry: BTreeSet<Vec<String>> = plane.line_point_strings().into_iter().collect();
    let from_xor: BTreeSet<Vec<String>> = fano_lines()
        .iter()
        .map(|line| {
            let mut pts: Vec<String> = line.iter().map(|p| p.bits()).collect();
            pts.sort();
            pts
        })
        .collect();
    assert_eq!(from_geometry, from_xor);
}

/// The classic unit labeling induces the same line structure on units as the
/// projective plane does on points.
#[test]
fn classic_labeling_lines_match_pg22() {
    let labeling = UnitLabeling::classic();
    let plane = projective_space(2, 2).unwrap();
    let from_geometry: BTreeSet<Vec<String>> = plane.line_point_strings().into_iter().collect();
    let from_units: BTreeSet<Vec<String>> = labeling
        .lines_as_unit_triples()
        .iter()
        .map(|triple| {
            let mut pts: Vec<String> = triple
                .iter()
                .map(|&u| labeling.point_of(u).unwrap().bits())
                .collect();
            pts.sort();
            pts
        })
        .collect();
    assert_eq!(from_geometry, from_units);
}

#[test]
fn both_octonion_codings_pass_validation() {
    assert!(validate_table(&MultTable::classic()).all_hold());
    let doubling = MultTable::from_unit_table(&unit_table(3).unwrap()).unwrap();
    assert!(validate_table(&doubling).all_hold());
}

/// Recoding the classic table to the natural labeling induces the unit
/// permutation i -> 2i (mod 7), which is an automorphism of that table: the
/// recode comes back entrywise identical.
#[test]
fn classic_table_is_invariant_under_index_doubling() {
    let classic = UnitLabeling::classic();
    let natural = UnitLabeling::new([1, 2, 3, 4, 5, 6, 7].map(|v| FanoPoint::new(v).unwrap()))
        .unwrap();
    let table = MultTable::classic();
    assert_eq!(recode(&table, &classic, &natural).unwrap(), table);
}

/// Recoding through a non-automorphic relabeling genuinely permutes the
/// table without damaging any of the validated structure, and recoding back
/// restores it exactly.
#[test]
fn recoding_preserves_validation() {
    let classic = UnitLabeling::classic();
    // Swap the points of units 1 and 2 relative to the classic labeling; the
    // induced permutation is the transposition (1 2), not an automorphism.
    let swapped = UnitLabeling::new([4, 2, 6, 1, 3, 5, 7].map(|v| FanoPoint::new(v).unwrap()))
        .unwrap();
    let table = MultTable::classic();
    let recoded = recode(&table, &classic, &swapped).unwrap();
    assert_ne!(recoded, table, "the relabeling is nontrivial");
    assert!(validate_table(&recoded).all_hold());
    let back = recode(&recoded, &swapped, &classic).unwrap();
    assert_eq!(back, table);
}

/// Both multiplication tables (Cayley–Dickson doubling and the classic Fano
/// coding) yield a correct eight-square identity, but with different bilinear
/// forms, since the tables themselves differ.
#[test]
fn eight_square_identity_from_both_sources() {
    let from_cd = derive_identity(8, &unit_table(3).unwrap()).unwrap();
    let from_fano = derive_identity(8, &MultTable::classic().to_unit_table()).unwrap();
    assert!(from_cd.is_verified());
    assert!(from_fano.is_verified());
    assert!(verify_identity(&from_cd));
    assert!(verify_identity(&from_fano));
    assert_ne!(
        from_cd.emit_text().unwrap(),
        from_fano.emit_text().unwrap(),
        "the two codings give distinct (equally valid) bilinear forms"
    );
}

/// The Galois numbers the acceptance criteria quote, cross-checked against
/// the subspace enumerator rather than the q-series.
#[test]
fn quoted_galois_numbers_agree_with_enumeration() {
    let count = |n: usize, q: u64| -> usize {
        (0..=n)
            .map(|k| enumerate_subspaces(n, q, k).unwrap().len())
            .sum()
    };
    assert_eq!(count(3, 2), 16);
    assert_eq!(count(2, 2), 5);
    assert_eq!(count(4, 3), 212);
}
