mod common;

use common::*;
use proptest::prelude::*;

#[test]
fn frobenius_matches_exponentiation_exhaustively() {
    for &(p, e, n) in SMALL_FIELDS {
        frobenius_composition(p, e, n).unwrap();
    }
}

#[test]
fn frobenius_is_additive_and_multiplicative_exhaustively() {
    for &(p, e, n) in SMALL_FIELDS {
        frobenius_is_ring_map(p, e, n).unwrap();
    }
}

#[test]
fn moore_matrix_over_gf4_all_pairs() {
    moore_exhaustive_gf4().unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn moore_matrix_invertible_iff_independent(seed in any::<u64>()) {
        let r = moore_random(seed);
        prop_assert!(r.is_ok(), "{}", r.unwrap_err());
    }
}
