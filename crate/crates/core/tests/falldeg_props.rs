mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_agrees_with_naive_closure(seed in any::<u64>()) {
        let r = closure_matches_naive(seed);
        prop_assert!(r.is_ok(), "{}", r.unwrap_err());
    }

    #[test]
    fn closures_grow_with_degree(seed in any::<u64>()) {
        let r = closure_monotone(seed);
        prop_assert!(r.is_ok(), "{}", r.unwrap_err());
    }

    #[test]
    fn closure_stays_in_ideal(seed in any::<u64>()) {
        let r = closure_sound(seed);
        prop_assert!(r.is_ok(), "{}", r.unwrap_err());
    }

    #[test]
    fn fall_degree_ignores_monomial_order(seed in any::<u64>()) {
        let r = order_independent(seed);
        prop_assert!(r.is_ok(), "{}", r.unwrap_err());
    }

    #[test]
    fn fall_degree_ignores_recombination(seed in any::<u64>()) {
        let r = recombination_invariant(seed);
        prop_assert!(r.is_ok(), "{}", r.unwrap_err());
    }
}

#[test]
fn mixing_degrees_moves_the_fall_degree() {
    assert_eq!(recombination_mixed_degrees_example(), (0, 2));
}
