use std::collections::HashSet;

use proptest::prelude::*;

use ucycle_core::counting::{
    all_laplacian_cofactors, count_bruteforce, count_closed_form, count_matrix_tree,
    enumerate_all_vec, generate_cycle, TourBudget,
};
use ucycle_core::perm::{canonical_rotation, is_universal_cycle};
use ucycle_core::spectral::{annihilator_vanishes, multiplicities, verify_theorem1_laplacian};
use ucycle_core::TransitionDigraph;

#[test]
fn three_way_agreement() {
    for (n, k) in [(3, 2), (4, 2), (5, 2), (4, 3)] {
        let closed = count_closed_form(n, k).unwrap();
        let tree = count_matrix_tree(n, k).unwrap();
        let brute = count_bruteforce(n, k, &TourBudget::default()).unwrap();
        assert_eq!(closed, tree, "({n},{k})");
        assert_eq!(closed, brute, "({n},{k})");
    }
}

#[test]
fn two_way_agreement_at_scale() {
    for (n, k) in [(6, 2), (7, 2), (8, 2), (5, 3), (6, 3), (7, 3)] {
        assert_eq!(
            count_closed_form(n, k).unwrap(),
            count_matrix_tree(n, k).unwrap(),
            "({n},{k})"
        );
    }
}

#[test]
fn cofactors_agree_for_small_n() {
    for n in 3..=5 {
        for k in 2..n {
            let d = TransitionDigraph::build(n, k).unwrap();
            let cofs = all_laplacian_cofactors(&d).unwrap();
            assert!(cofs.iter().all(|c| c == &cofs[0]), "({n},{k})");
        }
    }
}

#[test]
fn enumeration_matches_bruteforce_without_duplicates() {
    let budget = TourBudget::default();
    for (n, k) in [(3, 1), (4, 1), (3, 2), (4, 2), (4, 3)] {
        let all = enumerate_all_vec(n, k, &budget).unwrap();
        let distinct: HashSet<_> = all.iter().map(|c| canonical_rotation(c).unwrap()).collect();
        assert_eq!(distinct.len(), all.len());
        let brute = count_bruteforce(n, k, &budget).unwrap();
        assert_eq!(brute.to_string(), all.len().to_string());
    }
}

#[test]
fn minimal_polynomial_vanishes() {
    for n in 4..=7 {
        assert!(annihilator_vanishes(n).unwrap(), "n={n}");
    }
}

#[test]
fn multiplicities_fill_the_spectrum() {
    for n in 4..=8 {
        let m = multiplicities(n).unwrap();
        assert_eq!(1 + m.s1 + m.s2 + 2 * m.s3, n * (n - 1));
        assert!(m.passed, "n={n}: {:?}", m.counterexample);
    }
}

#[test]
fn k2_laplacian_spectrum_range() {
    for n in 3..=9 {
        assert!(verify_theorem1_laplacian(n).unwrap().passed, "n={n}");
    }
}

fn small_params() -> impl Strategy<Value = (usize, usize)> {
    (2usize..=6).prop_flat_map(|n| (Just(n), 1..n.min(4)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn generated_cycles_validate((n, k) in small_params(), seed in any::<u64>()) {
        let c = generate_cycle(n, k, Some(seed)).unwrap();
        prop_assert!(is_universal_cycle(&c, n, k).is_valid());
    }

    #[test]
    fn validator_rotation_invariant_on_generated((n, k) in small_params(), seed in any::<u64>(), shift in any::<usize>()) {
        let c = generate_cycle(n, k, Some(seed)).unwrap();
        prop_assert!(is_universal_cycle(&c.rotated(shift), n, k).is_valid());
    }
}
