mod common;

use std::cmp::Ordering;

use proptest::prelude::*;

use common::*;
use lexikit_core::field::{base_p_digits, digitwise_add, digitwise_sub};
use lexikit_core::greedy::{bminus_code, bminus_generators, lex_code, GreedyBuilder};
use lexikit_core::vecspace::{
    compare, from_basis_coords, hamming_distance, rank_to_vector, to_basis_coords, vector_rank,
};
use lexikit_core::{Basis, CodeSpec, DigitString, PrimeModulus, Vector};

fn p_of(p: u32) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

fn any_prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3), Just(5), Just(7)]
}

fn vec_over(p: u32, max_len: usize) -> impl Strategy<Value = Vector> {
    let m = p_of(p);
    prop::collection::vec(0..p as u8, 0..=max_len).prop_map(move |c| Vector::new(c, m).unwrap())
}

fn pair_in(p: u32) -> impl Strategy<Value = (u128, u128)> {
    let n = (p as u128).pow(8);
    (0..n, 0..n)
}

proptest! {
    #![proptest_config(seeded_config(256))]

    #[test]
    fn digitwise_sub_then_add((p, (a, b)) in any_prime().prop_flat_map(|p| (Just(p), pair_in(p)))) {
        let m = p_of(p);
        prop_assert_eq!(digitwise_add(digitwise_sub(a, b, m).unwrap(), b, m).unwrap(), a);
    }

    #[test]
    fn digitwise_add_laws(p in any_prime(), a in 0u128..1 << 40, b in 0u128..1 << 40, c in 0u128..1 << 40) {
        let m = p_of(p);
        let add = |x, y| digitwise_add(x, y, m).unwrap();
        prop_assert_eq!(add(a, b), add(b, a));
        prop_assert_eq!(add(add(a, b), c), add(a, add(b, c)));
    }

    #[test]
    fn base_p_round_trip(p in any_prime(), a in 0u128..1_000_000) {
        prop_assert_eq!(base_p_digits(a, p_of(p)).value(p_of(p)).unwrap(), a);
    }

    #[test]
    fn basis_round_trip((p, v) in any_prime().prop_flat_map(|p| (Just(p), vec_over(p, 10))), b in basis(12)) {
        let m = p_of(p);
        prop_assert_eq!(from_basis_coords(&to_basis_coords(&v, b, m), b, m), v);
    }

    #[test]
    fn compare_matches_rank(
        (p, u, v) in any_prime().prop_flat_map(|p| (Just(p), vec_over(p, 8), vec_over(p, 8))),
        b in basis(10),
    ) {
        let m = p_of(p);
        prop_assert_eq!(compare(&u, &v, b, m), vector_rank(&u, b, m).cmp(&vector_rank(&v, b, m)));
        let ru = vector_rank(&u, b, m).value(m).unwrap();
        let rv = vector_rank(&v, b, m).value(m).unwrap();
        prop_assert_eq!(compare(&u, &v, b, m), ru.cmp(&rv));
    }

    #[test]
    fn rank_enumeration_has_no_gaps(p in prop_oneof![Just(2u32), Just(3), Just(5)], b in basis(7), frac in 0.0f64..1.0) {
        let m = p_of(p);
        let n = (p as u128).pow(6);
        let r = ((n as f64) * frac) as u128 % n;
        let rank = base_p_digits(r, m);
        let v = rank_to_vector(&rank, b, m);
        prop_assert_eq!(vector_rank(&v, b, m), rank);
        if r + 1 < n {
            let next = rank_to_vector(&base_p_digits(r + 1, m), b, m);
            prop_assert_eq!(compare(&v, &next, b, m), Ordering::Less);
        }
    }

    #[test]
    fn hamming_is_a_metric(
        (p, u, v, w) in any_prime().prop_flat_map(|p| (Just(p), vec_over(p, 9), vec_over(p, 9), vec_over(p, 9))),
        b in basis(10),
    ) {
        let m = p_of(p);
        prop_assert!(hamming_distance(&u, &w) <= hamming_distance(&u, &v) + hamming_distance(&v, &w));
        prop_assert_eq!(hamming_distance(&u, &v), hamming_distance(&v, &u));
        prop_assert_eq!(hamming_distance(&u, &v) == 0, u == v);
        // the same vectors read through a basis and back are the same vectors
        let u2 = from_basis_coords(&to_basis_coords(&u, b, m), b, m);
        let v2 = from_basis_coords(&to_basis_coords(&v, b, m), b, m);
        prop_assert_eq!(hamming_distance(&u2, &v2), hamming_distance(&u, &v));
    }

    #[test]
    fn modified_coords_differ_only_at_eta(
        (p, v) in any_prime().prop_flat_map(|p| (Just(p), vec_over(p, 10))),
        (xi, eta) in (0usize..12, 0usize..12).prop_filter("distinct", |(x, e)| x != e),
    ) {
        let m = p_of(p);
        let f = DigitString::from_digits(to_basis_coords(&v, Basis::modified(xi, eta).unwrap(), m));
        for i in 0..13 {
            if i != eta {
                prop_assert_eq!(f.digit(i), v.coord(i));
            }
        }
    }

    #[test]
    fn greedy_words_increase_and_stay_apart(spec in small_spec()) {
        check_greedy_order(spec)?;
    }

    #[test]
    fn word_plus_is_additive(case in word_plus_additivity()) {
        check_word_plus_additivity(case)?;
    }

    #[test]
    fn bminus_top_indices_increase(spec in small_spec()) {
        check_top_indices(spec)?;
    }

    #[test]
    fn linear_codes_obey_griesmer(spec in small_spec()) {
        check_griesmer(spec)?;
    }

    #[test]
    fn profile_sum_gives_distance(case in profile_distance_case()) {
        check_profile_distance(case)?;
    }

    #[test]
    fn ternary_witness_has_digit_sum_two(spec in ternary_spec()) {
        check_ternary_witness(spec)?;
    }
}

proptest! {
    #![proptest_config(seeded_config(48))]

    /// When `Lex^k` is linear the greedy, combined and B-greedy words coincide.
    #[test]
    fn linear_prefix_matches_both_variants(spec in small_spec()) {
        let k = if spec.p.get() == 5 { 2 } else { 3 };
        if lexikit_core::analysis::is_linear_lex(&spec, k).unwrap() {
            let lex = lex_code(&spec, k).unwrap();
            let mut b = GreedyBuilder::new(spec);
            for a in 0..lex.len() {
                b.build_to(a + 1).unwrap();
                prop_assert_eq!(&b.word_plus(a), &lex.words[a]);
            }
            let bspec = CodeSpec::bgreedy(spec.p.as_u32(), spec.d, spec.basis).unwrap();
            let minus = bminus_code(&bminus_generators(&bspec, k - 1).unwrap()).unwrap();
            prop_assert_eq!(minus.words, lex.words);
        }
    }
}
