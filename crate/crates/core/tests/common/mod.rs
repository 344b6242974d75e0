#![allow(dead_code)]

use std::cmp::Ordering;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};

use lexikit_core::analysis::{
    column_profile, distance_from_profile, griesmer_bound, is_linear_lex, linear_params,
    nonlinearity_witness,
};
use lexikit_core::field::{base_p_digits, digitwise_add};
use lexikit_core::greedy::{bminus_generators, word_plus, GreedyBuilder};
use lexikit_core::vecspace::{compare, hamming_distance};
use lexikit_core::{Basis, CodeSpec, GeneratorSet, PrimeModulus, Vector};

pub const SEED: u64 = 0x1e71_c0de;

pub fn seeded_config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new(seeded_config(cases))
}

pub fn prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3), Just(5)]
}

pub fn basis(max_index: usize) -> impl Strategy<Value = Basis> {
    prop_oneof![
        Just(Basis::Standard),
        (0..max_index, 0..max_index)
            .prop_filter("xi != eta", |(x, e)| x != e)
            .prop_map(|(x, e)| Basis::modified(x, e).unwrap()),
    ]
}

/// Small greedy specs whose first `p^2` words build quickly.
pub fn small_spec() -> impl Strategy<Value = CodeSpec> {
    (prime(), 2usize..=4, basis(6)).prop_map(|(p, d, b)| CodeSpec::greedy(p, d, b).unwrap())
}

fn vector(p: u8, len: usize) -> impl Strategy<Value = Vector> {
    let modulus = PrimeModulus::new(p as u32).unwrap();
    prop::collection::vec(0..p, len).prop_map(move |c| Vector::new(c, modulus).unwrap())
}

/// Words are `<_F`-increasing and pairwise at distance `>= d`.
pub fn check_greedy_order(spec: CodeSpec) -> Result<(), TestCaseError> {
    let p = spec.p.get() as usize;
    let mut b = GreedyBuilder::new(spec);
    b.build_to(p * p + 1).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let words = b.words();
    prop_assert!(words[0].is_zero());
    for i in 1..words.len() {
        prop_assert_eq!(compare(&words[i - 1], &words[i], spec.basis, spec.p), Ordering::Less);
        for j in 0..i {
            prop_assert!(hamming_distance(&words[i], &words[j]) >= spec.d);
        }
    }
    Ok(())
}

pub fn greedy_order_property() -> impl Strategy<Value = CodeSpec> {
    small_spec()
}

/// `w⁺(a ⊕ b) = w⁺(a) + w⁺(b)` over a `w⁻` generator set.
pub fn word_plus_additivity() -> impl Strategy<Value = (CodeSpec, u128, u128)> {
    (prime(), 2usize..=5, basis(6)).prop_flat_map(|(p, d, b)| {
        let spec = CodeSpec::bgreedy(p, d, b).unwrap();
        let n = (p as u128).pow(3);
        (Just(spec), 0..n, 0..n)
    })
}

pub fn check_word_plus_additivity((spec, a, b): (CodeSpec, u128, u128)) -> Result<(), TestCaseError> {
    let gens = bminus_generators(&spec, 2).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let p = spec.p;
    let sum = digitwise_add(a, b, p).unwrap();
    let lhs = word_plus(sum, &gens).unwrap();
    let rhs = word_plus(a, &gens).unwrap().add(&word_plus(b, &gens).unwrap(), p);
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

/// Top indices `M_h` of `w⁻(p^h)` strictly increase.
pub fn check_top_indices(spec: CodeSpec) -> Result<(), TestCaseError> {
    let spec = CodeSpec::bgreedy(spec.p.as_u32(), spec.d, spec.basis).unwrap();
    let k = if spec.p.get() == 5 { 2 } else { 3 };
    let gens = bminus_generators(&spec, k).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let tops = gens.top_indices();
    prop_assert!(tops.iter().all(Option::is_some));
    for w in tops.windows(2) {
        prop_assert!(w[0] < w[1], "{:?}", tops);
    }
    Ok(())
}

fn sum_of_ceilings(p: usize, k: usize, d: usize) -> usize {
    (0..k as u32).map(|i| d.div_ceil(p.pow(i))).sum()
}

/// Every linear punctured code satisfies `n >= g_p(k, dmin)`.
pub fn check_griesmer(spec: CodeSpec) -> Result<(), TestCaseError> {
    let fail = |e: lexikit_core::Error| TestCaseError::fail(e.to_string());
    let p = spec.p.get() as usize;
    let mut candidates: Vec<GeneratorSet> = Vec::new();
    for rows in 1..=2 {
        let bspec = CodeSpec::bgreedy(spec.p.as_u32(), spec.d, spec.basis).unwrap();
        candidates.push(bminus_generators(&bspec, rows - 1).map_err(fail)?);
        if is_linear_lex(&spec, rows).map_err(fail)? {
            candidates.push(GreedyBuilder::new(spec).generators(rows - 1).map_err(fail)?);
        }
    }
    for gens in candidates {
        let params = linear_params(&gens).map_err(fail)?;
        let bound = griesmer_bound(spec.p, params.k, params.dmin);
        prop_assert_eq!(bound, sum_of_ceilings(p, params.k, params.dmin));
        prop_assert!(params.n >= bound, "{} vs {}", params, bound);
    }
    Ok(())
}

/// Random small matrices: direct distance equals the profile sum.
pub fn profile_distance_case() -> impl Strategy<Value = (u8, Vec<Vector>, u128)> {
    (prime(), 1usize..=3, 1usize..=8).prop_flat_map(|(p, k, width)| {
        let p = p as u8;
        let rows = prop::collection::vec(vector(p, width), k + 1);
        (Just(p), rows, 0..(p as u128).pow(k as u32))
    })
}

pub fn check_profile_distance((p, rows, a): (u8, Vec<Vector>, u128)) -> Result<(), TestCaseError> {
    let modulus = PrimeModulus::new(p as u32).unwrap();
    let k = rows.len() - 1;
    let digits = base_p_digits(a, modulus);
    let mut combo = Vector::zero();
    for (i, row) in rows[..k].iter().enumerate() {
        combo = combo.add(&row.scale(digits.digit(i), modulus), modulus);
    }
    let direct = hamming_distance(&rows[k], &combo);
    let spec = CodeSpec::bgreedy(p as u32, 2, Basis::Standard).unwrap();
    let gens = GeneratorSet::new(spec, rows);
    let profile = column_profile(&gens);
    prop_assert_eq!(direct, distance_from_profile(&profile, a, modulus));
    prop_assert_eq!(profile.total(), profile.ambient.len());
    Ok(())
}

/// Over F_3 the first nonlinearity sits at `a = 3^h + 3^l`.
pub fn ternary_spec() -> impl Strategy<Value = CodeSpec> {
    (2usize..=8, basis(8)).prop_map(|(d, b)| CodeSpec::greedy(3, d, b).unwrap())
}

pub fn check_ternary_witness(spec: CodeSpec) -> Result<(), TestCaseError> {
    let w = nonlinearity_witness(&spec, 3).map_err(|e| TestCaseError::fail(e.to_string()))?;
    if let Some(w) = w {
        let digits = base_p_digits(w.a as u128, spec.p);
        prop_assert_eq!(digits.digit_sum(), 2, "a = {}", w.a);
        prop_assert_ne!(w.word, w.word_plus);
    }
    Ok(())
}
