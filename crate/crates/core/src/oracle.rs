//! Brute-force reference implementations used to cross-check the search.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::{base_p_digits, DigitString};
use crate::greedy::{CodeSpec, LexCode};
use crate::vecspace::{hamming_distance, rank_to_vector, Vector};

/// Default rank ceiling of the naive scan, as a power of `p`.
pub const DEFAULT_CEILING_EXPONENT: u32 = 14;

/// Scans ranks `resume, resume + 1, …` below `ceiling` and returns the first
/// vector at distance `>= d` from every word of `existing`.
pub fn naive_next_codeword(
    existing: &[Vector],
    spec: &CodeSpec,
    resume: u128,
    ceiling: Option<u128>,
) -> Result<Vector> {
    let p = spec.p;
    let ceiling = match ceiling {
        Some(c) => c,
        None => p.pow(DEFAULT_CEILING_EXPONENT)?,
    };
    for r in resume..ceiling {
        let v = rank_to_vector(&base_p_digits(r, p), spec.basis, p);
        if existing.iter().all(|w| hamming_distance(&v, w) >= spec.d) {
            return Ok(v);
        }
    }
    Err(Error::RankCeilingExceeded)
}

/// `w(0..n)` by repeated naive scans, each resuming after the previous rank.
pub fn naive_words(spec: &CodeSpec, n: usize, ceiling: Option<u128>) -> Result<Vec<Vector>> {
    let p = spec.p;
    let mut words: Vec<Vector> = Vec::with_capacity(n);
    let mut resume = 0u128;
    for _ in 0..n {
        let w = naive_next_codeword(&words, spec, resume, ceiling)?;
        resume = crate::vecspace::vector_rank(&w, spec.basis, p).value(p)? + 1;
        words.push(w);
    }
    Ok(words)
}

/// Whether the word set is closed under addition and scalar multiples.
pub fn closure_is_linear(code: &LexCode) -> bool {
    let p = code.spec.p;
    let set: HashSet<&Vector> = code.words.iter().collect();
    if !set.contains(&Vector::zero()) {
        return false;
    }
    let distinct: Vec<&Vector> = set.iter().copied().collect();
    for u in &distinct {
        for alpha in 2..p.get() {
            if !set.contains(&u.scale(alpha, p)) {
                return false;
            }
        }
        for v in &distinct {
            if !set.contains(&u.add(v, p)) {
                return false;
            }
        }
    }
    true
}

/// Rank of the answer as a natural number, for resuming a naive scan.
pub fn rank_value(rank: &DigitString, spec: &CodeSpec) -> Result<u128> {
    rank.value(spec.p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greedy::{lex_code, next_codeword, GreedyBuilder};
    use crate::vecspace::Basis;

    #[test]
    fn naive_matches_search_small() {
        for basis in [Basis::Standard, Basis::modified(1, 3).unwrap(), Basis::modified(3, 0).unwrap()] {
            for d in 2..=4 {
                let spec = CodeSpec::greedy(3, d, basis).unwrap();
                let naive = naive_words(&spec, 27, None).unwrap();
                let mut b = GreedyBuilder::new(spec);
                b.build_to(27).unwrap();
                assert_eq!(b.words(), &naive[..], "{basis} d={d}");
            }
        }
    }

    #[test]
    fn single_step_agrees() {
        let spec = CodeSpec::greedy(5, 3, Basis::Standard).unwrap();
        let existing = naive_words(&spec, 6, None).unwrap();
        let fast = next_codeword(&existing, &spec, &DigitString::zero()).unwrap();
        let slow = naive_next_codeword(&existing, &spec, 0, None).unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn ceiling_is_reported() {
        let spec = CodeSpec::greedy(3, 3, Basis::Standard).unwrap();
        let existing = vec![Vector::zero()];
        assert_eq!(
            naive_next_codeword(&existing, &spec, 0, Some(9)),
            Err(Error::RankCeilingExceeded)
        );
    }

    #[test]
    fn closure() {
        let spec = CodeSpec::greedy(3, 2, Basis::Standard).unwrap();
        assert!(closure_is_linear(&lex_code(&spec, 1).unwrap()));
        assert!(!closure_is_linear(&lex_code(&spec, 2).unwrap()));
    }
}
