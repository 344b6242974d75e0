//! Prime-field residues and carry-free base-p arithmetic on naturals.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A prime modulus `p`, checked by trial division at construction.
///
/// Residues are stored as `u8`, so `p` must be below 256.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u8);

impl PrimeModulus {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || p > u8::MAX as u32 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeModulus(p as u8))
    }

    #[inline]
    pub fn get(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn as_u32(self) -> u32 {
        self.0 as u32
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.0 as u16) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.0 as u16 - b as u16) % self.0 as u16) as u8
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.0 as u16) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        self.sub(0, a)
    }

    /// Multiplicative inverse of a nonzero residue (Fermat).
    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(a % self.0 != 0, "zero has no inverse");
        let mut result = 1u8;
        let mut base = a % self.0;
        let mut e = self.0 as u32 - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// `p^e`, or `None` on `u128` overflow.
    pub fn checked_pow(self, e: u32) -> Option<u128> {
        (self.0 as u128).checked_pow(e)
    }

    pub fn pow(self, e: u32) -> Result<u128> {
        self.checked_pow(e).ok_or(Error::Overflow)
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

/// Base-p expansion of a natural, least-significant digit first, with no
/// trailing zeros. Zero has the empty expansion.
///
/// Ordering compares the represented naturals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DigitString {
    digits: Vec<u8>,
}

impl DigitString {
    pub fn zero() -> Self {
        DigitString { digits: Vec::new() }
    }

    /// Builds from raw digits, trimming trailing zeros. Digits must be `< p`.
    pub fn from_digits(mut digits: Vec<u8>) -> Self {
        while digits.last() == Some(&0) {
            digits.pop();
        }
        DigitString { digits }
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// The `i`-th digit (zero beyond the stored length).
    #[inline]
    pub fn digit(&self, i: usize) -> u8 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digit_sum(&self) -> u32 {
        self.digits.iter().map(|&d| d as u32).sum()
    }

    /// Reconstructs `Σ digits[i]·p^i`, failing on `u128` overflow.
    pub fn value(&self, p: PrimeModulus) -> Result<u128> {
        let mut acc: u128 = 0;
        for &d in self.digits.iter().rev() {
            acc = acc
                .checked_mul(p.get() as u128)
                .and_then(|v| v.checked_add(d as u128))
                .ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }
}

impl Ord for DigitString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.digits
            .len()
            .cmp(&other.digits.len())
            .then_with(|| self.digits.iter().rev().cmp(other.digits.iter().rev()))
    }
}

impl PartialOrd for DigitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn base_p_digits(mut a: u128, p: PrimeModulus) -> DigitString {
    let base = p.get() as u128;
    let mut digits = Vec::new();
    while a > 0 {
        digits.push((a % base) as u8);
        a /= base;
    }
    DigitString { digits }
}

fn digitwise(a: u128, b: u128, p: PrimeModulus, op: impl Fn(u8, u8) -> u8) -> Result<u128> {
    let da = base_p_digits(a, p);
    let db = base_p_digits(b, p);
    let n = da.len().max(db.len());
    let digits = (0..n).map(|i| op(da.digit(i), db.digit(i))).collect();
    DigitString::from_digits(digits).value(p)
}

/// Digitwise addition mod p, without carries (`a ⊕_p b`).
///
/// Only fails when the result does not fit in `u128`.
pub fn digitwise_add(a: u128, b: u128, p: PrimeModulus) -> Result<u128> {
    digitwise(a, b, p, |x, y| p.add(x, y))
}

/// Digitwise subtraction mod p, without borrows (`a ⊖_p b`).
pub fn digitwise_sub(a: u128, b: u128, p: PrimeModulus) -> Result<u128> {
    digitwise(a, b, p, |x, y| p.sub(x, y))
}

/// `⟨a, A⟩`: the mod-p sum of `a⟨i⟩·A⟨i⟩` over the rows of the column `column`.
/// Digits of `a` beyond the column height are ignored.
pub fn digit_inner_product(a: u128, column: &[u8], p: PrimeModulus) -> u8 {
    let digits = base_p_digits(a, p);
    column
        .iter()
        .enumerate()
        .fold(0u8, |acc, (i, &entry)| p.add(acc, p.mul(digits.digit(i), entry)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> PrimeModulus {
        PrimeModulus::new(n).unwrap()
    }

    #[test]
    fn rejects_composites() {
        for n in [0, 1, 4, 6, 9, 15, 21, 25, 256, 257] {
            assert!(PrimeModulus::new(n).is_err(), "{n}");
        }
        for n in [2, 3, 5, 7, 11, 13, 251] {
            assert!(PrimeModulus::new(n).is_ok(), "{n}");
        }
    }

    #[test]
    fn expansions() {
        assert_eq!(base_p_digits(7, p(3)).digits(), &[1, 2]);
        assert_eq!(base_p_digits(0, p(5)).digits(), &[] as &[u8]);
        assert_eq!(base_p_digits(13, p(3)).digits(), &[1, 1, 1]);
        assert_eq!(base_p_digits(13, p(3)).digit_sum(), 3);
    }

    #[test]
    fn digitwise_examples() {
        assert_eq!(digitwise_add(7, 13, p(3)).unwrap(), 11);
        assert_eq!(digitwise_add(42, 0, p(7)).unwrap(), 42);
        assert_eq!(digitwise_add(4, 4, p(5)).unwrap(), 3);
        assert_eq!(digitwise_sub(7, 13, p(3)).unwrap(), 21);
        assert_eq!(digitwise_sub(100, 100, p(3)).unwrap(), 0);
        assert_eq!(digitwise_sub(0, 1, p(3)).unwrap(), 2);
    }

    #[test]
    fn inner_product_examples() {
        assert_eq!(digit_inner_product(7, &[1, 1, 2], p(3)), 0);
        assert_eq!(digit_inner_product(0, &[1, 2, 2], p(3)), 0);
        // p^i against the unit column at i
        assert_eq!(digit_inner_product(25, &[0, 0, 1], p(5)), 1);
        // digits above the column height do not contribute
        assert_eq!(digit_inner_product(9 + 1, &[1, 0], p(3)), 1);
    }

    #[test]
    fn inverses() {
        for q in [2u32, 3, 5, 7, 11] {
            let m = p(q);
            for a in 1..q as u8 {
                assert_eq!(m.mul(a, m.inv(a)), 1);
            }
        }
    }

    #[test]
    fn digit_string_order_matches_value() {
        let m = p(3);
        for a in 0..200u128 {
            for b in 0..50u128 {
                assert_eq!(base_p_digits(a, m).cmp(&base_p_digits(b, m)), a.cmp(&b));
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        let m = p(251);
        assert_eq!(m.pow(100), Err(Error::Overflow));
        let big = DigitString::from_digits(vec![250; 40]);
        assert_eq!(big.value(m), Err(Error::Overflow));
    }
}
