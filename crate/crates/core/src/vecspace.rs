//! Finite-support vectors over F_p, the standard basis `E` and the one-step
//! modification `F(xi, eta)`, and the total order each basis induces.
//!
//! Vectors are stored in standard coordinates. Coordinates in `F(xi, eta)`
//! differ from the standard ones only at `eta`:
//! `x[eta; F] = x<eta> - x<xi>` and `x[i; F] = x<i>` elsewhere.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{DigitString, PrimeModulus};

/// Ordered basis of F_p^N: `E`, or `E` with `f_xi = e_xi + e_eta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Standard,
    Modified { xi: usize, eta: usize },
}

impl Basis {
    pub fn modified(xi: usize, eta: usize) -> Result<Self> {
        if xi == eta {
            return Err(Error::DegenerateBasis(xi));
        }
        Ok(Basis::Modified { xi, eta })
    }

    /// `(xi, eta)` for a modified basis.
    pub fn theta(&self) -> Option<(usize, usize)> {
        match *self {
            Basis::Standard => None,
            Basis::Modified { xi, eta } => Some((xi, eta)),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Standard => write!(f, "std"),
            Basis::Modified { xi, eta } => write!(f, "mod:{xi},{eta}"),
        }
    }
}

impl FromStr for Basis {
    type Err = Error;

    /// Parses `std` or `mod:XI,ETA`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "std" {
            return Ok(Basis::Standard);
        }
        let rest = s
            .strip_prefix("mod:")
            .ok_or_else(|| Error::Invalid(format!("basis must be `std` or `mod:XI,ETA`, got `{s}`")))?;
        let (xi, eta) = rest
            .split_once(',')
            .ok_or_else(|| Error::Invalid(format!("missing comma in `{s}`")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Invalid(format!("bad basis index `{t}`")))
        };
        Basis::modified(parse(xi)?, parse(eta)?)
    }
}

/// A vector of F_p^N in standard coordinates, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Vector {
    coords: Vec<u8>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { coords: Vec::new() }
    }

    pub fn new(coords: Vec<u8>, p: PrimeModulus) -> Result<Self> {
        if let Some(&value) = coords.iter().find(|&&c| c >= p.get()) {
            return Err(Error::ResidueOutOfRange { value, p: p.get() });
        }
        Ok(Self::from_trusted(coords))
    }

    /// Unit vector `e_i`.
    pub fn unit(i: usize) -> Self {
        let mut coords = vec![0; i + 1];
        coords[i] = 1;
        Vector { coords }
    }

    pub(crate) fn from_trusted(mut coords: Vec<u8>) -> Self {
        while coords.last() == Some(&0) {
            coords.pop();
        }
        Vector { coords }
    }

    /// Parses a digit string, least index first (`"11000"`).
    pub fn parse(s: &str, p: PrimeModulus) -> Result<Self> {
        let coords = s
            .chars()
            .map(|c| {
                c.to_digit(36)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Invalid(format!("bad digit `{c}`")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Vector::new(coords, p)
    }

    /// Standard coordinates up to the last nonzero one.
    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    /// `x<i>`.
    #[inline]
    pub fn coord(&self, i: usize) -> u8 {
        self.coords.get(i).copied().unwrap_or(0)
    }

    /// One past the highest nonzero standard coordinate.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.coords.iter().filter(|&&c| c != 0).count()
    }

    pub fn add(&self, other: &Vector, p: PrimeModulus) -> Vector {
        let n = self.len().max(other.len());
        Vector::from_trusted((0..n).map(|i| p.add(self.coord(i), other.coord(i))).collect())
    }

    pub fn sub(&self, other: &Vector, p: PrimeModulus) -> Vector {
        let n = self.len().max(other.len());
        Vector::from_trusted((0..n).map(|i| p.sub(self.coord(i), other.coord(i))).collect())
    }

    pub fn scale(&self, alpha: u8, p: PrimeModulus) -> Vector {
        Vector::from_trusted(self.coords.iter().map(|&c| p.mul(c, alpha)).collect())
    }

    /// Digit string of exactly `width` symbols (at least `len()`), least index first.
    pub fn to_digit_string(&self, width: usize) -> String {
        let width = width.max(self.len());
        (0..width)
            .map(|i| std::char::from_digit(self.coord(i) as u32, 36).unwrap_or('?'))
            .collect()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_digit_string(0))
    }
}

/// Sorted set of distinct coordinate indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new() -> Self {
        IndexSet(Vec::new())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        self.iter().chain(other.iter()).collect()
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        IndexSet(v)
    }
}

/// Coordinates of `v` with respect to `basis`, trailing zeros trimmed.
pub fn to_basis_coords(v: &Vector, basis: Basis, p: PrimeModulus) -> Vec<u8> {
    let mut c = v.coords.clone();
    if let Basis::Modified { xi, eta } = basis {
        let a = v.coord(xi);
        if a != 0 {
            if c.len() <= eta {
                c.resize(eta + 1, 0);
            }
            c[eta] = p.sub(c[eta], a);
        }
    }
    while c.last() == Some(&0) {
        c.pop();
    }
    c
}

/// Inverse of [`to_basis_coords`]. Residues must be `< p`.
pub fn from_basis_coords(coords: &[u8], basis: Basis, p: PrimeModulus) -> Vector {
    let mut c = coords.to_vec();
    if let Basis::Modified { xi, eta } = basis {
        let a = coords.get(xi).copied().unwrap_or(0);
        if a != 0 {
            if c.len() <= eta {
                c.resize(eta + 1, 0);
            }
            c[eta] = p.add(c[eta], a);
        }
    }
    Vector::from_trusted(c)
}

/// The order `<_F`: compare basis coordinates at the highest index where they differ.
pub fn compare(u: &Vector, v: &Vector, basis: Basis, p: PrimeModulus) -> Ordering {
    let cu = to_basis_coords(u, basis, p);
    let cv = to_basis_coords(v, basis, p);
    cu.len()
        .cmp(&cv.len())
        .then_with(|| cu.iter().rev().cmp(cv.iter().rev()))
}

/// Position of `v` in the `<_F` order: its basis coordinates read as base-p digits.
pub fn vector_rank(v: &Vector, basis: Basis, p: PrimeModulus) -> DigitString {
    DigitString::from_digits(to_basis_coords(v, basis, p))
}

/// The vector at position `rank` in the `<_F` order.
pub fn rank_to_vector(rank: &DigitString, basis: Basis, p: PrimeModulus) -> Vector {
    from_basis_coords(rank.digits(), basis, p)
}

/// Hamming distance in standard coordinates.
pub fn hamming_distance(u: &Vector, v: &Vector) -> usize {
    let n = u.len().max(v.len());
    (0..n).filter(|&i| u.coord(i) != v.coord(i)).count()
}

/// `supp_B(v)`: indices of nonzero coordinates in the requested basis.
pub fn support(v: &Vector, basis: Basis, p: PrimeModulus) -> IndexSet {
    to_basis_coords(v, basis, p)
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, _)| i)
        .collect()
}

/// `Res_S(v)`: keeps the coordinates indexed by `s`, in increasing order.
pub fn restrict(v: &Vector, s: &IndexSet) -> Vector {
    Vector::from_trusted(s.iter().map(|i| v.coord(i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::base_p_digits;

    fn p3() -> PrimeModulus {
        PrimeModulus::new(3).unwrap()
    }

    fn v(s: &str) -> Vector {
        Vector::parse(s, p3()).unwrap()
    }

    #[test]
    fn modified_coordinates() {
        let f01 = Basis::modified(0, 1).unwrap();
        // e_0 + e_1 is exactly f_0
        assert_eq!(to_basis_coords(&v("11"), f01, p3()), vec![1]);
        // e_0 = f_0 + 2 f_1
        assert_eq!(to_basis_coords(&v("1"), f01, p3()), vec![1, 2]);
        assert_eq!(from_basis_coords(&[1, 2], f01, p3()), v("1"));
        assert_eq!(to_basis_coords(&v("0121"), Basis::Standard, p3()), vec![0, 1, 2, 1]);

        let f13 = Basis::modified(1, 3).unwrap();
        assert_eq!(from_basis_coords(&[0, 1, 0, 0], f13, p3()), v("0101"));
        assert_eq!(from_basis_coords(&[1; 7], f13, p3()), v("1112111"));
        assert_eq!(to_basis_coords(&v("1112111"), f13, p3()), vec![1; 7]);
    }

    #[test]
    fn order_examples() {
        let e = Basis::Standard;
        assert_eq!(compare(&v("000"), &v("100"), e, p3()), Ordering::Less);
        assert_eq!(compare(&v("2201"), &v("2201"), e, p3()), Ordering::Equal);
        let f01 = Basis::modified(0, 1).unwrap();
        assert_eq!(compare(&Vector::unit(1), &Vector::unit(0), f01, p3()), Ordering::Less);
    }

    #[test]
    fn ranks() {
        let e = Basis::Standard;
        assert_eq!(rank_to_vector(&base_p_digits(3, p3()), e, p3()), v("010"));
        assert_eq!(rank_to_vector(&DigitString::zero(), e, p3()), Vector::zero());
        let f01 = Basis::modified(0, 1).unwrap();
        assert_eq!(rank_to_vector(&base_p_digits(1, p3()), f01, p3()), v("110"));
    }

    #[test]
    fn distance_support_restrict() {
        assert_eq!(hamming_distance(&v("11000"), &v("10100")), 2);
        assert_eq!(hamming_distance(&v("11000"), &v("11000")), 0);
        assert_eq!(hamming_distance(&v("11000"), &v("22000")), 2);

        assert_eq!(support(&v("10100"), Basis::Standard, p3()).as_slice(), &[0, 2]);
        assert!(support(&Vector::zero(), Basis::Standard, p3()).is_empty());
        let f01 = Basis::modified(0, 1).unwrap();
        assert_eq!(support(&v("11"), f01, p3()).as_slice(), &[0]);

        let s: IndexSet = [0, 1, 2].into_iter().collect();
        assert_eq!(restrict(&v("10100"), &s), v("101"));
        assert_eq!(restrict(&v("10100"), &IndexSet::new()), Vector::zero());
        let s: IndexSet = [1, 3].into_iter().collect();
        assert_eq!(restrict(&v("11000"), &s), v("1"));
        assert_eq!(restrict(&v("11000"), &s).to_digit_string(2), "10");
    }

    #[test]
    fn basis_parsing() {
        assert_eq!("std".parse::<Basis>().unwrap(), Basis::Standard);
        assert_eq!("mod:3,9".parse::<Basis>().unwrap(), Basis::Modified { xi: 3, eta: 9 });
        assert!("mod:3,3".parse::<Basis>().is_err());
        assert!("mod:3".parse::<Basis>().is_err());
        assert!("foo".parse::<Basis>().is_err());
        assert_eq!(Basis::Modified { xi: 0, eta: 9 }.to_string(), "mod:0,9");
    }

    #[test]
    fn residues_are_checked() {
        assert!(Vector::parse("13", p3()).is_err());
        assert_eq!(v("1200").len(), 2);
    }
}
