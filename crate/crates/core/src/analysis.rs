//! Linearity decisions, column profiles, Griesmer bounds, `π_d` profiles and
//! recognizers for the code families that greedy constructions produce.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{base_p_digits, digit_inner_product, PrimeModulus};
use crate::greedy::{CodeSpec, GeneratorSet, GreedyBuilder, LexCode, Variant};
use crate::vecspace::{hamming_distance, IndexSet, Vector};

/// A column of a generator matrix, top row first.
pub type Column = Vec<u8>;

/// `g_p(k, d) = Σ_{i<k} ⌈d / p^i⌉`.
pub fn griesmer_bound(p: PrimeModulus, k: usize, d: usize) -> usize {
    let p = p.get() as usize;
    let mut total = 0;
    let mut power = 1usize;
    for _ in 0..k {
        total += d.div_ceil(power);
        if power > d {
            // every further term is 1
            continue;
        }
        power = power.saturating_mul(p);
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub dmin: usize,
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.n, self.k, self.dmin)
    }
}

/// Column counts `cdn(A)` of a generator matrix over an ambient index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnProfile {
    pub height: usize,
    pub entries: BTreeMap<Column, usize>,
    pub ambient: IndexSet,
}

impl ColumnProfile {
    pub fn cdn(&self, column: &[u8]) -> usize {
        self.entries.get(column).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    /// Number of all-zero columns read inside the ambient set. Zero whenever
    /// the ambient set is the rows' own support.
    pub fn zero_columns(&self) -> usize {
        self.cdn(&vec![0; self.height])
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Profile over the union of the rows' standard supports.
pub fn column_profile(gens: &GeneratorSet) -> ColumnProfile {
    column_profile_over(&gens.gens, &gens.support())
}

pub fn column_profile_over(rows: &[Vector], ambient: &IndexSet) -> ColumnProfile {
    let mut entries = BTreeMap::new();
    for i in ambient.iter() {
        let col: Column = rows.iter().map(|r| r.coord(i)).collect();
        *entries.entry(col).or_insert(0) += 1;
    }
    ColumnProfile {
        height: rows.len(),
        entries,
        ambient: ambient.clone(),
    }
}

/// Whether the lowest-index nonzero entry of `column` is 1.
pub fn is_normalized(column: &[u8]) -> bool {
    column.iter().find(|&&x| x != 0) == Some(&1)
}

/// `V_m`: the normalized nonzero columns of height `m + 1`, optionally with
/// the zero column (`V*_m`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveSet {
    pub m: usize,
    pub members: Vec<Column>,
}

impl ProjectiveSet {
    pub fn new(p: PrimeModulus, m: usize, with_zero: bool) -> Self {
        let members = all_columns(p, m + 1)
            .into_iter()
            .filter(|c| is_normalized(c) || (with_zero && c.iter().all(|&x| x == 0)))
            .collect();
        ProjectiveSet { m, members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn all_columns(p: PrimeModulus, height: usize) -> Vec<Column> {
    let p = p.get();
    let mut out = vec![Vec::with_capacity(height)];
    for _ in 0..height {
        out = out
            .into_iter()
            .flat_map(|c| {
                (0..p).map(move |x| {
                    let mut c = c.clone();
                    c.push(x);
                    c
                })
            })
            .collect();
    }
    out
}

/// `d = p^(k-1)·(p·q + r)` with `0 <= r < p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PiParams {
    pub p: PrimeModulus,
    pub k: usize,
    pub d: usize,
    pub d_prime: usize,
    pub q: usize,
    pub r: usize,
}

impl PiParams {
    pub fn new(p: PrimeModulus, k: usize, d: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid("pi parameters need k >= 1".into()));
        }
        let scale = usize::try_from(p.pow(k as u32 - 1)?).map_err(|_| Error::Overflow)?;
        if d == 0 || d % scale != 0 {
            return Err(Error::Invalid(format!("{d} is not a multiple of {p}^{}", k - 1)));
        }
        let d_prime = d / scale;
        let pu = p.get() as usize;
        Ok(PiParams {
            p,
            k,
            d,
            d_prime,
            q: d_prime / pu,
            r: d_prime % pu,
        })
    }

    /// `q + r - p + 1`, the target count on the sum-zero top-level columns.
    pub fn slack(&self) -> i64 {
        self.q as i64 + self.r as i64 - self.p.get() as i64 + 1
    }

    /// `0 < r < p` and `q + r - p + 1 >= 2`.
    pub fn solomon_stiffler_hypotheses(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::HypothesisViolated(format!("r = 0 for d = {}", self.d)));
        }
        if self.slack() < 2 {
            return Err(Error::HypothesisViolated(format!(
                "q + r - p + 1 = {} is below 2",
                self.slack()
            )));
        }
        Ok(())
    }
}

/// The target profile value `π_d(A)`.
pub fn pi_value(column: &[u8], params: &PiParams) -> Result<usize> {
    if column.is_empty() || column.iter().all(|&x| x == 0) {
        return Err(Error::Invalid("pi is defined on nonzero columns".into()));
    }
    let l = column.len() - 1;
    if l > params.k {
        return Err(Error::Invalid(format!(
            "column height {} exceeds k + 1 = {}",
            column.len(),
            params.k + 1
        )));
    }
    if !is_normalized(column) {
        return Ok(0);
    }
    let p = params.p;
    let sum = column.iter().fold(0u8, |acc, &x| p.add(acc, x));
    if l < params.k || sum != 0 {
        let scale = usize::try_from(p.pow(l as u32)?).map_err(|_| Error::Overflow)?;
        Ok(params.d.div_ceil(scale))
    } else {
        let slack = params.slack();
        if slack < 0 {
            return Err(Error::NotApplicable(format!(
                "q + r - p + 1 = {slack} is negative for d = {}",
                params.d
            )));
        }
        Ok(slack as usize)
    }
}

/// Whether `cdn(A) = π_d(A)` on `subset` (default: every nonzero column of the
/// matrix height).
pub fn is_pi_distributed(
    gens: &GeneratorSet,
    params: &PiParams,
    subset: Option<&[Column]>,
) -> Result<bool> {
    let height = gens.rows();
    if height == 0 || height > params.k + 1 {
        return Err(Error::Invalid(format!(
            "matrix has {height} rows, pi_d needs between 1 and {}",
            params.k + 1
        )));
    }
    let profile = column_profile(gens);
    let default;
    let columns: &[Column] = match subset {
        Some(s) => s,
        None => {
            default = all_columns(gens.p(), height)
                .into_iter()
                .filter(|c| c.iter().any(|&x| x != 0))
                .collect::<Vec<_>>();
            &default
        }
    };
    for a in columns {
        if a.len() != height {
            return Err(Error::Invalid("column height does not match the matrix".into()));
        }
        if profile.cdn(a) != pi_value(a, params)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Σ cdn(A)` over the columns with `A<k> != ⟨a, A⟩`; for a profile of the
/// matrix with rows `x_0..x_k` this is `d(x_k, Σ_{i<k} a<i> x_i)` when `a < p^k`.
pub fn distance_from_profile(profile: &ColumnProfile, a: u128, p: PrimeModulus) -> usize {
    let k = profile.height.saturating_sub(1);
    profile
        .entries
        .iter()
        .filter(|(col, _)| col[k] != digit_inner_product(a, &col[..k], p))
        .map(|(_, &n)| n)
        .sum()
}

/// Rank over F_p of a list of vectors.
pub fn rank_mod_p(rows: &[Vector], p: PrimeModulus) -> usize {
    let width = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut m: Vec<Vec<u8>> = rows
        .iter()
        .map(|r| (0..width).map(|i| r.coord(i)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = p.inv(m[rank][col]);
        for x in m[rank].iter_mut() {
            *x = p.mul(*x, inv);
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                for c in 0..width {
                    let sub = p.mul(factor, m[rank][c]);
                    m[r][c] = p.sub(m[r][c], sub);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Calls `visit` on every combination `Σ c_i·rows[i]`, restricted to
/// `positions`, as a dense digit buffer. Walks the combinations in odometer
/// order, adding one row per step.
fn for_each_combination(rows: &[Vector], positions: &IndexSet, p: PrimeModulus, mut visit: impl FnMut(&[u8])) {
    let n = positions.len();
    let dense: Vec<Vec<u8>> = rows
        .iter()
        .map(|r| positions.iter().map(|i| r.coord(i)).collect())
        .collect();
    let mut current = vec![0u8; n];
    let mut counter = vec![0u8; rows.len()];
    visit(&current);
    loop {
        let mut i = 0;
        loop {
            if i == rows.len() {
                return;
            }
            for (c, &g) in current.iter_mut().zip(&dense[i]) {
                *c = p.add(*c, g);
            }
            counter[i] += 1;
            if counter[i] < p.get() {
                break;
            }
            counter[i] = 0;
            i += 1;
        }
        visit(&current);
    }
}

/// Weight distribution `A_w` of all `p^rows` combinations of the rows.
pub fn weight_enumerator(gens: &GeneratorSet) -> Result<Vec<u64>> {
    const MAX_ROWS: usize = 16;
    if gens.rows() > MAX_ROWS {
        return Err(Error::TooLarge(format!(
            "{} rows; weight enumeration is limited to {MAX_ROWS}",
            gens.rows()
        )));
    }
    let support = gens.support();
    let mut counts = vec![0u64; support.len() + 1];
    for_each_combination(&gens.gens, &support, gens.p(), |w| {
        counts[w.iter().filter(|&&x| x != 0).count()] += 1;
    });
    Ok(counts)
}

/// Minimum weight over the nonzero combinations of the rows.
pub fn min_distance_linear(gens: &GeneratorSet) -> Result<usize> {
    let enumerator = weight_enumerator(gens)?;
    enumerator
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, &n)| n > 0)
        .map(|(w, _)| w)
        .ok_or_else(|| Error::Degenerate("the rows span only the zero word".into()))
}

/// Minimum pairwise Hamming distance over the distinct words.
pub fn min_distance(code: &LexCode) -> Result<usize> {
    min_distance_words(&code.words)
}

pub fn min_distance_words(words: &[Vector]) -> Result<usize> {
    let mut seen = HashSet::new();
    let distinct: Vec<&Vector> = words.iter().filter(|w| seen.insert(*w)).collect();
    if distinct.len() < 2 {
        return Err(Error::Degenerate("fewer than two distinct words".into()));
    }
    let mut best = usize::MAX;
    for (i, u) in distinct.iter().enumerate() {
        for v in &distinct[i + 1..] {
            best = best.min(hamming_distance(u, v));
        }
    }
    Ok(best)
}

/// `[n, k, d]` of the code spanned by the rows, after puncturing.
pub fn linear_params(gens: &GeneratorSet) -> Result<CodeParams> {
    Ok(CodeParams {
        n: gens.support().len(),
        k: rank_mod_p(&gens.gens, gens.p()),
        dmin: min_distance_linear(gens)?,
    })
}

/// Answer of `max_linear_k`: proved exact, or linear at least up to the cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearDim {
    Finite(usize),
    AtLeast(usize),
}

impl fmt::Display for LinearDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinearDim::Finite(k) => write!(f, "{k}"),
            LinearDim::AtLeast(k) => write!(f, ">={k}"),
        }
    }
}

/// Smallest index where the greedy word and its linear combination differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub a: usize,
    pub word: Vector,
    pub word_plus: Vector,
}

/// Incremental linearity checks over one lazily built greedy sequence.
#[derive(Clone, Debug)]
pub struct LinearityProbe {
    builder: GreedyBuilder,
}

impl LinearityProbe {
    pub fn new(spec: &CodeSpec) -> Result<Self> {
        if spec.variant != Variant::Greedy {
            return Err(Error::Invalid("linearity probes need the greedy variant".into()));
        }
        Ok(LinearityProbe {
            builder: GreedyBuilder::new(*spec),
        })
    }

    pub fn builder(&self) -> &GreedyBuilder {
        &self.builder
    }

    pub fn builder_mut(&mut self) -> &mut GreedyBuilder {
        &mut self.builder
    }

    fn size(&self, k: usize) -> Result<usize> {
        let n = self.builder.spec().p.pow(k as u32)?;
        usize::try_from(n).map_err(|_| Error::Overflow)
    }

    /// Whether `Lex^k` is linear: `w(a) = w⁺(a)` for every `a < p^k` whose
    /// base-p digit sum is at most `p - 1`.
    pub fn is_linear(&mut self, k: usize) -> Result<bool> {
        let end = self.size(k)?;
        let p = self.builder.spec().p;
        for a in 1..end {
            if base_p_digits(a as u128, p).digit_sum() > p.as_u32() - 1 {
                continue;
            }
            let w = self.builder.word(a)?.clone();
            if w != self.builder.word_plus(a) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn max_linear_k(&mut self, cap: usize) -> Result<LinearDim> {
        for k in 1..=cap {
            if !self.is_linear(k)? {
                return Ok(LinearDim::Finite(k - 1));
            }
        }
        Ok(LinearDim::AtLeast(cap))
    }

    /// Smallest `a < p^k` with `w(a) != w⁺(a)`, if any.
    pub fn witness(&mut self, k: usize) -> Result<Option<Witness>> {
        let end = self.size(k)?;
        for a in 1..end {
            let w = self.builder.word(a)?.clone();
            let plus = self.builder.word_plus(a);
            if w != plus {
                return Ok(Some(Witness {
                    a,
                    word: w,
                    word_plus: plus,
                }));
            }
        }
        Ok(None)
    }
}

pub fn is_linear_lex(spec: &CodeSpec, k: usize) -> Result<bool> {
    LinearityProbe::new(spec)?.is_linear(k)
}

/// `k_{F,d}` up to `cap`.
pub fn max_linear_k(spec: &CodeSpec, cap: usize) -> Result<LinearDim> {
    LinearityProbe::new(spec)?.max_linear_k(cap)
}

pub fn nonlinearity_witness(spec: &CodeSpec, k: usize) -> Result<Option<Witness>> {
    LinearityProbe::new(spec)?.witness(k)
}

/// Outcome of a family check: observed and predicted parameters plus the verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCheck {
    pub holds: bool,
    pub params: CodeParams,
    pub expected: CodeParams,
    /// `g_p(k, dmin)` for the observed parameters.
    pub griesmer: usize,
}

impl FamilyCheck {
    pub fn meets_griesmer(&self) -> bool {
        self.params.n == self.griesmer
    }
}

fn projective_count(p: PrimeModulus, k: usize) -> Result<usize> {
    let pk = usize::try_from(p.pow(k as u32)?).map_err(|_| Error::Overflow)?;
    Ok((pk - 1) / (p.get() as usize - 1))
}

/// Whether the punctured rows are `d'` copies of the `[(p^k-1)/(p-1), k, p^(k-1)]`
/// simplex code, with `k` the number of rows.
pub fn check_simplex_repetition(gens: &GeneratorSet, d_prime: usize) -> Result<FamilyCheck> {
    let p = gens.p();
    let k = gens.rows();
    if k == 0 {
        return Err(Error::HypothesisViolated("no generator rows".into()));
    }
    if d_prime < 2 {
        return Err(Error::HypothesisViolated(format!("d' = {d_prime} must be at least 2")));
    }
    let scale = usize::try_from(p.pow(k as u32 - 1)?).map_err(|_| Error::Overflow)?;
    if gens.spec.d != scale * d_prime {
        return Err(Error::HypothesisViolated(format!(
            "d = {} is not {p}^{}·{d_prime}",
            gens.spec.d,
            k - 1
        )));
    }
    let expected = CodeParams {
        n: projective_count(p, k)? * d_prime,
        k,
        dmin: scale * d_prime,
    };
    let params = linear_params(gens)?;
    let profile = column_profile(gens);
    let simplex = ProjectiveSet::new(p, k - 1, false);
    let columns_ok = profile.entries.len() == simplex.len()
        && simplex.members.iter().all(|a| profile.cdn(a) == d_prime);
    Ok(FamilyCheck {
        holds: columns_ok && params == expected,
        griesmer: griesmer_bound(p, params.k, params.dmin),
        params,
        expected,
    })
}

/// Whether the rows `w⁻(p^0..p^k)` span the predicted Solomon–Stiffler code
/// and are `π_d`-distributed.
pub fn check_solomon_stiffler(gens: &GeneratorSet, params: &PiParams) -> Result<FamilyCheck> {
    let p = params.p;
    params.solomon_stiffler_hypotheses()?;
    if gens.rows() != params.k + 1 {
        return Err(Error::HypothesisViolated(format!(
            "expected {} rows, got {}",
            params.k + 1,
            gens.rows()
        )));
    }
    if gens.spec.d != params.d {
        return Err(Error::HypothesisViolated(format!(
            "generators were built for d = {}, parameters say d = {}",
            gens.spec.d, params.d
        )));
    }
    let expected = CodeParams {
        n: projective_count(p, params.k)? * params.d_prime + params.q + 1,
        k: params.k + 1,
        dmin: params.d,
    };
    let observed = linear_params(gens)?;
    let distributed = is_pi_distributed(gens, params, None)?;
    Ok(FamilyCheck {
        holds: distributed && observed == expected,
        griesmer: griesmer_bound(p, observed.k, observed.dmin),
        params: observed,
        expected,
    })
}

/// Named codes identified by parameters plus weight enumerator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedCode {
    TernaryGolay,
    BinaryGolay,
}

const TERNARY_GOLAY_WEIGHTS: [(usize, u64); 4] = [(0, 1), (6, 264), (9, 440), (12, 24)];
const BINARY_GOLAY_WEIGHTS: [(usize, u64); 5] = [(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)];

fn matches_weights(enumerator: &[u64], expected: &[(usize, u64)]) -> bool {
    let nonzero: Vec<(usize, u64)> = enumerator
        .iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(w, &n)| (w, n))
        .collect();
    nonzero == expected
}

/// Recognizes the extended Golay codes (`[12,6,6]_3`, `[24,12,8]_2`).
pub fn recognize(gens: &GeneratorSet) -> Result<Option<NamedCode>> {
    let p = gens.p().get();
    let n = gens.support().len();
    let candidates: &[(NamedCode, u8, usize, &[(usize, u64)])] = &[
        (NamedCode::TernaryGolay, 3, 12, &TERNARY_GOLAY_WEIGHTS),
        (NamedCode::BinaryGolay, 2, 24, &BINARY_GOLAY_WEIGHTS),
    ];
    for &(name, cp, cn, weights) in candidates {
        if p == cp && n == cn && rank_mod_p(&gens.gens, gens.p()) == gens.rows() {
            if matches_weights(&weight_enumerator(gens)?, weights) {
                return Ok(Some(name));
            }
        }
    }
    Ok(None)
}
