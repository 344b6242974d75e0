//! Greedy lexicode generators: `w(a)`, the power-of-p-greedy `w⁻(a)`, the
//! linear combiner `w⁺(a)`, code materialization and puncturing.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{base_p_digits, DigitString, PrimeModulus};
use crate::search::{find_next, CodewordTable, Query};
use crate::vecspace::{
    hamming_distance, rank_to_vector, restrict, support, vector_rank, Basis, IndexSet, Vector,
};

/// Largest coordinate index (exclusive) a search may touch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SearchBudget {
    pub max_index: usize,
}

impl SearchBudget {
    pub const DEFAULT_MAX_INDEX: usize = 64;

    pub fn new(max_index: usize) -> Self {
        SearchBudget { max_index }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::new(Self::DEFAULT_MAX_INDEX)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Every word is chosen greedily.
    Greedy,
    /// Only words at powers of p are chosen greedily; the rest are their
    /// F_p-linear combinations.
    BGreedy,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Greedy => write!(f, "lex"),
            Variant::BGreedy => write!(f, "bminus"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CodeSpec {
    pub p: PrimeModulus,
    pub d: usize,
    pub basis: Basis,
    pub variant: Variant,
    pub budget: SearchBudget,
}

impl CodeSpec {
    pub fn new(p: PrimeModulus, d: usize, basis: Basis, variant: Variant) -> Result<Self> {
        if d < 2 {
            return Err(Error::DistanceTooSmall(d));
        }
        Ok(CodeSpec {
            p,
            d,
            basis,
            variant,
            budget: SearchBudget::default(),
        })
    }

    /// Shorthand for a greedy spec with a small prime.
    pub fn greedy(p: u32, d: usize, basis: Basis) -> Result<Self> {
        CodeSpec::new(PrimeModulus::new(p)?, d, basis, Variant::Greedy)
    }

    pub fn bgreedy(p: u32, d: usize, basis: Basis) -> Result<Self> {
        CodeSpec::new(PrimeModulus::new(p)?, d, basis, Variant::BGreedy)
    }

    pub fn with_budget(mut self, budget: SearchBudget) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }
}

/// An ordered list of codewords, `words[a]` being `w(a)` or `w⁻(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexCode {
    pub spec: CodeSpec,
    pub words: Vec<Vector>,
    pub support: IndexSet,
}

impl LexCode {
    /// Wraps an ordered word list, computing its support.
    pub fn from_words(spec: CodeSpec, words: Vec<Vector>) -> Self {
        let support = union_support(&words, spec.p);
        LexCode { spec, words, support }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// The rows `w(p^0), …, w(p^k)` (or their `w⁻` counterparts).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub spec: CodeSpec,
    pub gens: Vec<Vector>,
}

impl GeneratorSet {
    pub fn new(spec: CodeSpec, gens: Vec<Vector>) -> Self {
        GeneratorSet { spec, gens }
    }

    pub fn rows(&self) -> usize {
        self.gens.len()
    }

    pub fn p(&self) -> PrimeModulus {
        self.spec.p
    }

    /// Union of the standard supports of the rows.
    pub fn support(&self) -> IndexSet {
        union_support(&self.gens, self.spec.p)
    }

    /// `M_h`: the top basis index of each row (`None` for a zero row).
    pub fn top_indices(&self) -> Vec<Option<usize>> {
        self.gens
            .iter()
            .map(|g| {
                let r = vector_rank(g, self.spec.basis, self.spec.p);
                r.len().checked_sub(1)
            })
            .collect()
    }
}

fn union_support(words: &[Vector], p: PrimeModulus) -> IndexSet {
    words
        .iter()
        .flat_map(|w| support(w, Basis::Standard, p).as_slice().to_vec())
        .collect()
}

fn successor(rank: &DigitString, p: PrimeModulus) -> DigitString {
    let mut digits = rank.digits().to_vec();
    let mut i = 0;
    loop {
        if i == digits.len() {
            digits.push(1);
            break;
        }
        if digits[i] + 1 < p.get() {
            digits[i] += 1;
            break;
        }
        digits[i] = 0;
        i += 1;
    }
    DigitString::from_digits(digits)
}

fn search(
    table: &CodewordTable,
    spec: &CodeSpec,
    start: &DigitString,
    upper: Option<&DigitString>,
) -> Result<Option<Vector>> {
    let q = Query {
        p: spec.p,
        d: spec.d,
        basis: spec.basis,
        start,
        upper,
    };
    Ok(find_next(table, &q)?.map(|r| rank_to_vector(&r, spec.basis, spec.p)))
}

/// The `<_F`-smallest vector of rank `>= resume` at distance `>= d` from every
/// word in `existing`.
///
/// `resume` must not exceed the rank of the true answer; zero is always safe.
pub fn next_codeword(existing: &[Vector], spec: &CodeSpec, resume: &DigitString) -> Result<Vector> {
    let mut table = CodewordTable::new(spec.budget.max_index);
    for w in existing {
        table.push(w)?;
    }
    search(&table, spec, resume, None).map(|v| v.expect("unbounded search always finds a word"))
}

/// Builds `w(0), w(1), …` on demand, keeping every word found so far.
///
/// While the prefix built so far agrees with `w⁺`, a word at a non-power
/// index is searched only below `w⁺(a)`: in that situation `w⁺(a)` is itself
/// at distance `>= d` from all earlier words, so it bounds the answer.
#[derive(Clone, Debug)]
pub struct GreedyBuilder {
    spec: CodeSpec,
    words: Vec<Vector>,
    last_rank: DigitString,
    table: CodewordTable,
    linear_prefix: bool,
    first_mismatch: Option<usize>,
}

impl GreedyBuilder {
    pub fn new(spec: CodeSpec) -> Self {
        GreedyBuilder {
            spec,
            words: Vec::new(),
            last_rank: DigitString::zero(),
            table: CodewordTable::new(spec.budget.max_index),
            linear_prefix: true,
            first_mismatch: None,
        }
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn words(&self) -> &[Vector] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Smallest index built so far with `w(a) != w⁺(a)`.
    pub fn first_mismatch(&self) -> Option<usize> {
        self.first_mismatch
    }

    /// Makes sure `w(0..n)` exist.
    pub fn build_to(&mut self, n: usize) -> Result<()> {
        while self.words.len() < n {
            self.push_next()?;
        }
        Ok(())
    }

    pub fn word(&mut self, a: usize) -> Result<&Vector> {
        self.build_to(a + 1)?;
        Ok(&self.words[a])
    }

    /// `w⁺(a)` from the generators already built. Requires `w(p^i)` for every
    /// nonzero digit position of `a`.
    pub fn word_plus(&self, a: usize) -> Vector {
        let p = self.spec.p;
        let digits = base_p_digits(a as u128, p);
        let mut acc = Vector::zero();
        let mut power = 1usize;
        for &dgt in digits.digits() {
            if dgt != 0 {
                acc = acc.add(&self.words[power].scale(dgt, p), p);
            }
            power *= p.get() as usize;
        }
        acc
    }

    fn push_next(&mut self) -> Result<()> {
        let a = self.words.len();
        let p = self.spec.p;
        let w = if a == 0 {
            search(&self.table, &self.spec, &DigitString::zero(), None)?
                .expect("unbounded search always finds a word")
        } else {
            let start = successor(&self.last_rank, p);
            let plus_bound = if self.linear_prefix && !is_power_of(a, p.get() as usize) {
                Some(self.word_plus(a))
            } else {
                None
            };
            match plus_bound {
                Some(plus) => {
                    let plus_rank = vector_rank(&plus, self.spec.basis, p);
                    match search(&self.table, &self.spec, &start, Some(&plus_rank))? {
                        Some(v) => v,
                        None if plus_rank >= start && self.is_feasible(&plus) => plus,
                        None => search(&self.table, &self.spec, &start, None)?
                            .expect("unbounded search always finds a word"),
                    }
                }
                None => search(&self.table, &self.spec, &start, None)?
                    .expect("unbounded search always finds a word"),
            }
        };
        self.last_rank = vector_rank(&w, self.spec.basis, p);
        self.table.push(&w)?;
        self.words.push(w);
        if self.linear_prefix && a > 0 && self.word_plus(a) != self.words[a] {
            self.linear_prefix = false;
            self.first_mismatch = Some(a);
        }
        Ok(())
    }

    fn is_feasible(&self, v: &Vector) -> bool {
        self.words.iter().all(|w| hamming_distance(v, w) >= self.spec.d)
    }

    pub fn generators(&mut self, k: usize) -> Result<GeneratorSet> {
        let p = self.spec.p.get() as usize;
        let mut gens = Vec::with_capacity(k + 1);
        let mut power = 1usize;
        for _ in 0..=k {
            gens.push(self.word(power)?.clone());
            power *= p;
        }
        Ok(GeneratorSet::new(self.spec, gens))
    }
}

fn is_power_of(a: usize, p: usize) -> bool {
    let mut x = 1usize;
    while x < a {
        x *= p;
    }
    x == a
}

fn code_size(p: PrimeModulus, k: usize) -> Result<usize> {
    let n = p.pow(k as u32)?;
    usize::try_from(n).map_err(|_| Error::Overflow)
}

/// `Lex^k = {w(0), …, w(p^k - 1)}`.
pub fn lex_code(spec: &CodeSpec, k: usize) -> Result<LexCode> {
    let spec = spec.with_variant(Variant::Greedy);
    let mut builder = GreedyBuilder::new(spec);
    builder.build_to(code_size(spec.p, k)?)?;
    Ok(LexCode::from_words(spec, builder.words))
}

/// The rows `w⁻(p^0), …, w⁻(p^k)`.
pub fn bminus_generators(spec: &CodeSpec, k: usize) -> Result<GeneratorSet> {
    let spec = spec.with_variant(Variant::BGreedy);
    let p = spec.p;
    let mut table = CodewordTable::new(spec.budget.max_index);
    let mut words = vec![Vector::zero()];
    table.push(&words[0])?;
    let mut gens: Vec<Vector> = Vec::with_capacity(k + 1);
    let mut start = successor(&DigitString::zero(), p);
    for _ in 0..=k {
        let g = search(&table, &spec, &start, None)?.expect("unbounded search always finds a word");
        start = successor(&vector_rank(&g, spec.basis, p), p);
        let base = words.len();
        for alpha in 1..p.get() {
            let shift = g.scale(alpha, p);
            for b in 0..base {
                let w = words[b].add(&shift, p);
                table.push(&w)?;
                words.push(w);
            }
        }
        gens.push(g);
    }
    Ok(GeneratorSet::new(spec, gens))
}

/// `w⁺(a) = Σ a<i>·gens[i]`.
pub fn word_plus(a: u128, gens: &GeneratorSet) -> Result<Vector> {
    let p = gens.p();
    let digits = base_p_digits(a, p);
    if digits.len() > gens.rows() {
        return Err(Error::DigitOverflow { index: a, rows: gens.rows() });
    }
    Ok(digits
        .digits()
        .iter()
        .zip(&gens.gens)
        .filter(|(&dgt, _)| dgt != 0)
        .fold(Vector::zero(), |acc, (&dgt, g)| acc.add(&g.scale(dgt, p), p)))
}

/// All `p^rows` combinations `word_plus(a, gens)`, in index order.
pub fn bminus_code(gens: &GeneratorSet) -> Result<LexCode> {
    let spec = gens.spec.with_variant(Variant::BGreedy);
    let n = code_size(spec.p, gens.rows())?;
    let words = (0..n as u128)
        .map(|a| word_plus(a, gens))
        .collect::<Result<Vec<_>>>()?;
    Ok(LexCode::from_words(spec, words))
}

/// A code with its always-zero coordinates deleted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Punctured {
    pub p: PrimeModulus,
    /// Original coordinate index of each kept position.
    pub positions: IndexSet,
    pub words: Vec<Vector>,
}

impl Punctured {
    pub fn length(&self) -> usize {
        self.positions.len()
    }

    pub fn digit_strings(&self) -> Vec<String> {
        self.words
            .iter()
            .map(|w| w.to_digit_string(self.length()))
            .collect()
    }
}

/// `Res(code)`: restriction to the union of standard supports.
pub fn res_code(code: &LexCode) -> Punctured {
    let positions = code.support.clone();
    let words = code.words.iter().map(|w| restrict(w, &positions)).collect();
    Punctured {
        p: code.spec.p,
        positions,
        words,
    }
}

/// Restricts generator rows to their own support.
pub fn res_generators(gens: &GeneratorSet) -> (IndexSet, Vec<Vector>) {
    let s = gens.support();
    let rows = gens.gens.iter().map(|g| restrict(g, &s)).collect();
    (s, rows)
}
