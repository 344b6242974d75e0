use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use lexikit_core::analysis::{
    self, check_simplex_repetition, check_solomon_stiffler, column_profile, griesmer_bound,
    is_pi_distributed, min_distance_linear, min_distance_words, recognize, weight_enumerator,
    CodeParams, FamilyCheck, LinearDim, LinearityProbe, NamedCode, PiParams,
};
use lexikit_core::greedy::{bminus_code, bminus_generators, GreedyBuilder};
use lexikit_core::oracle::{closure_is_linear, naive_words};
use lexikit_core::vecspace::restrict;
use lexikit_core::{
    Basis, CodeSpec, Error, GeneratorSet, IndexSet, LexCode, PrimeModulus, SearchBudget, Variant,
    Vector,
};

use crate::{CodeArgs, Engine, Family, TableName, VariantArg};

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(Error),
    /// The command ran but its verdict was negative.
    Failed(String),
    /// Some table rows failed; `budget` when any of them hit the search budget.
    Rows { budget: bool },
}

impl Failure {
    pub fn message(&self) -> Option<String> {
        match self {
            Failure::Usage(m) | Failure::Failed(m) => Some(m.clone()),
            Failure::Core(e) => Some(e.to_string()),
            Failure::Rows { .. } => Some("some table rows failed".into()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

pub type Outcome = Result<Report, (Option<Report>, Failure)>;

fn fail<T>(e: impl Into<Failure>) -> Result<T, (Option<Report>, Failure)> {
    Err((None, e.into()))
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return fail(e),
        }
    };
}

#[derive(Debug, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Report {
    Gen(GenReport),
    Lindim(LindimReport),
    Analyze(AnalyzeReport),
    Check(CheckReport),
    Table(TableReport),
}

#[derive(Debug, Serialize)]
pub struct SpecEcho {
    pub p: u32,
    pub d: usize,
    pub basis: String,
    pub variant: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

impl SpecEcho {
    fn new(spec: &CodeSpec, k: Option<usize>) -> Self {
        SpecEcho {
            p: spec.p.as_u32(),
            d: spec.d,
            basis: spec.basis.to_string(),
            variant: spec.variant.to_string(),
            k,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ParamsOut {
    pub n: usize,
    /// Dimension, when the code is linear.
    pub k: Option<usize>,
    pub dmin: Option<usize>,
}

impl From<CodeParams> for ParamsOut {
    fn from(c: CodeParams) -> Self {
        ParamsOut { n: c.n, k: Some(c.k), dmin: Some(c.dmin) }
    }
}

#[derive(Debug, Serialize)]
pub struct GenReport {
    pub spec: SpecEcho,
    pub engine: String,
    pub punctured: bool,
    pub length: usize,
    pub support: Vec<usize>,
    pub words: Vec<String>,
    pub generators: Vec<String>,
    pub linear: bool,
    pub params: ParamsOut,
}

#[derive(Debug, Serialize)]
pub struct WitnessOut {
    pub a: usize,
    pub word: String,
    pub word_plus: String,
}

#[derive(Debug, Serialize)]
pub struct LindimOut {
    pub kind: String,
    pub k: usize,
}

impl From<LinearDim> for LindimOut {
    fn from(d: LinearDim) -> Self {
        match d {
            LinearDim::Finite(k) => LindimOut { kind: "finite".into(), k },
            LinearDim::AtLeast(k) => LindimOut { kind: "at_least".into(), k },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct LindimReport {
    pub spec: SpecEcho,
    pub cap: usize,
    pub result: LindimOut,
    pub witness: Option<WitnessOut>,
}

#[derive(Debug, Serialize)]
pub struct GriesmerOut {
    pub bound: usize,
    pub gap: usize,
}

#[derive(Debug, Serialize)]
pub struct PiOut {
    pub k: Option<usize>,
    pub q: Option<usize>,
    pub r: Option<usize>,
    pub d_prime: Option<usize>,
    pub distributed: Option<bool>,
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub spec: SpecEcho,
    pub length: usize,
    pub support: Vec<usize>,
    pub generators: Vec<String>,
    pub linear: bool,
    pub params: ParamsOut,
    pub griesmer: Option<GriesmerOut>,
    /// Column (top row first) to count.
    pub profile: BTreeMap<String, usize>,
    pub zero_columns: usize,
    pub named: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pi: Option<PiOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u64>>,
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub family: String,
    pub spec: SpecEcho,
    pub d_prime: usize,
    pub q: Option<usize>,
    pub r: Option<usize>,
    pub holds: bool,
    pub params: ParamsOut,
    pub expected: ParamsOut,
    pub griesmer: GriesmerOut,
    pub support: Vec<usize>,
    pub generators: Vec<String>,
}

#[derive(Debug, Serialize, Clone)]
pub struct TableRow {
    pub basis: String,
    pub xi: Option<usize>,
    pub eta: Option<usize>,
    pub kind: String,
    pub k: Option<usize>,
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct TableReport {
    pub name: String,
    pub p: u32,
    pub d: usize,
    pub cap: usize,
    pub rows: Vec<TableRow>,
}

fn spec_from(args: &CodeArgs, budget: SearchBudget, variant: Variant) -> Result<CodeSpec, Failure> {
    let p = PrimeModulus::new(args.p)?;
    Ok(CodeSpec::new(p, args.d, args.basis, variant)?.with_budget(budget))
}

fn variant_of(v: VariantArg) -> Variant {
    match v {
        VariantArg::Lex => Variant::Greedy,
        VariantArg::Bminus => Variant::BGreedy,
    }
}

/// Renders words either punctured to `support` or as full standard
/// coordinates padded to a common width.
fn render_words(words: &[Vector], support: &IndexSet, punctured: bool) -> (usize, Vec<String>) {
    if punctured {
        let n = support.len();
        (n, words.iter().map(|w| restrict(w, support).to_digit_string(n)).collect())
    } else {
        let n = support.as_slice().last().map_or(0, |&i| i + 1);
        (n, words.iter().map(|w| w.to_digit_string(n)).collect())
    }
}

fn power(p: PrimeModulus, k: usize) -> Result<usize, Failure> {
    let n = p.pow(k as u32)?;
    usize::try_from(n).map_err(|_| Failure::Core(Error::Overflow))
}

/// A materialized code together with its power-of-p rows.
struct Built {
    spec: CodeSpec,
    code: LexCode,
    gens: GeneratorSet,
    linear: bool,
}

fn build(spec: CodeSpec, k: usize, engine: Engine) -> Result<Built, Failure> {
    let size = power(spec.p, k)?;
    match (spec.variant, engine) {
        (Variant::Greedy, Engine::Search) => {
            let mut builder = GreedyBuilder::new(spec);
            builder.build_to(size)?;
            let gens = if k == 0 {
                GeneratorSet::new(spec, Vec::new())
            } else {
                builder.generators(k - 1)?
            };
            let linear = builder.first_mismatch().is_none();
            let code = LexCode::from_words(spec, builder.words().to_vec());
            Ok(Built { spec, code, gens, linear })
        }
        (Variant::Greedy, Engine::Naive) => {
            let words = naive_words(&spec, size, None)?;
            let p = spec.p.get() as usize;
            let rows = (0..k).map(|i| words[p.pow(i as u32)].clone()).collect();
            let gens = GeneratorSet::new(spec, rows);
            let code = LexCode::from_words(spec, words);
            let linear = closure_is_linear(&code);
            Ok(Built { spec, code, gens, linear })
        }
        (Variant::BGreedy, Engine::Search) => {
            let gens = if k == 0 {
                GeneratorSet::new(spec, Vec::new())
            } else {
                bminus_generators(&spec, k - 1)?
            };
            let code = bminus_code(&gens)?;
            Ok(Built { spec, code, gens, linear: true })
        }
        (Variant::BGreedy, Engine::Naive) => Err(Failure::Usage(
            "the naive engine only builds the greedy variant".into(),
        )),
    }
}

fn params_of(b: &Built) -> Result<ParamsOut, Failure> {
    let n = b.code.support.len();
    if b.linear {
        if b.gens.rows() == 0 {
            return Ok(ParamsOut { n, k: Some(0), dmin: None });
        }
        let k = analysis::rank_mod_p(&b.gens.gens, b.spec.p);
        let dmin = match min_distance_linear(&b.gens) {
            Ok(d) => Some(d),
            Err(Error::Degenerate(_)) => None,
            Err(e) => return Err(e.into()),
        };
        Ok(ParamsOut { n, k: Some(k), dmin })
    } else {
        let dmin = match min_distance_words(&b.code.words) {
            Ok(d) => Some(d),
            Err(Error::Degenerate(_)) => None,
            Err(e) => return Err(e.into()),
        };
        Ok(ParamsOut { n, k: None, dmin })
    }
}

pub fn run_generate(
    args: &CodeArgs,
    budget: SearchBudget,
    k: usize,
    variant: VariantArg,
    res: bool,
    engine: Engine,
) -> Outcome {
    let spec = tri!(spec_from(args, budget, variant_of(variant)));
    let built = tri!(build(spec, k, engine));
    let support = built.code.support.clone();
    let (length, words) = render_words(&built.code.words, &support, res);
    let (_, generators) = render_words(&built.gens.gens, &support, res);
    let params = tri!(params_of(&built));
    Ok(Report::Gen(GenReport {
        spec: SpecEcho::new(&spec, Some(k)),
        engine: match engine {
            Engine::Search => "search".into(),
            Engine::Naive => "naive".into(),
        },
        punctured: res,
        length,
        support: support.as_slice().to_vec(),
        words,
        generators,
        linear: built.linear,
        params,
    }))
}

fn default_cap(p: u32) -> usize {
    if p >= 5 {
        3
    } else {
        7
    }
}

pub fn run_lindim(args: &CodeArgs, budget: SearchBudget, cap: Option<usize>) -> Outcome {
    let spec = tri!(spec_from(args, budget, Variant::Greedy));
    let cap = cap.unwrap_or_else(|| default_cap(args.p));
    let mut probe = tri!(LinearityProbe::new(&spec));
    let result = tri!(probe.max_linear_k(cap));
    let witness = match result {
        LinearDim::Finite(k) => tri!(probe.witness(k + 1)).map(|w| {
            let width = w.word.len().max(w.word_plus.len());
            WitnessOut {
                a: w.a,
                word: w.word.to_digit_string(width),
                word_plus: w.word_plus.to_digit_string(width),
            }
        }),
        LinearDim::AtLeast(_) => None,
    };
    Ok(Report::Lindim(LindimReport {
        spec: SpecEcho::new(&spec, None),
        cap,
        result: result.into(),
        witness,
    }))
}

fn column_string(col: &[u8]) -> String {
    col.iter()
        .map(|&x| char::from_digit(x as u32, 36).unwrap_or('?'))
        .collect()
}

fn named_string(n: NamedCode) -> String {
    match n {
        NamedCode::TernaryGolay => "ternary-golay".into(),
        NamedCode::BinaryGolay => "binary-golay".into(),
    }
}

fn pi_report(gens: &GeneratorSet, p: PrimeModulus, d: usize) -> PiOut {
    let rows = gens.rows();
    let empty = |error: String| PiOut {
        k: None,
        q: None,
        r: None,
        d_prime: None,
        distributed: None,
        error: Some(error),
    };
    if rows < 2 {
        return empty("pi_d needs at least two generator rows".into());
    }
    let params = match PiParams::new(p, rows - 1, d) {
        Ok(params) => params,
        Err(e) => return empty(e.to_string()),
    };
    let (distributed, error) = match is_pi_distributed(gens, &params, None) {
        Ok(v) => (Some(v), None),
        Err(e) => (None, Some(e.to_string())),
    };
    PiOut {
        k: Some(params.k),
        q: Some(params.q),
        r: Some(params.r),
        d_prime: Some(params.d_prime),
        distributed,
        error,
    }
}

pub fn run_analyze(
    args: &CodeArgs,
    budget: SearchBudget,
    k: usize,
    variant: VariantArg,
    pi_check: bool,
    weights: bool,
) -> Outcome {
    let spec = tri!(spec_from(args, budget, variant_of(variant)));
    let built = tri!(build(spec, k, Engine::Search));
    let support = built.code.support.clone();
    let (length, generators) = render_words(&built.gens.gens, &support, true);
    let params = tri!(params_of(&built));
    let griesmer = match (&params.k, &params.dmin) {
        (Some(dim), Some(dmin)) if *dim > 0 => {
            let bound = griesmer_bound(spec.p, *dim, *dmin);
            Some(GriesmerOut { bound, gap: params.n.saturating_sub(bound) })
        }
        _ => None,
    };
    let profile = column_profile(&built.gens);
    let zero_columns = profile.zero_columns();
    let profile_map = profile
        .entries
        .iter()
        .map(|(col, &n)| (column_string(col), n))
        .collect();
    let named = if built.linear && built.gens.rows() > 0 {
        tri!(recognize(&built.gens)).map(named_string)
    } else {
        None
    };
    let pi = pi_check.then(|| pi_report(&built.gens, spec.p, spec.d));
    let weights = if weights {
        if built.linear && built.gens.rows() > 0 {
            Some(tri!(weight_enumerator(&built.gens)))
        } else {
            let mut counts = vec![0u64; support.len() + 1];
            for w in &built.code.words {
                counts[w.weight()] += 1;
            }
            Some(counts)
        }
    } else {
        None
    };
    Ok(Report::Analyze(AnalyzeReport {
        spec: SpecEcho::new(&spec, Some(k)),
        length,
        support: support.as_slice().to_vec(),
        generators,
        linear: built.linear,
        params,
        griesmer,
        profile: profile_map,
        zero_columns,
        named,
        pi,
        weights,
    }))
}

#[allow(clippy::too_many_arguments)]
pub fn run_check(
    family: Family,
    p: u32,
    k: usize,
    d_prime: Option<usize>,
    q: Option<usize>,
    r: Option<usize>,
    basis: Basis,
    budget: SearchBudget,
) -> Outcome {
    let modulus = tri!(PrimeModulus::new(p));
    if k == 0 {
        return fail(Failure::Usage("--k must be at least 1".into()));
    }
    let scale = tri!(power(modulus, k - 1));
    let (d_prime, name) = match (family, d_prime, q, r) {
        (Family::Simplex, Some(dp), None, None) => (dp, "simplex"),
        (Family::SolomonStiffler, None, Some(q), Some(r)) => {
            if r >= p as usize {
                return fail(Error::HypothesisViolated(format!("r = {r} must be below p = {p}")));
            }
            (p as usize * q + r, "solomon-stiffler")
        }
        (Family::Simplex, ..) => return fail(Failure::Usage("simplex needs --d-prime only".into())),
        (Family::SolomonStiffler, ..) => {
            return fail(Failure::Usage("solomon-stiffler needs --q and --r only".into()))
        }
    };
    let d = scale * d_prime;
    let (check, gens, q, r): (FamilyCheck, GeneratorSet, Option<usize>, Option<usize>) = match family {
        Family::Simplex => {
            if d_prime < 2 {
                return fail(Error::HypothesisViolated(format!("d' = {d_prime} must be at least 2")));
            }
            let spec = tri!(CodeSpec::new(modulus, d, basis, Variant::BGreedy)).with_budget(budget);
            let gens = tri!(bminus_generators(&spec, k - 1));
            (tri!(check_simplex_repetition(&gens, d_prime)), gens, None, None)
        }
        Family::SolomonStiffler => {
            let params = tri!(PiParams::new(modulus, k, d));
            tri!(params.solomon_stiffler_hypotheses());
            let spec = tri!(CodeSpec::new(modulus, d, basis, Variant::BGreedy)).with_budget(budget);
            let gens = tri!(bminus_generators(&spec, k));
            let check = tri!(check_solomon_stiffler(&gens, &params));
            (check, gens, Some(params.q), Some(params.r))
        }
    };
    let support = gens.support();
    let (_, generators) = render_words(&gens.gens, &support, true);
    let report = Report::Check(CheckReport {
        family: name.into(),
        spec: SpecEcho::new(&gens.spec, Some(k)),
        d_prime,
        q,
        r,
        holds: check.holds,
        params: check.params.into(),
        expected: check.expected.into(),
        griesmer: GriesmerOut {
            bound: check.griesmer,
            gap: check.params.n.saturating_sub(check.griesmer),
        },
        support: support.as_slice().to_vec(),
        generators,
    });
    if check.holds {
        Ok(report)
    } else {
        Err((Some(report), Failure::Failed(format!("{name} check did not hold"))))
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::SearchBudgetExceeded { .. } => "budget",
        Error::Overflow | Error::DigitOverflow { .. } => "overflow",
        Error::TooLarge(_) => "too-large",
        _ => "error",
    }
}

struct Grid {
    name: &'static str,
    p: u32,
    d: usize,
    cap: usize,
    xi_max: usize,
    eta_max: usize,
}

fn grid(name: TableName) -> Grid {
    match name {
        TableName::TernaryD6 => Grid { name: "thm1.4", p: 3, d: 6, cap: 7, xi_max: 10, eta_max: 12 },
        TableName::P5d2 => Grid { name: "p5d2", p: 5, d: 2, cap: 3, xi_max: 7, eta_max: 8 },
        TableName::P5d5 => Grid { name: "p5d5", p: 5, d: 5, cap: 3, xi_max: 7, eta_max: 8 },
    }
}

pub fn run_table(name: TableName, jobs: Option<usize>, budget: SearchBudget) -> Outcome {
    let g = grid(name);
    let mut bases = vec![Basis::Standard];
    for xi in 0..=g.xi_max {
        for eta in 0..=g.eta_max {
            if xi != eta {
                bases.push(tri!(Basis::modified(xi, eta)));
            }
        }
    }
    let cell = |basis: &Basis| -> (TableRow, Option<Error>) {
        let (xi, eta) = match basis.theta() {
            Some((x, e)) => (Some(x), Some(e)),
            None => (None, None),
        };
        let result = CodeSpec::greedy(g.p, g.d, *basis)
            .map(|s| s.with_budget(budget))
            .and_then(|s| analysis::max_linear_k(&s, g.cap));
        let mut row = TableRow {
            basis: basis.to_string(),
            xi,
            eta,
            kind: String::new(),
            k: None,
            error: None,
        };
        match result {
            Ok(dim) => {
                let out = LindimOut::from(dim);
                row.kind = out.kind;
                row.k = Some(out.k);
                (row, None)
            }
            Err(e) => {
                row.kind = "error".into();
                row.error = Some(format!("{}: {e}", error_kind(&e)));
                (row, Some(e))
            }
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs.unwrap_or(0)).build() {
        Ok(pool) => pool,
        Err(e) => return fail(Failure::Usage(format!("cannot start {jobs:?} workers: {e}"))),
    };
    let cells: Vec<(TableRow, Option<Error>)> = pool.install(|| bases.par_iter().map(cell).collect());
    let budget_hit = cells
        .iter()
        .any(|(_, e)| matches!(e, Some(Error::SearchBudgetExceeded { .. })));
    let any_failed = cells.iter().any(|(_, e)| e.is_some());
    let report = Report::Table(TableReport {
        name: g.name.into(),
        p: g.p,
        d: g.d,
        cap: g.cap,
        rows: cells.into_iter().map(|(row, _)| row).collect(),
    });
    if any_failed {
        Err((Some(report), Failure::Rows { budget: budget_hit }))
    } else {
        Ok(report)
    }
}
