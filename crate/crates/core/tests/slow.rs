use lexikit_core::analysis::{is_linear_lex, linear_params, recognize, weight_enumerator, CodeParams, NamedCode};
use lexikit_core::greedy::{lex_code, res_code, GreedyBuilder};
use lexikit_core::{Basis, CodeSpec};

/// Binary Golay code as `Res(Lex^12)` with `d = 8`. Builds 4096 words.
#[test]
#[ignore = "slow: builds 4096 binary words"]
fn binary_golay_lex12() {
    let spec = CodeSpec::greedy(2, 8, Basis::Standard).unwrap();
    let code = lex_code(&spec, 12).unwrap();
    let res = res_code(&code);
    assert_eq!(res.length(), 24);

    let mut counts = vec![0u64; 25];
    for w in &res.words {
        counts[w.weight()] += 1;
    }
    let mut expected = vec![0u64; 25];
    for (w, n) in [(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)] {
        expected[w] = n;
    }
    assert_eq!(counts, expected);

    assert!(is_linear_lex(&spec, 12).unwrap());
    let gens = GreedyBuilder::new(spec).generators(11).unwrap();
    assert_eq!(linear_params(&gens).unwrap(), CodeParams { n: 24, k: 12, dmin: 8 });
    assert_eq!(weight_enumerator(&gens).unwrap(), expected);
    assert_eq!(recognize(&gens).unwrap(), Some(NamedCode::BinaryGolay));
}
