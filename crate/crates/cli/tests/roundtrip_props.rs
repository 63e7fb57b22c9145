//! `parse ∘ format` is the identity on syntax trees, and formatting is
//! idempotent on the shipped corpus.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use psicalc::CRational;
use psicalc_cli::ast::*;
use psicalc_cli::parser::parse_syntax;
use psicalc_cli::{format_document, parse_document};

fn rat() -> impl Strategy<Value = BigRational> {
    (-40i64..40, 1i64..9).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

fn scalar() -> impl Strategy<Value = CRational> {
    (rat(), prop_oneof![3 => Just(None), 1 => rat().prop_map(Some)])
        .prop_map(|(re, im)| CRational::new(re, im.unwrap_or_else(|| BigRational::from_integer(0.into()))))
}

fn name() -> impl Strategy<Value = String> {
    "[a-g][a-z0-9_]{0,4}(-[a-z]{1,3})?"
}

fn term(n: usize) -> impl Strategy<Value = TermAst> {
    (scalar(), prop::collection::vec(0u32..4, n), scalar())
        .prop_map(|(coeff, alpha, exponent)| TermAst { pos: Pos::default(), coeff, alpha, exponent })
}

fn terms(n: usize) -> impl Strategy<Value = Vec<TermAst>> {
    prop::collection::vec(term(n), 0..4)
}

fn symbol_stmt(n: usize) -> impl Strategy<Value = SymbolStmt> {
    let p = Pos::default();
    prop_oneof![
        scalar().prop_map(move |a| SymbolStmt::Order(p, a)),
        Just(SymbolStmt::Cutoff(p, CutoffAst::Sharp)),
        prop::option::of(scalar()).prop_map(move |r| SymbolStmt::Cutoff(p, CutoffAst::Spline(r))),
        (0u32..5, prop::collection::vec(term(n), 1..4)).prop_map(move |(j, t)| SymbolStmt::Layer(p, j, t)),
        terms(n).prop_map(move |t| SymbolStmt::Poly(p, t)),
        (prop::collection::vec((0u32..5, 1u32..4), 1..3), terms(n)).prop_map(move |(fs, t)| {
            let fs = fs.into_iter().map(|(derivative, power)| CutFactor { derivative, power }).collect();
            SymbolStmt::Part(p, fs, t)
        }),
        terms(n).prop_map(move |t| SymbolStmt::Remainder(p, t)),
    ]
}

fn reference() -> impl Strategy<Value = Reference> {
    name().prop_map(|name| Reference { pos: Pos::default(), name })
}

fn family_stmt(n: usize) -> impl Strategy<Value = FamilyStmt> {
    let p = Pos::default();
    prop_oneof![
        reference().prop_map(FamilyStmt::Base),
        reference().prop_map(FamilyStmt::Remainder),
        scalar().prop_map(move |b| FamilyStmt::Beta(p, b)),
        scalar().prop_map(move |a| FamilyStmt::Order(p, a)),
        (0u32..4, prop::collection::vec((0u32..4, terms(n)), 0..3)).prop_map(move |(j, cs)| FamilyStmt::Profile(p, j, cs)),
    ]
}

fn pair(n: usize) -> impl Strategy<Value = PairAst> {
    let ct = (scalar(), prop::collection::vec(0u32..3, n), 0u32..4)
        .prop_map(|(coeff, gamma, rate)| CoeffTermAst { pos: Pos::default(), coeff, gamma, rate });
    (reference(), prop::collection::vec(ct, 1..3)).prop_map(|(symbol, coefficient)| PairAst { symbol, coefficient })
}

fn config_stmt() -> impl Strategy<Value = ConfigStmt> {
    let p = Pos::default();
    let schedule = prop_oneof![
        Just(ScheduleAst::Default),
        (scalar(), scalar(), 0u32..20).prop_map(|(a, b, c)| ScheduleAst::Geometric(a, b, c)),
        (scalar(), scalar(), 0u32..20).prop_map(|(a, b, c)| ScheduleAst::Chebyshev(a, b, c)),
    ];
    prop_oneof![
        prop_oneof![Just("raw"), Just("two-pi"), Just("sqrt-two-pi"), Just("other")].prop_map(move |s| ConfigStmt::Norm(p, s.into())),
        (0u32..9).prop_map(move |k| ConfigStmt::Truncation(p, k)),
        prop::collection::vec(scalar(), 1..4).prop_map(move |v| ConfigStmt::Eta(p, v)),
        schedule.prop_map(move |s| ConfigStmt::Schedule(p, s)),
        scalar().prop_map(move |t| ConfigStmt::Tolerance(p, t)),
    ]
}

fn item(n: usize) -> impl Strategy<Value = Item> {
    let p = Pos::default();
    prop_oneof![
        (name(), prop::collection::vec(symbol_stmt(n), 0..5))
            .prop_map(move |(name, body)| Item::Symbol(SymbolDecl { pos: p, name, body })),
        (name(), prop::collection::vec(family_stmt(n), 0..4))
            .prop_map(move |(name, body)| Item::Family(FamilyDecl { pos: p, name, body })),
        (name(), prop::collection::vec(pair(n), 0..3))
            .prop_map(move |(name, pairs)| Item::Tensor(TensorDecl { pos: p, name, pairs })),
        prop::collection::vec(config_stmt(), 0..4).prop_map(move |c| Item::Config(p, c)),
    ]
}

fn document() -> impl Strategy<Value = Document> {
    (2usize..5).prop_flat_map(|dim| prop::collection::vec(item(dim), 0..5).prop_map(move |items| Document { dim, items }))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parse_inverts_format(d in document()) {
        let text = format_document(&d);
        let back = parse_syntax(&text).map_err(|e| TestCaseError::fail(format!("{}\n{}", e, text)))?;
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(format_document(&back), text);
    }
}

#[test]
fn corpus_round_trips() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/roundtrip");
    let mut count = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let src = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let d = parse_document(&src).unwrap();
        let text = format_document(&d);
        let again = parse_document(&text).unwrap();
        assert_eq!(again, d);
        assert_eq!(format_document(&again), text);
        count += 1;
    }
    assert!(count >= 30);
}
