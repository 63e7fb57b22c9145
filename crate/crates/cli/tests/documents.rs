use psicalc_cli::{load, parse_document, run_cli, CliError};
use std::path::PathBuf;

fn golden(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name).display().to_string()
}

#[test]
fn minimal_document() {
    let d = load("dim 3; symbol s { order -3; layer 0 { 1 * |xi|^-3 } }").unwrap();
    assert_eq!(d.dim, 3);
    assert_eq!(d.symbols.len(), 1);
    assert!(d.families.is_empty() && d.tensors.is_empty());
}

#[test]
fn layer_degree_mismatch_names_the_term() {
    let e = parse_document("dim 3;\nsymbol s { order -3; layer 0 { 1 * |xi|^-3 + 2 * xi^[1,0,0] * |xi|^-3 } }").unwrap_err();
    match &e {
        CliError::Invariant { pos, msg } => {
            assert_eq!((pos.line, pos.col), (2, 46));
            assert!(msg.contains("2 * xi^[1,0,0] * |xi|^-3"), "{}", msg);
        }
        other => panic!("{:?}", other),
    }
    assert_eq!(e.exit_code(), 5);
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let e = parse_document("dim 2;\n\nsymbol s { order -2 layer 0 { 1 * |xi|^-2 } }").unwrap_err();
    match e {
        CliError::Syntax { pos, msg } => {
            assert_eq!((pos.line, pos.col), (3, 21));
            assert!(msg.contains("`;`"), "{}", msg);
        }
        other => panic!("{:?}", other),
    }
    assert!(matches!(parse_document("dim 2; symbol s { order 1/0; }"), Err(CliError::Syntax { .. })));
    assert!(matches!(parse_document("dim 2; # unterminated\nsymbol s {"), Err(CliError::Syntax { .. })));
}

#[test]
fn references_resolve() {
    let e = parse_document("dim 2;\nfamily f { base s; beta 1; }").unwrap_err();
    match e {
        CliError::Unresolved { pos, kind, name } => {
            assert_eq!((pos.line, pos.col, kind, name.as_str()), (2, 17, "symbol", "s"));
        }
        other => panic!("{:?}", other),
    }
    // symbols may be used before their definition
    let src = "dim 2; tensor t { pair s { 1 * x^[0,0] * exp(-1|x|^2) } } symbol s { order -1; layer 0 { xi^[1,0] * |xi|^-2 } }";
    assert_eq!(load(src).unwrap().tensors.len(), 1);
}

#[test]
fn duplicate_names_are_rejected() {
    let e = parse_document("dim 2; symbol s { order 0; } family s { base s; beta 1; }").unwrap_err();
    assert!(matches!(e, CliError::Invariant { .. }), "{:?}", e);
}

#[test]
fn other_invariants() {
    for src in [
        "dim 1;",
        "dim 2; symbol s { layer 0 { 1 * |xi|^-2 } }",
        "dim 2; symbol s { order -2; layer 0 { 1 * xi^[0,0,0] * |xi|^-2 } }",
        "dim 2; symbol s { order -2; part h^2 { 1 * |xi|^-5/2 } }",
        "dim 2; symbol s { order 1; poly { 1 * xi^[1,0] * |xi|^1 } }",
        "dim 2; symbol s { order -2; cutoff spline 2; }",
        "dim 2; config { norm bogus; }",
        "dim 2; config { eta 1 2 3; }",
        "dim 2; config { tolerance -1; }",
        "dim 2; config { schedule chebyshev 6 14 2; }",
        "dim 2; symbol s { order -2; } family f { beta 1; }",
        "dim 2; symbol s { order -2; } family f { base s; }",
        "dim 2; symbol s { order -2; } family f { base s; beta 0; }",
        "dim 2; symbol s { order -2; layer 0 { 1 * xi^[1,0] * |xi|^-3 } } family f { base s; order -2; beta 1; }",
    ] {
        let e = parse_document(src).unwrap_err();
        assert!(matches!(e, CliError::Invariant { .. }), "{}: {:?}", src, e);
    }
}

#[test]
fn term_shorthand() {
    let a = load("dim 2; symbol s { order -2; layer 0 { -xi^[2,0] * |xi|^-4 + 3/2 * |xi|^-2 - (1 i) * xi^[0,2] * |xi|^-4 } }").unwrap();
    let b = load(
        "dim 2; symbol s { order -2; layer 0 { -1 * xi^[2,0] * |xi|^-4 + 3/2 * xi^[0,0] * |xi|^-2 + (-1 i) * xi^[0,2] * |xi|^-4 } }",
    )
    .unwrap();
    assert_eq!(a.symbols["s"], b.symbols["s"]);
}

#[test]
fn command_examples() {
    let out = run_cli(["res", &golden("example.psi"), "s1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("residue = 4*pi\n"), "{}", out.stdout);

    let out = run_cli(["verify", "ps", &golden("example.psi"), "g"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("PASS ps-finite-part: 4/3*pi == 4/3*pi"), "{}", out.stdout);

    let out = run_cli(["verify", "stokes", &golden("example.psi"), "frac"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("PASS stokes-defect axis 1: 0 == 0"), "{}", out.stdout);
}

#[test]
fn exit_codes_follow_the_report() {
    assert_eq!(run_cli(["verify", "kerres", &golden("example.psi"), "s1"]).code, 1);
    assert_eq!(run_cli(["verify", "kerres", &golden("example.psi"), "free"]).code, 0);
    assert_eq!(run_cli(["res", &golden("example.psi")]).code, 2);
    assert_eq!(run_cli(["--norm", "bogus", "res", &golden("example.psi"), "s1"]).code, 2);
    assert_eq!(run_cli(["decompose", &golden("example.psi"), "s1"]).code, 6);
    assert_eq!(run_cli(["laurent", &golden("example.psi"), "s1"]).code, 4);
}

#[test]
fn exit_code_table_is_stable() {
    let codes: Vec<i32> = psicalc_cli::exit_code_table().iter().map(|(c, _)| *c).collect();
    assert_eq!(codes, vec![0, 1, 2, 3, 4, 5, 6]);
}

#[test]
fn json_file_output() {
    let dir = std::env::temp_dir().join(format!("psicalc-json-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let out = run_cli(["--json", path.to_str().unwrap(), "verify", "kv", &golden("example.psi"), "g"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["assertions"][0]["identity"], "kv-residue");
    assert_eq!(v["assertions"][0]["passed"], true);
    assert_eq!(v["values"][0]["decimal"], "12.566370614359172954");
    std::fs::remove_dir_all(&dir).ok();
}
