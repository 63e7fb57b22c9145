//! Every report the golden commands produce validates against the shipped
//! schema.

use psicalc_cli::report::SCHEMA;
use psicalc_cli::run_cli;
use std::path::PathBuf;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

#[test]
fn golden_reports_validate() {
    let schema: serde_json::Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let cases = std::fs::read_to_string(golden_dir().join("cases.txt")).unwrap();
    let mut checked = 0;
    for line in cases.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        let (_, args) = line.split_once(':').unwrap();
        let mut argv = vec!["--json".to_string(), "-".to_string()];
        argv.extend(args.split_whitespace().map(|a| {
            if a.ends_with(".psi") {
                golden_dir().join(a).display().to_string()
            } else {
                a.to_string()
            }
        }));
        if argv.iter().any(|a| a == "fmt") {
            continue;
        }
        let out = run_cli(argv);
        if out.code > 1 {
            continue;
        }
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{}: {}", line, e));
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{}: {:?}", line, errors);
        checked += 1;
    }
    assert!(checked >= 25, "{}", checked);
}

#[test]
fn schema_rejects_malformed_reports() {
    let schema: serde_json::Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let bad = serde_json::json!({
        "command": ["res"], "values": [], "oracle": [], "notes": [],
        "assertions": [{ "identity": "x", "lhs": "1", "rhs": "1", "passed": "yes" }]
    });
    assert!(!validator.is_valid(&bad));
    let missing = serde_json::json!({ "command": [], "values": [] });
    assert!(!validator.is_valid(&missing));
}
