//! Golden report cases, shared by the golden test and the acceptance suite.

use std::path::PathBuf;

/// `(golden file stem, arguments)`; every case runs with `--format json`.
pub const GOLDEN_CASES: &[(&str, &[&str])] = &[
    ("validate-b2", &["validate", "--graph", "catalog/b2.kg"]),
    ("validate-t2", &["validate", "--graph", "catalog/t2.kg"]),
    ("validate-cube3", &["validate", "--graph", "catalog/cube3.kg"]),
    ("validate-twisted", &["validate", "--graph", "catalog/twisted.kg"]),
    ("validate-b2xb2", &["validate", "--graph", "catalog/b2xb2.kg"]),
    ("validate-pullback-b2", &["validate", "--graph", "catalog/pullback-b2.kg"]),
    ("validate-skew-b2", &["validate", "--graph", "catalog/skew-b2.kg"]),
    ("validate-cube3-parity", &["validate", "--graph", "catalog/cube3-parity.kg"]),
    ("homology-b2", &["homology", "--graph", "catalog/b2.kg", "--upto", "1"]),
    ("homology-t2", &["homology", "--graph", "catalog/t2.kg"]),
    ("homology-cube3", &["homology", "--graph", "catalog/cube3.kg"]),
    ("homology-twisted", &["homology", "--graph", "catalog/twisted.kg"]),
    ("homology-t2xb2", &["homology", "--graph", "catalog/t2xb2.kg"]),
    ("bridge-roundtrip-t2", &["bridge-roundtrip", "--graph", "catalog/t2.kg", "--phi", "catalog/theta.cc"]),
    ("bridge-roundtrip-cube3", &["bridge-roundtrip", "--graph", "catalog/cube3.kg", "--phi", "catalog/cube3-phi.cc"]),
    ("bridge-roundtrip-twisted", &["bridge-roundtrip", "--graph", "catalog/twisted.kg", "--phi", "catalog/twisted-phi.cc"]),
    (
        "sigma-check-t2",
        &["sigma-check", "--graph", "catalog/t2.kg", "--phi", "catalog/theta.cc", "--seed", "7", "--triples", "500"],
    ),
    (
        "sigma-check-t2-coboundary",
        &["sigma-check", "--graph", "catalog/t2.kg", "--phi", "catalog/t2-cob.cc", "--seed", "3", "--triples", "200"],
    ),
    (
        "sigma-check-twisted",
        &[
            "sigma-check",
            "--graph",
            "catalog/twisted.kg",
            "--phi",
            "catalog/twisted-phi.cc",
            "--seed",
            "11",
            "--triples",
            "100",
            "--bound",
            "1",
        ],
    ),
];

pub fn golden_path(stem: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{stem}.json"))
}

/// Runs one case from the crate root; returns the report text and exit status.
pub fn run_case(args: &[&str]) -> (String, i32) {
    std::env::set_current_dir(env!("CARGO_MANIFEST_DIR")).unwrap();
    let mut argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    argv.extend(["--format".to_string(), "json".to_string()]);
    let out = kgraph_cli::run(&argv);
    (out.output, out.code)
}

/// Names of the cases whose output differs from the committed report.
/// With `update`, rewrites the files first.
pub fn golden_mismatches(update: bool) -> Vec<String> {
    let mut bad = Vec::new();
    for (stem, args) in GOLDEN_CASES {
        let (text, _) = run_case(args);
        let path = golden_path(stem);
        if update {
            std::fs::write(&path, &text).unwrap();
        }
        if std::fs::read_to_string(&path).ok().as_deref() != Some(text.as_str()) {
            bad.push(stem.to_string());
        }
    }
    bad
}
