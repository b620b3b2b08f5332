use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use stabcode_core::corpus;
use stabcode_core::lincode::bsc_success_exact;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn stabcode(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_stabcode"))
        .args(args)
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let run = stabcode(&all);
    (
        run.code,
        serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("{e}: {}", run.stdout)),
    )
}

fn data(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "data", name]
        .iter()
        .collect();
    path.to_str().unwrap().to_string()
}

fn temp_file(dir: &tempfile::TempDir, name: &str, contents: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn validate_examples() {
    let (code, v) = json(&["validate", &data("eight_three.stab")]);
    assert_eq!(code, 0);
    assert_eq!(
        (
            v["valid"].as_bool(),
            v["n"].as_u64(),
            v["m"].as_u64(),
            v["k"].as_u64()
        ),
        (Some(true), Some(8), Some(5), Some(3))
    );

    let dir = tempfile::tempdir().unwrap();
    let bad = temp_file(&dir, "bad.stab", "XII\nZII\n");
    let run = stabcode(&["validate", &bad]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("pair (1,2) anticommutes"));
    let (_, v) = json(&["validate", &bad]);
    assert_eq!(v["anticommuting_pairs"], serde_json::json!([[1, 2]]));

    let empty = temp_file(&dir, "empty.stab", "");
    let run = stabcode(&["validate", &empty]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("line 1"));
    let (code, v) = json(&["validate", &empty]);
    assert_eq!((code, v["error"].as_str()), (2, Some("usage")));

    let typo = temp_file(&dir, "typo.stab", "XX\nXQ\n");
    let run = stabcode(&["validate", &typo]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("line 2, column 2"), "{}", run.stderr);

    assert_eq!(stabcode(&["validate", "/nonexistent/file.stab"]).code, 2);
    assert_eq!(stabcode(&["frobnicate"]).code, 2);
}

#[test]
fn standardize_examples() {
    let (code, v) = json(&["standardize", &data("eight_three.stab")]);
    assert_eq!(code, 0);
    assert_eq!(
        (v["s"].as_u64(), v["k"].as_u64(), v["r"].as_u64()),
        (Some(4), Some(3), Some(1))
    );
    assert_eq!(
        v["qubit_permutation"],
        serde_json::json!([1, 2, 3, 5, 4, 6, 7, 8])
    );

    let (_, v) = json(&["standardize", &data("single_z.stab")]);
    assert_eq!(
        (v["s"].as_u64(), v["k"].as_u64(), v["r"].as_u64()),
        (Some(0), Some(0), Some(1))
    );

    let (_, v) = json(&["standardize", &data("single_x.stab")]);
    assert_eq!(v["r"].as_u64(), Some(0));
    let (code, v) = json(&["standardize", "--ensure-r", &data("single_x.stab")]);
    assert_eq!(code, 0);
    assert_eq!(v["r"].as_u64(), Some(1));
    assert_eq!(
        v["ensure_r_operations"],
        serde_json::json!(["col-switch 0"])
    );
}

#[test]
fn standardize_writes_a_reparseable_deterministic_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("std.stab");
    let out = out.to_str().unwrap();
    let first = stabcode(&["standardize", &data("eight_three.stab"), "-o", out]);
    assert_eq!(first.code, 0);
    assert!(first.stdout.contains("s=4 k=3 r=1"));
    let written = std::fs::read_to_string(out).unwrap();
    assert!(written.starts_with("# standard form: n=8 m=5 s=4 k=3 r=1\n"));
    assert!(!written.contains('\r'));
    assert_eq!(stabcode(&["validate", out]).code, 0);
    let body: Vec<&str> = written.lines().filter(|l| !l.starts_with('#')).collect();
    let expected: Vec<String> = corpus::eight_three_standard()
        .rows()
        .iter()
        .map(|p| p.to_string())
        .collect();
    assert_eq!(body, expected);
    // standardizing the output again only resets the recorded qubit order
    let again = stabcode(&["standardize", out]);
    let again_body: Vec<&str> = again
        .stdout
        .lines()
        .filter(|l| !l.starts_with('#'))
        .collect();
    assert_eq!(again_body, body);
    assert!(again.stdout.contains("indices): 1 2 3 4 5 6 7 8\n"));
    assert_eq!(
        stabcode(&["standardize", &data("eight_three.stab")]).stdout,
        written
    );
}

#[test]
fn ensure_r_failures_are_distinct_from_invalid_codes() {
    let (code, v) = json(&[
        "standardize",
        "--ensure-r",
        "--depth",
        "0",
        &data("phase_flip.stab"),
    ]);
    assert_eq!((code, v["error"].as_str()), (1, Some("ensure-r-exhausted")));
    let (code, v) = json(&["standardize", &data("eight_three_mutated.stab")]);
    assert_eq!((code, v["error"].as_str()), (1, Some("invalid-code")));
    let (code, v) = json(&["standardize", "--ensure-r", &data("phase_flip.stab")]);
    assert_eq!(code, 0);
    assert!(v["r"].as_u64().unwrap() >= 1);
}

#[test]
fn extract_examples() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("code.gen");
    let out = out.to_str().unwrap();
    let run = stabcode(&["extract", &data("eight_three.stab"), "-o", out]);
    assert_eq!(run.code, 0);
    assert!(run
        .stdout
        .contains("(7, 3) classical code; padded form (7, 3)"));
    let g = stabcode_core::format::parse_generator_matrix(&std::fs::read_to_string(out).unwrap())
        .unwrap();
    assert_eq!(g, corpus::seven_three());

    let (_, v) = json(&["extract", &data("eight_three.stab")]);
    assert_eq!(v["weight_enumerator"], serde_json::json!({"0": 1, "4": 7}));
    assert_eq!((v["n"].as_u64(), v["k"].as_u64()), (Some(7), Some(3)));

    let run = stabcode(&["extract", &data("single_z.stab")]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("k = 0"));

    let run = stabcode(&["extract", &data("phase_flip.stab")]);
    assert_eq!(run.code, 0);
    assert!(run.stderr.contains("warning"));
    assert!(run.stdout.contains("(3, 1) classical code"));
    let (_, v) = json(&["extract", "--ensure-r", &data("phase_flip.stab")]);
    assert_eq!(v["n"].as_u64(), Some(2));
}

#[test]
fn distance_examples() {
    let run = stabcode(&["distance", "--quantum", &data("eight_three.stab")]);
    assert_eq!((run.code, run.stdout.as_str()), (0, "d=3 t=1\n"));
    let run = stabcode(&[
        "distance",
        "--quantum",
        "--cap",
        "2",
        &data("eight_three.stab"),
    ]);
    assert_eq!(run.stdout, "d > 2\n");
    let (_, v) = json(&[
        "distance",
        "--quantum",
        "--cap",
        "2",
        &data("eight_three.stab"),
    ]);
    assert_eq!(v["exceeds_cap"].as_u64(), Some(2));
    let (_, v) = json(&[
        "distance",
        "--quantum",
        "--cap",
        "3",
        &data("eight_three.stab"),
    ]);
    assert_eq!(v["distance"].as_u64(), Some(3));

    let run = stabcode(&["distance", "--classical", &data("seven_three.gen")]);
    assert_eq!(run.stdout, "d=4 t=1\n");
    let run = stabcode(&["distance", "--classical", &data("five_two.gen")]);
    assert_eq!(run.stdout, "d=3 t=1\n");
    // a stabilizer file is extracted first
    let run = stabcode(&["distance", "--classical", &data("eight_three.stab")]);
    assert_eq!(run.stdout, "d=4 t=1\n");

    assert_eq!(stabcode(&["distance", &data("eight_three.stab")]).code, 2);
    assert_eq!(
        stabcode(&[
            "distance",
            "--quantum",
            "--classical",
            &data("eight_three.stab")
        ])
        .code,
        2
    );
}

#[test]
fn simulate_examples() {
    let exact = bsc_success_exact(&corpus::five_two(), 0.1)
        .unwrap()
        .success_probability;
    let (code, v) = json(&[
        "simulate",
        &data("five_two.gen"),
        "--delta",
        "0.1",
        "--exact",
    ]);
    assert_eq!(code, 0);
    assert!((v["success_probability"].as_f64().unwrap() - exact).abs() < 1e-15);
    assert!((exact - 0.93312).abs() < 1e-12);
    assert_eq!(v["method"].as_str(), Some("exact-enumeration"));

    let (_, v) = json(&[
        "simulate",
        &data("five_two.gen"),
        "--delta",
        "0",
        "--trials",
        "1000",
    ]);
    assert_eq!(v["success_probability"].as_f64(), Some(1.0));

    let args = [
        "simulate",
        &data("seven_three.gen"),
        "--delta",
        "0.05",
        "--trials",
        "20000",
        "--seed",
        "11",
    ];
    let a = stabcode(&args);
    let b = stabcode(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let (_, v) = json(&args);
    let mc = v["success_probability"].as_f64().unwrap();
    let se = v["standard_error"].as_f64().unwrap();
    let exact = bsc_success_exact(&corpus::seven_three(), 0.05)
        .unwrap()
        .success_probability;
    assert!((mc - exact).abs() <= 3.0 * se);

    assert_eq!(
        stabcode(&["simulate", &data("five_two.gen"), "--delta", "0.7"]).code,
        2
    );
    assert_eq!(
        stabcode(&[
            "simulate",
            &data("five_two.gen"),
            "--delta",
            "0.1",
            "--trials",
            "0"
        ])
        .code,
        2
    );
    assert_eq!(stabcode(&["simulate", &data("five_two.gen")]).code, 2);
}

#[test]
fn verify_phi_examples() {
    let (code, v) = json(&["verify-phi", &data("eight_three.stab")]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"].as_bool(), Some(true));
    assert_eq!(v["images"].as_u64(), Some(128));
    assert!(v["max_deviation"].as_f64().unwrap() < 1e-9);

    let run = stabcode(&["verify-phi", &data("eight_three_mutated.stab")]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("counterexample:"));
    let (_, v) = json(&["verify-phi", &data("eight_three_mutated.stab")]);
    assert_eq!(v["passed"].as_bool(), Some(false));
    assert!(!v["counterexamples"].as_array().unwrap().is_empty());

    let run = stabcode(&["verify-phi", "--cap", "6", &data("eight_three.stab")]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("--cap"));
}

#[test]
fn bounds_examples() {
    let run = stabcode(&[
        "bounds",
        "--channel",
        "adversarial",
        "--from",
        "0",
        "--to",
        "0.25",
        "--step",
        "0.05",
    ]);
    assert_eq!(run.code, 0);
    let lines: Vec<&str> = run.stdout.lines().collect();
    assert_eq!(lines.len(), 1 + 6 * 4);
    assert_eq!(lines[0], "delta,curve,raw,clamped");
    assert!(lines.contains(&"0.25,mrrw_adversarial,0,0"));
    assert!(!run.stdout.contains('\r'));

    let run = stabcode(&["bounds", "--channel", "depolarizing", "--step", "0.05"]);
    assert!(run
        .stdout
        .lines()
        .any(|l| l.starts_with("0.05,shannon_depolarizing,0.713603042884,")));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("curves.csv");
    let to_file = stabcode(&[
        "bounds",
        "--channel",
        "depolarizing",
        "--step",
        "0.05",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(to_file.code, 0);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), run.stdout);

    let (_, v) = json(&[
        "bounds",
        "--channel",
        "adversarial",
        "--to",
        "0.25",
        "--step",
        "0.05",
    ]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 24);

    assert_eq!(
        stabcode(&[
            "bounds",
            "--channel",
            "adversarial",
            "--from",
            "0.3",
            "--to",
            "0.2"
        ])
        .code,
        2
    );
    assert_eq!(
        stabcode(&["bounds", "--channel", "adversarial", "--step", "0"]).code,
        2
    );
    assert_eq!(stabcode(&["bounds", "--channel", "erasure"]).code, 2);
}

/// standardize -> extract -> distance on every bundled code reproduces the
/// table in docs/corpus.md.
#[test]
fn pipeline_reproduces_docs_table() {
    let docs_path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", "corpus.md"]
        .iter()
        .collect();
    let docs = std::fs::read_to_string(docs_path).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let mut rows = 0;
    for line in docs
        .lines()
        .filter(|l| l.starts_with("| ") && !l.starts_with("| code"))
    {
        let cells: Vec<&str> = line.trim_matches('|').split('|').map(str::trim).collect();
        let name = cells[0];
        let std_file = dir.path().join(format!("{name}.stab"));
        let std_file = std_file.to_str().unwrap();
        let (_, v) = json(&[
            "standardize",
            &data(&format!("{name}.stab")),
            "-o",
            std_file,
        ]);
        let params = [&v["n"], &v["k"], &v["s"], &v["r"]].map(|x| x.as_u64().unwrap().to_string());
        assert_eq!(params.to_vec(), cells[1..5].to_vec(), "{name}");

        let gen_file = dir.path().join(format!("{name}.gen"));
        let gen_file = gen_file.to_str().unwrap();
        let extracted = stabcode(&["extract", std_file, "-o", gen_file]);
        if cells[7] == "none" {
            assert_eq!(extracted.code, 1, "{name}");
            rows += 1;
            continue;
        }
        assert_eq!(extracted.code, 0, "{name}");
        let (_, q) = json(&["distance", "--quantum", std_file]);
        assert_eq!(q["distance"].to_string(), cells[5], "{name}");
        assert_eq!(q["t"].to_string(), cells[6], "{name}");
        let (_, c) = json(&["distance", "--classical", gen_file]);
        assert_eq!(format!("({}, {})", c["n"], params[1]), cells[7], "{name}");
        assert_eq!(c["distance"].to_string(), cells[8], "{name}");
        assert_eq!(c["t"].to_string(), cells[9], "{name}");
        rows += 1;
    }
    assert_eq!(rows, corpus::stabilizer_codes().len());
}
