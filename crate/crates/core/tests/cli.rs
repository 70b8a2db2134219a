use flexproofs::vc::VcParams;
use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_flexproofs"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("flexproofs-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn validate(schema_file: &str, doc: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema").join(schema_file);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema_file}: {errors:?}");
}

#[test]
fn seeded_setup_is_reproducible_and_loads() {
    let dir = scratch("setup");
    let (a, b) = (dir.join("a.pp"), dir.join("b.pp"));
    for p in [&a, &b] {
        let out = run(&["setup", "--big-n", "64", "--batch", "2", "--seed", "5", "--out", s(p)]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(VcParams::load(&a).unwrap(), VcParams::setup_seeded(64, 2, 5).unwrap());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn corrupted_params_give_a_structured_error() {
    let dir = scratch("corrupt");
    let pp = dir.join("pp");
    assert!(
        run(&["setup", "--big-n", "16", "--batch", "1", "--seed", "1", "--out", s(&pp)])
            .status
            .success()
    );
    let mut bytes = std::fs::read(&pp).unwrap();
    bytes[..8].copy_from_slice(b"NOTMAGIC");
    std::fs::write(&pp, bytes).unwrap();
    let out = run(&["commit", "--params", s(&pp), "--out", s(&dir.join("c"))]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.starts_with("error: "), "{stderr}");
    assert!(!dir.join("c").exists());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn commit_open_verify_flow() {
    let dir = scratch("flow");
    let pp = dir.join("pp");
    let input = dir.join("m.txt");
    let values: Vec<String> = (0..16).map(|i| (i * i + 7).to_string()).collect();
    std::fs::write(&input, values.join("\n")).unwrap();
    let (c, one, all, eval) = (dir.join("c"), dir.join("o"), dir.join("all"), dir.join("e"));
    assert!(
        run(&["setup", "--big-n", "16", "--batch", "2", "--seed", "3", "--out", s(&pp)])
            .status
            .success()
    );
    let vec_args = ["--params", s(&pp), "--input", s(&input)];
    assert!(run(&[&["commit"], &vec_args[..], &["--out", s(&c)]].concat())
        .status
        .success());
    assert!(
        run(&[&["open", "--index", "5"], &vec_args[..], &["--out", s(&one)]].concat())
            .status
            .success()
    );
    assert!(run(&[&["open-all"], &vec_args[..], &["--out", s(&all)]].concat())
        .status
        .success());

    let verify = |index: &str, value: &str, opening: &Path| {
        run(&[
            "verify",
            "--params",
            s(&pp),
            "--commitment",
            s(&c),
            "--index",
            index,
            "--value",
            value,
            "--opening",
            s(opening),
        ])
    };
    let ok = verify("5", "32", &one);
    assert!(ok.status.success(), "{}", String::from_utf8_lossy(&ok.stderr));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim(), "accept");
    assert_eq!(verify("5", "33", &one).status.code(), Some(1));
    assert!(verify("11", "128", &all).status.success());
    assert_eq!(verify("11", "129", &all).status.code(), Some(1));

    // f_m at the hypercube point of index 9 = 1001 is m[9] = 88
    let point = "1,0,0,1";
    assert!(
        run(&[&["prove-eval", "--point", point], &vec_args[..], &["--out", s(&eval)]].concat())
            .status
            .success()
    );
    let out = run(&[
        "verify-eval",
        "--params",
        s(&pp),
        "--commitment",
        s(&c),
        "--point",
        point,
        "--proof",
        s(&eval),
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("y = 88"));
    let out = run(&[
        "verify-eval",
        "--params",
        s(&pp),
        "--commitment",
        s(&c),
        "--point",
        "1,0,1,1",
        "--proof",
        s(&eval),
    ]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn selftest_json_matches_schema() {
    let out = run(&["selftest", "--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    validate("selftest.schema.json", &doc);
    assert_eq!(doc["passed"], Value::Bool(true));
    assert!(doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["name"] == "fc_fold_consistency"));
}

#[test]
fn bench_reports_match_schema() {
    let dir = scratch("bench");
    let out_file = dir.join("fc.json");
    let out = run(&[
        "bench-fc",
        "--n",
        "4,8",
        "--t",
        "1,2",
        "--reps",
        "1",
        "--format",
        "json",
        "--out",
        s(&out_file),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    validate("report.schema.json", &doc);
    assert_eq!(
        doc,
        serde_json::from_str::<Value>(&std::fs::read_to_string(&out_file).unwrap()).unwrap()
    );

    let out = run(&[
        "--threads",
        "2",
        "bench-vc",
        "--big-n",
        "16",
        "--batch",
        "1,2",
        "--reps",
        "1",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    validate("report.schema.json", &doc);
    assert_eq!(doc["env"]["threads"], 2);

    let out = run(&["bench-fc", "--n", "4", "--t", "1", "--reps", "1"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("fc-commit"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn bad_arguments_fail_cleanly() {
    let out = run(&["setup", "--big-n", "12", "--batch", "1", "--out", "/dev/null/x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!run(&["no-such-command"]).status.success());
}
