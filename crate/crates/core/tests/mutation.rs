//! Builds the binary with a deliberately broken verifier fold update and
//! checks that the self-test notices.

use serde_json::Value;
use std::path::Path;
use std::process::Command;

#[test]
fn selftest_catches_broken_fold_update() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let target = manifest.join("../../target/mutation");
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let out = Command::new(cargo)
        .current_dir(manifest)
        .env("CARGO_TARGET_DIR", &target)
        .args([
            "run",
            "--quiet",
            "--release",
            "--features",
            "broken-fold-update",
            "--bin",
            "flexproofs",
            "--",
        ])
        .args(["selftest", "--format", "json"])
        .output()
        .expect("cargo runs");
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["passed"], Value::Bool(false));
    let fold = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "fc_fold_consistency")
        .expect("check present");
    assert_eq!(fold["passed"], Value::Bool(false));
}
