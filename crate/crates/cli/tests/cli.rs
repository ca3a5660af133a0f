use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use iqschur_cli::cache::Manifest;

fn iqschur(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iqschur"))
        .args(args)
        .env("IQSCHUR_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn enumerate_xi_finds_five_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let out = iqschur(dir.path(), &["enumerate", "xi", "--n", "1", "--r", "1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["data"]["count"], 5);
    assert_eq!(v["data"]["matrices"].as_array().unwrap().len(), 5);
}

#[test]
fn verify_relations_lists_every_family() {
    let dir = tempfile::tempdir().unwrap();
    let out = iqschur(dir.path(), &["verify", "relations", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for fam in ["torus", "weight-conjugation", "ef-commutator", "serre", "rank-n-serre"] {
        assert!(text.contains(&format!("PASS  {fam}  (")), "{fam} missing from\n{text}");
    }
    assert!(!text.contains("FAIL"));
}

#[test]
fn dump_table_is_byte_identical_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["dump", "table", "--n", "1", "--r", "1", "--basis", "normalized", "--json"];
    let first = iqschur(dir.path(), &args);
    let second = iqschur(dir.path(), &args);
    assert!(first.status.success() && second.status.success());
    assert_eq!(first.stdout, second.stdout);

    let status = |o: &Output| -> Value { serde_json::from_slice(&o.stderr).unwrap() };
    assert_eq!(status(&first)["data"]["cache"], "miss");
    assert_eq!(status(&second)["data"]["cache"], "hit");

    let table: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(table["basis"].as_array().unwrap().len(), 5);

    let manifest: Manifest = serde_json::from_slice(&std::fs::read(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest.entries.len(), 1);
    let entry = manifest.entries.values().next().unwrap();
    assert_eq!(entry.size, first.stdout.len() as u64);
    assert_eq!(std::fs::read(dir.path().join(&entry.file)).unwrap(), first.stdout);
}

#[test]
fn corrupted_cache_entry_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["dump", "table", "--n", "1", "--r", "1", "--json"];
    let clean = iqschur(dir.path(), &args).stdout;
    let manifest: Manifest = serde_json::from_slice(&std::fs::read(dir.path().join("manifest.json")).unwrap()).unwrap();
    let file = dir.path().join(&manifest.entries.values().next().unwrap().file);
    std::fs::write(&file, b"{}\n").unwrap();

    let again = iqschur(dir.path(), &args);
    let status: Value = serde_json::from_slice(&again.stderr).unwrap();
    assert_eq!(status["data"]["cache"], "invalidated");
    assert_eq!(again.stdout, clean);
}

#[test]
fn verify_formulas_reuses_the_dumped_table() {
    let dir = tempfile::tempdir().unwrap();
    let dump = iqschur(dir.path(), &["dump", "table", "--n", "1", "--r", "2", "--basis", "normalized"]);
    assert!(dump.status.success());
    let out = iqschur(dir.path(), &["verify", "formulas", "--n", "1", "--r", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["data"]["oracle_cache"], "hit");
    assert_eq!(v["passed"], true);
}

/// A table that is internally consistent with the manifest but wrong is
/// caught by the independent formula route.
#[test]
fn poisoned_cache_fails_verification() {
    use sha2::{Digest, Sha256};
    let dir = tempfile::tempdir().unwrap();
    iqschur(dir.path(), &["dump", "table", "--n", "1", "--r", "1"]);
    let path = dir.path().join("manifest.json");
    let mut manifest: Manifest = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let entry = manifest.entries.values_mut().next().unwrap();
    let file = dir.path().join(&entry.file);
    let mut table: Value = serde_json::from_slice(&std::fs::read(&file).unwrap()).unwrap();
    let product = table["entries"][0]["product"].as_array_mut().unwrap();
    product[0][1] = serde_json::json!({ "num": { "0": "7" }, "den": { "0": "1" } });
    let bytes = serde_json::to_vec_pretty(&table).unwrap();
    std::fs::write(&file, &bytes).unwrap();
    entry.size = bytes.len() as u64;
    entry.sha256 = hex::encode(Sha256::digest(&bytes));
    std::fs::write(&path, serde_json::to_vec_pretty(&manifest).unwrap()).unwrap();

    let out = iqschur(dir.path(), &["verify", "formulas", "--n", "1", "--r", "1"]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| iqschur(dir.path(), args).status.code();
    assert_eq!(code(&["enumerate", "xi", "--n", "5", "--r", "1"]), Some(4));
    assert_eq!(code(&["verify", "duality", "--n", "1", "--r", "9"]), Some(4));
    assert_eq!(code(&["enumerate", "xi", "--n", "5", "--r", "0", "--unsafe-scale"]), Some(0));
    assert_eq!(code(&["enumerate", "xi", "--n", "0", "--r", "1"]), Some(3));
    assert_eq!(code(&["mul", "--left", "{oops", "--right", "{}"]), Some(3));
    assert_eq!(code(&["mul", "--left", "/no/such/file.json", "--right", "{}"]), Some(3));
    assert_eq!(code(&["enumerate", "xi", "--bogus"]), Some(3));
    assert_eq!(code(&["verify", "intertwiner", "--n", "1", "--r", "2"]), Some(3));
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn mul_routes_agree_on_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let a = r#"{"n":1,"r":1,"terms":[{"A":{"n":1,"entries":[[0,0,0],[1,1,1],[0,0,0]]},"c":{"0":"1"}}]}"#;
    let b = r#"{"n":1,"r":1,"terms":[{"A":{"n":1,"entries":[[0,1,0],[0,1,0],[0,1,0]]},"c":{"0":"1","2":"3"}}]}"#;
    let left = dir.path().join("left.json");
    std::fs::write(&left, a).unwrap();
    let left = left.to_str().unwrap();
    let oracle = json(&iqschur(dir.path(), &["mul", "--left", left, "--right", b, "--json"]));
    let formula = json(&iqschur(dir.path(), &["mul", "--left", left, "--right", b, "--route", "formula", "--json"]));
    assert_eq!(oracle["data"], formula["data"]);
    assert_eq!(oracle["data"]["terms"].as_array().unwrap().len(), 1);
}

#[test]
fn duality_report_is_deterministic_under_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "duality", "--n", "1", "--r", "1", "--seed", "7", "--json"];
    let a = iqschur(dir.path(), &args);
    let b = iqschur(dir.path(), &args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["data"]["commutant"]["dimension"], 5);
}

#[test]
fn stabilized_verbs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let a = r#"{"n":1,"entries":[[0,1,0],[0,0,0],[0,1,0]]}"#;
    let out = iqschur(dir.path(), &["expand-monomial", "--a", a, "--j", "1,-1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
    let out = iqschur(dir.path(), &["expand", "--a", a, "--j", "0,0,2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let x =
        r#"{"n":1,"terms":[{"A":{"n":1,"entries":[[0,1,0],[0,0,0],[0,1,0]]},"j":{"reduced":[0,0]},"c":{"0":"1"}}]}"#;
    let out = iqschur(dir.path(), &["stab-mul", "--left", x, "--right", x, "--json"]);
    let terms = json(&out)["data"]["terms"].as_array().unwrap().clone();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["A"]["entries"][0][1], 2);
}
