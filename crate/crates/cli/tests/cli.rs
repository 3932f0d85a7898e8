use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn sigmacat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigmacat"))
        .args(args)
        .env("SIGMACAT_CORPUS", corpus())
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    sigmacat(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(sigmacat(args).stdout).unwrap()
}

#[test]
fn bifiltered_poset_with_top_exits_zero() {
    assert_eq!(code(&["check", "bifiltered", "poset_top"]), 0);
}

#[test]
fn discrete_pair_reports_the_missing_span() {
    let out = sigmacat(&["check", "bifiltered", "discrete2"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("instance: a, b"), "{text}");
}

#[test]
fn missing_fixture_exits_two() {
    assert_eq!(code(&["flat", "check", "missing.fixture"]), 2);
}

#[test]
fn fixture_paths_are_accepted() {
    let path = corpus().join("chain3.json");
    assert_eq!(code(&["check", "bifiltered", path.to_str().unwrap()]), 0);
}

#[test]
fn wrong_kind_exits_two() {
    assert_eq!(code(&["lex", "check", "poset_top"]), 2);
}

#[test]
fn unknown_command_exits_two() {
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn machine_output_is_json_with_hashes() {
    let text = stdout(&["--format", "machine", "check", "sigma-filtered", "lax_pair", "--sigma", "proper"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["outcome"], true);
    assert_eq!(v["fixtures"][0]["sha256"].as_str().unwrap().len(), 64);
    assert!(v["result"]["witnesses"].is_array() || v["result"]["parts"].is_array());
}

#[test]
fn colimit_emits_a_loadable_category() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("col.json");
    assert_eq!(code(&["colimit", "chain_inclusions", "--emit", path.to_str().unwrap()]), 0);
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let doc: sigmacat::fincat::FinCatDoc = serde_json::from_value(v["category"].clone()).unwrap();
    let c = sigmacat::fincat::validate_fincat(&doc).unwrap();
    assert_eq!(c.n_objects(), 6);
    assert_eq!(v["cocone"].as_object().unwrap().len(), 3);
}

#[test]
fn bilim_commands_succeed() {
    for args in [
        &["bilim", "product", "cat_walking_arrow", "cat_walking_iso"][..],
        &["bilim", "equalizer", "swap_idempotent"],
        &["bilim", "cotensor", "cat_walking_arrow"],
        &["bilim", "pseudolimit", "twisted_iso"],
        &["bilim", "split", "diagonal_idempotent"],
        &["bilim", "commute", "product_chain_twisted"],
    ] {
        assert_eq!(code(args), 0, "{args:?}");
    }
}

#[test]
fn flatness_verdicts() {
    assert_eq!(code(&["flat", "check", "representable_iso_hom_a"]), 0);
    assert_eq!(code(&["flat", "check", "constant_arrow"]), 1);
    assert_eq!(code(&["flat", "decompose", "constant_arrow"]), 1);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    assert_eq!(code(&["flat", "decompose", "representable_poset_top_a", "--report", path.to_str().unwrap()]), 0);
    assert!(path.is_file());
}

#[test]
fn compact_help_states_the_scope_verbatim() {
    let text = stdout(&["compact", "check", "--help"]);
    assert!(text.contains(sigmacat::compact::SCOPE_STATEMENT), "{text}");
    let text = stdout(&["compact", "check", "cat_walking_iso", "growing_chain"]);
    assert!(text.contains(sigmacat::compact::SCOPE_STATEMENT));
}

#[test]
fn lex_commands() {
    assert_eq!(code(&["lex", "check", "cat_walking_arrow"]), 0);
    assert_eq!(code(&["lex", "check", "cat_parallel_pair"]), 1);
    assert_eq!(code(&["lex", "verify-colimit", "growing_chain"]), 0);
    assert_eq!(code(&["lex", "verify-colimit", "chain_inclusions"]), 2);
}

#[test]
fn cofinal_map_checks() {
    assert_eq!(code(&["check", "cofinal", "point_at_top"]), 0);
}

#[test]
fn verify_suite_is_deterministic_across_seeds() {
    let a = stdout(&["--format", "machine", "verify-suite"]);
    let b = stdout(&["--format", "machine", "--seed-order", "7", "verify-suite"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["lemmas"].as_array().unwrap().len(), 10);
}

#[test]
fn empty_corpus_warns_and_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_sigmacat"))
        .args(["verify-suite", "--corpus", dir.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stderr).unwrap().contains("warning"));
}

#[test]
fn injected_non_associative_category_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = r#"{
  "kind": "category",
  "category": {
    "objects": ["a"],
    "morphisms": [
      {"name": "id_a", "dom": "a", "cod": "a"},
      {"name": "e", "dom": "a", "cod": "a"},
      {"name": "f", "dom": "a", "cod": "a"}
    ],
    "identities": {"a": "id_a"},
    "composition": [
      ["id_a", "id_a", "id_a"], ["id_a", "e", "e"], ["e", "id_a", "e"], ["id_a", "f", "f"], ["f", "id_a", "f"],
      ["e", "e", "f"], ["e", "f", "e"], ["f", "e", "f"], ["f", "f", "e"]
    ]
  }
}"#;
    std::fs::write(dir.path().join("bad.json"), bad).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_sigmacat"))
        .args(["verify-suite", "--corpus", dir.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("bad"));
}
