use std::path::Path;
use std::process::{Command, Output};

fn semcov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semcov"))
        .args(args)
        .env_remove("SEMCOV_SEED")
        .env_remove("RUST_LOG")
        .output()
        .expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Data rows of a semcov CSV, skipping the provenance line and header.
fn data_rows(path: &Path) -> Vec<Vec<String>> {
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("# semcov "), "provenance line missing");
    assert!(text.lines().next().unwrap().contains("digest="));
    text.lines().skip(2).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

const COMPLETE: &str = r#"{"query_id":"full","responses":["Paris.","It is Paris.","Lyon."],"log_probs":[-0.5,-1.0,-2.0],"entail_prob":[[1,0.9,0.1],[0.95,1,0.05],[0.1,0.0,1]],"entail_class":[["entailment","entailment","contradiction"],["entailment","entailment","contradiction"],["contradiction","contradiction","entailment"]],"correct":true}"#;

#[test]
fn cluster_fills_labels_and_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.jsonl");
    let same = r#"{"query_id":"same","responses":["a","b","c"],"entail_class":[["entailment","entailment","entailment"],["entailment","entailment","entailment"],["entailment","entailment","entailment"]]}"#;
    std::fs::write(&input, format!("{same}\n{COMPLETE}\n")).unwrap();
    let once = dir.path().join("once.jsonl");
    let twice = dir.path().join("twice.jsonl");

    let out = semcov(&["cluster", "--input", p(&input), "--output", p(&once)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = std::fs::read_to_string(&once).unwrap();
    let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[0]["labels"], serde_json::json!([0, 0, 0]));
    assert_eq!(lines[1]["labels"], serde_json::json!([0, 0, 1]));

    let out = semcov(&["cluster", "--input", p(&once), "--output", p(&twice)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&once).unwrap(), std::fs::read(&twice).unwrap());
}

#[test]
fn malformed_matrix_is_rejected_by_query_id() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.jsonl");
    let bad = r#"{"query_id":"broken-7","responses":["a","b"],"entail_class":[["entailment","neutral"]]}"#;
    std::fs::write(&input, format!("{COMPLETE}\n{bad}\n")).unwrap();
    let output = dir.path().join("out.jsonl");
    for cmd in ["cluster", "estimate"] {
        let out = semcov(&[cmd, "--input", p(&input), "--output", p(&output)]);
        assert_eq!(out.status.code(), Some(2));
        assert!(stderr(&out).contains("broken-7"), "{}", stderr(&out));
        assert!(!output.exists(), "nothing written before validation passes");
    }
}

#[test]
fn cluster_requires_entailment_classes() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.jsonl");
    std::fs::write(&input, "{\"query_id\":\"bare\",\"responses\":[\"a\"]}\n").unwrap();
    let out = semcov(&["cluster", "--input", p(&input), "--output", p(&dir.path().join("o"))]);
    assert_ne!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("bare"));
}

#[test]
fn estimate_plugin_and_skipped_good_turing() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.jsonl");
    let aabb = r#"{"query_id":"aabb","responses":["a","a","b","b"],"labels":[0,0,1,1]}"#;
    let abc = r#"{"query_id":"abc","responses":["a","b","c"],"labels":[0,1,2]}"#;
    std::fs::write(&input, format!("{aabb}\n{abc}\n")).unwrap();
    let output = dir.path().join("scores.csv");

    let out = semcov(&["estimate", "--input", p(&input), "--methods", "plugin,good_turing", "--output", p(&output)]);
    assert_eq!(out.status.code(), Some(1), "partial run");
    assert!(stderr(&out).contains("good_turing undefined"), "{}", stderr(&out));
    let rows = data_rows(&output);
    assert!(rows.contains(&vec!["aabb".into(), "plugin".into(), "0.693147".into()]));
    assert!(!rows.iter().any(|r| r[0] == "abc" && r[1] == "good_turing"));
    assert!(rows.iter().any(|r| r[0] == "aabb" && r[1] == "good_turing"));
}

#[test]
fn estimate_all_gives_ten_rows_for_complete_record() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.jsonl");
    std::fs::write(&input, format!("{COMPLETE}\n")).unwrap();
    let output = dir.path().join("scores.csv");
    let out = semcov(&["estimate", "--input", p(&input), "--output", p(&output)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let rows = data_rows(&output);
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r[0] == "full" && r[2].split('.').nth(1).unwrap().len() == 6));

    let out = semcov(&["estimate", "--input", p(&input), "--methods", "plugin", "--precision", "12", "--output", p(&output)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(data_rows(&output)[0][2], "0.636514168295");
}

#[test]
fn estimate_with_nothing_computable_fails() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.jsonl");
    std::fs::write(&input, "{\"query_id\":\"q\",\"responses\":[\"a\",\"b\"]}\n").unwrap();
    let out = semcov(&["estimate", "--input", p(&input), "--methods", "pe,kle", "--output", p(&dir.path().join("o.csv"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_rejects_zero_entropy_population() {
    let dir = tempfile::tempdir().unwrap();
    let out = semcov(&["simulate", "--population", "zipf", "--alphabet", "1", "--output", p(dir.path())]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("curve.csv").exists());
}

#[test]
fn simulate_writes_both_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = semcov(&["simulate", "--trials", "200", "--n", "5,10", "--seed", "3", "--output", p(dir.path())]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let curve = data_rows(&dir.path().join("curve.csv"));
    let mse = data_rows(&dir.path().join("mse.csv"));
    assert_eq!(curve.len(), 6);
    assert_eq!(mse.len(), 6);
    let header = std::fs::read_to_string(dir.path().join("curve.csv")).unwrap();
    assert!(header.lines().next().unwrap().contains("\"seed\":3"));
}

#[test]
fn seed_defaults_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let args = |d: &Path| vec!["simulate".to_string(), "--trials".into(), "100".into(), "--n".into(), "5".into(), "--output".into(), p(d).into()];
    let run_env = Command::new(env!("CARGO_BIN_EXE_semcov")).args(args(&a)).env("SEMCOV_SEED", "99").output().unwrap();
    assert!(run_env.status.success());
    let mut flag = args(&b);
    flag.extend(["--seed".to_string(), "99".into()]);
    let run_flag = semcov(&flag.iter().map(String::as_str).collect::<Vec<_>>());
    assert!(run_flag.status.success());
    assert_eq!(std::fs::read(a.join("mse.csv")).unwrap(), std::fs::read(b.join("mse.csv")).unwrap());
}

fn scores_csv(dir: &Path, methods: &[&str], single_class: Option<&str>) -> std::path::PathBuf {
    let mut text = String::from("query_id,method,score,correct\n");
    for q in 0..30 {
        for (i, m) in methods.iter().enumerate() {
            let correct = if Some(*m) == single_class { true } else { q % 2 == 0 };
            let score = (q * 7 % 11) as f64 / 10.0 + if q % 2 == 0 { 0.0 } else { 0.3 * (i + 1) as f64 };
            text.push_str(&format!("q{q},{m},{score},{correct}\n"));
        }
    }
    let path = dir.join("scores.csv");
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn evaluate_single_method_ranks_first() {
    let dir = tempfile::tempdir().unwrap();
    let scores = scores_csv(dir.path(), &["kle"], None);
    let out_dir = dir.path().join("out");
    let out = semcov(&["evaluate", "--scores", p(&scores), "--bootstrap", "50", "--output", p(&out_dir)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(data_rows(&out_dir.join("auroc.csv")).len(), 1);
    let ranks = data_rows(&out_dir.join("ranks_a0.1.csv"));
    assert_eq!(ranks.len(), 1);
    assert_eq!(&ranks[0][4..], ["1", "1"]);
}

#[test]
fn evaluate_regularization_sweep_and_single_class_skip() {
    let dir = tempfile::tempdir().unwrap();
    let scores = scores_csv(dir.path(), &["plugin", "hybrid", "constant"], Some("constant"));
    let out_dir = dir.path().join("out");
    let out = semcov(&[
        "evaluate", "--scores", p(&scores), "--bootstrap", "50", "--bt-reg", "0,0.01,0.1,1", "--output", p(&out_dir),
    ]);
    assert_eq!(out.status.code(), Some(1), "single-class method makes the run partial");
    assert!(stderr(&out).contains("constant"));
    let auroc = data_rows(&out_dir.join("auroc.csv"));
    assert_eq!(auroc.len(), 2);
    for a in ["0", "0.01", "0.1", "1"] {
        let ranks = data_rows(&out_dir.join(format!("ranks_a{a}.csv")));
        assert_eq!(ranks.len(), 2, "a={a}");
    }
}
