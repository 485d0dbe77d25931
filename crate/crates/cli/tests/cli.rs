use std::path::Path;
use std::process::{Command, Output};

fn hurwitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(args)
        .env_remove("HURWITZ_CACHE")
        .output()
        .expect("binary runs")
}

fn hurwitz_with_cache_env(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(args)
        .env("HURWITZ_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn oracle_table_single_row() {
    let o = hurwitz(&["table", "--g-max", "0", "--n-max", "1", "--method", "oracle", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        rows,
        serde_json::json!([{"g": 0, "mu": [1], "method": "oracle", "value": "1/1"}])
    );
}

#[test]
fn both_methods_agree() {
    let o = hurwitz(&["table", "--g-max", "1", "--n-max", "3", "--method", "both", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r["equal"] == true));
}

#[test]
fn csv_columns() {
    let o = hurwitz(&["table", "--g-max", "0", "--n-max", "4", "--method", "recursion", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("g,mu,method,value"));
    assert_eq!(lines.next(), Some("0,1;1;1,recursion,4/1"));
    assert!(text.contains("0,2;1;1,recursion,120/1"));
}

#[test]
fn bad_flags_exit_64() {
    assert_eq!(code(&hurwitz(&["table", "--g-max", "-1"])), 64);
    assert_eq!(code(&hurwitz(&["table", "--bogus"])), 64);
    assert_eq!(code(&hurwitz(&["table", "--method", "guess"])), 64);
    assert_eq!(code(&hurwitz(&["check", "nothing"])), 64);
    assert_eq!(code(&hurwitz(&[])), 64);
    assert_eq!(code(&hurwitz(&["--help"])), 0);
}

#[test]
fn out_of_range_exit_65() {
    assert_eq!(code(&hurwitz(&["table", "--n-max", "0"])), 65);
    assert_eq!(code(&hurwitz(&["table", "--n-max", "11"])), 65);
    assert_eq!(code(&hurwitz(&["table", "--g-max", "5"])), 65);
    assert_eq!(code(&hurwitz(&["wkg", "1", "1", "--trunc-order", "5"])), 65);
    assert_eq!(code(&hurwitz(&["wkg", "0", "1"])), 65);
    assert_eq!(code(&hurwitz(&["fg", "1"])), 65);
    let o = hurwitz(&["wkg", "0", "2"]);
    assert_eq!(code(&o), 65);
    assert!(stderr(&o).contains("Bergman"));
}

#[test]
fn wkg_json_is_byte_stable() {
    let a = hurwitz(&["wkg", "0", "4"]);
    let b = hurwitz(&["wkg", "0", "4"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let w03 = hurwitz(&["wkg", "0", "3"]);
    assert_eq!(stdout(&w03), "{\"g\":0,\"k\":3,\"terms\":[{\"a\":[2,2,2],\"c\":\"1/1\"}]}\n");
}

#[test]
fn wkg_11_has_no_simple_poles() {
    let o = hurwitz(&["wkg", "1", "1"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let terms = v["terms"].as_array().unwrap();
    assert!(!terms.is_empty());
    assert!(terms.iter().all(|t| t["a"] != serde_json::json!([1])));
}

#[test]
fn raised_order_gives_same_form() {
    let a = hurwitz(&["wkg", "1", "2"]);
    let b = hurwitz(&["wkg", "1", "2", "--trunc-order", "20"]);
    assert_eq!(code(&b), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn check_times_prints_anchors() {
    let o = hurwitz(&["check", "times"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("t_3 ") && l.contains("3/1") && l.ends_with("true")));
    assert!(text.lines().any(|l| l.starts_with("t_4 ") && l.contains("1/3") && l.ends_with("true")));
}

#[test]
fn check_suites_pass() {
    assert_eq!(code(&hurwitz(&["check", "bm", "--g-max", "1", "--n-max", "4"])), 0);
    assert_eq!(code(&hurwitz(&["check", "elsv", "--g-max", "1", "--n-max", "4"])), 0);
    assert_eq!(code(&hurwitz(&["check", "series"])), 0);
    assert_eq!(code(&hurwitz(&["fg", "2"])), 0);
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("memo.json");
    let cache_arg = cache.to_str().unwrap();
    let args = ["table", "--g-max", "1", "--n-max", "4", "--format", "json"];
    let plain = hurwitz(&args);
    let mut with_cache: Vec<&str> = args.to_vec();
    with_cache.extend(["--cache", cache_arg]);
    let cold = hurwitz(&with_cache);
    assert!(cache.exists());
    let warm = hurwitz(&with_cache);
    assert_eq!(code(&warm), 0);
    assert_eq!(plain.stdout, cold.stdout);
    assert_eq!(plain.stdout, warm.stdout);
}

#[test]
fn env_var_sets_cache_path() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("env.json");
    let o = hurwitz_with_cache_env(&["wkg", "0", "3"], &cache);
    assert_eq!(code(&o), 0);
    assert!(cache.exists());
}

#[test]
fn corrupted_fingerprint_cache_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("memo.json");
    let cache_arg = cache.to_str().unwrap();
    let args = ["check", "bm", "--g-max", "1", "--n-max", "4", "--format", "json"];
    let plain = hurwitz(&args);
    let mut with_cache: Vec<&str> = args.to_vec();
    with_cache.extend(["--cache", cache_arg]);
    assert_eq!(code(&hurwitz(&with_cache)), 0);

    // wrong values under a foreign fingerprint must not be read
    let text = std::fs::read_to_string(&cache).unwrap();
    let mut file: serde_json::Value = serde_json::from_str(&text).unwrap();
    for entry in file["entries"].as_array_mut().unwrap() {
        entry["fingerprint"] = "tampered".into();
        for term in entry["terms"].as_array_mut().unwrap() {
            term["c"] = "12345/1".into();
        }
    }
    std::fs::write(&cache, file.to_string()).unwrap();
    let o = hurwitz(&with_cache);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(o.stdout, plain.stdout);
}

#[test]
fn foreign_version_cache_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("memo.json");
    std::fs::write(&cache, r#"{"version":"other","entries":[{"garbage":true}]}"#).unwrap();
    let o = hurwitz(&["wkg", "0", "3", "--cache", cache.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "{\"g\":0,\"k\":3,\"terms\":[{\"a\":[2,2,2],\"c\":\"1/1\"}]}\n");
    std::fs::write(&cache, "not json").unwrap();
    let o = hurwitz(&["wkg", "0", "3", "--cache", cache.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
}
