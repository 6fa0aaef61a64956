use std::process::Command;

use serde_json::Value;

fn laurel(args: &[&str], threads: Option<&str>) -> (String, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_laurel"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("LAUREL_THREADS", t),
        None => cmd.env_remove("LAUREL_THREADS"),
    };
    let out = cmd.output().expect("binary runs");
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap_or(-1))
}

fn json(args: &[&str]) -> (Value, i32) {
    let (out, code) = laurel(args, None);
    (serde_json::from_str(&out).unwrap_or(Value::Null), code)
}

fn validator() -> jsonschema::Validator {
    let schema: Value = serde_json::from_str(laurel::cli::SCHEMA).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

#[test]
fn expand_frobenius_three() {
    let (v, code) = json(&["expand", "frobenius(3)", "--terms", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["letters"], serde_json::json!(["0", "X", "X^3", "X^9", "X^27"]));
    assert!(validator().is_valid(&v));
}

#[test]
fn expand_baum_sweet_witness() {
    let (v, code) = json(&["expand", "baum-sweet", "--terms", "300"]);
    assert_eq!(code, 0);
    assert!(v["result"]["bad_witness"]["max_quotient_degree"].as_i64().unwrap() <= 2);
    assert_eq!(v["result"]["doubling_check"]["agrees"], Value::Bool(true));
}

#[test]
fn exit_codes() {
    assert_eq!(laurel(&["expand", "no-such-instance"], None).1, 2);
    assert_eq!(laurel(&["certify", "baum-sweet"], None).1, 2);
    assert_eq!(laurel(&["reproduce", "13"], None).1, 2);
    let (v, code) = json(&["expand", "frobenius(5)", "--terms", "6", "--prec-cap", "512"]);
    assert_eq!(code, 3);
    assert_eq!(v["status"], "precision-cap");
    assert!(v["result"]["count"].as_u64().unwrap() < 6);
}

#[test]
fn refuted_condition_exits_four() {
    // For p = 5 the palindromes are too short: |V_2| = 23 < 2.5·|U_2| = 32.5.
    let (v, code) = json(&["certify", "theta-p(5)", "--n-max", "4"]);
    assert_eq!(code, 4);
    assert_eq!(v["status"], "refuted");
    assert_eq!(v["result"]["certificate"]["satisfied"], Value::Bool(false));
    assert_eq!(v["result"]["lengths"][0]["v_len"], 23);
}

#[test]
fn file_sources() {
    let dir = std::env::temp_dir().join(format!("laurel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("series.json");
    std::fs::write(&path, r#"{"p": 3, "top_degree": -1, "coeffs": [1, 2, 0, 1, 1, 2, 2, 0, 1, 0], "precision": 10}"#).unwrap();
    let (v, code) = json(&["expand", path.to_str().unwrap(), "--terms", "50"]);
    assert_eq!(code, 3);
    assert_eq!(v["result"]["halt"], "precision-exhausted");
    let rat = dir.join("rational.json");
    std::fs::write(&rat, r#"{"p": 2, "num": [1], "den": [1, 1, 1]}"#).unwrap();
    let (v, code) = json(&["expand", rat.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["halt"], "input-was-rational");
    assert_eq!(v["result"]["letters"], serde_json::json!(["0", "X^2+X+1"]));
    let word = dir.join("word.json");
    std::fs::write(&word, r#"{"p": 2, "letters": [[0, 1], [1, 1]]}"#).unwrap();
    let (v, _) = json(&["expand", word.to_str().unwrap()]);
    assert_eq!(v["result"]["letters"], serde_json::json!(["0", "X", "X+1"]));
}

#[test]
fn scan_random_matches_oracle() {
    let (v, code) = json(&["scan", "--pair", "random", "--p", "2", "--D", "5", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["oracle_agrees"], Value::Bool(true));
    assert!(validator().is_valid(&v));
}

#[test]
fn certify_mills_robbins_lengths() {
    let (v, code) = json(&["certify", "mills-robbins", "--n-max", "5"]);
    assert_eq!(code, 0);
    for row in v["result"]["lengths"].as_array().unwrap() {
        let n = row["n"].as_u64().unwrap() as u32;
        assert_eq!(row["u_len"].as_u64().unwrap(), 3u64.pow(n));
        assert_eq!(row["v_len"].as_u64().unwrap(), 3u64.pow(n + 1) - 2);
    }
    assert!(validator().is_valid(&v));
}

#[test]
fn construct_default_passes() {
    let (v, code) = json(&["construct", "--theta", "baum-sweet", "--phi-gauge", "reciprocal", "--stages", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["subtracted_a0"], "1");
    assert_eq!(v["result"]["relation_search"]["relation"], Value::Null);
    assert!(validator().is_valid(&v));
}

#[test]
fn tsv_and_thread_independence() {
    let args = ["scan", "--theta", "buck-robbins", "--phi", "buck-robbins^-1", "--D", "4", "--format", "tsv"];
    let (one, c1) = laurel(&args, Some("1"));
    let (eight, c8) = laurel(&args, Some("8"));
    assert_eq!((c1, c8), (0, 0));
    assert_eq!(one, eight);
    assert!(one.starts_with("path\tvalue\n"));
    assert!(one.contains("result.scan.product2.value.log2\t"));
}

#[test]
fn schema_command_prints_the_schema() {
    let (v, code) = json(&["schema"]);
    assert_eq!(code, 0);
    assert_eq!(v["title"], "laurel report");
}
