use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fairseq(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fairseq"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exited normally"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write_temp(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("fairseq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path: PathBuf = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

const WEIGHT_TABLE: &str = r#"{
  "agents": [{"weight": "9/18"}, {"weight": "5/18"}, {"weight": "4/18"}],
  "items": 5,
  "utilities": [[10, 9, 8, 7, 0], [7, 10, 8, 9, 0], [0, 7, 10, 8, 9]]
}"#;

const MNW_TABLE: &str = r#"{
  "agents": [{"weight": 1}, {"weight": 1}],
  "items": 3,
  "utilities": [[3, 2, 2], [2, 2, 1]]
}"#;

fn json(text: &str) -> Value {
    serde_json::from_str(text).expect("valid JSON output")
}

#[test]
fn sequence_subcommand() {
    let (code, out, _) = fairseq(&["sequence", "--method", "jefferson", "--weights", "2,1", "--turns", "3"]);
    assert_eq!((code, out.as_str()), (0, "1 1 2\n"));
    let (code, out, _) = fairseq(&["sequence", "--method", "quota", "--weights", "9/18,5/18,4/18", "--turns", "5", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["turns"], serde_json::json!([1, 2, 1, 3, 1]));
    let (code, _, err) = fairseq(&["sequence", "--method", "mwnw", "--weights", "1,1", "--turns", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("picking-sequence"), "{err}");
}

#[test]
fn sequence_accepts_custom_table_file() {
    let table = write_temp("table.json", r#"{"values": [1, 2], "tail_offset": 1}"#);
    let method = format!("custom:@{table}");
    let (code, out, _) = fairseq(&["sequence", "--method", &method, "--weights", "2,1", "--turns", "4"]);
    assert_eq!((code, out.as_str()), (0, "1 1 2 1\n"));
}

#[test]
fn allocate_subcommand() {
    let inst = write_temp("weights.json", WEIGHT_TABLE);
    let (code, out, _) = fairseq(&["allocate", "--method", "quota", "--instance", &inst, "--json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["bundles"], serde_json::json!([[1, 3, 4], [2], [5]]));
    assert_eq!(v["utilities"][0], "25");
}

#[test]
fn fairness_subcommand() {
    let (code, out, _) = fairseq(&[
        "fairness", "--notion", "wef1", "--sequence", "[1,2,2,2,2]", "--weights", "1,2", "--json",
    ]);
    assert_eq!(code, 1);
    let v = json(&out);
    assert_eq!(v["holds"], false);
    assert_eq!(v["witness"]["prefix"], 5);
    let (code, _, _) = fairseq(&["fairness", "--notion", "wwef1", "--sequence", "[1,2,2,2,2]", "--weights", "1,2"]);
    assert_eq!(code, 0);

    let inst = write_temp("mnw.json", MNW_TABLE);
    let alloc = write_temp("alloc.json", r#"{"bundles": [[1, 3], [2]]}"#);
    let (code, out, _) = fairseq(&["fairness", "--notion", "ef1", "--instance", &inst, "--allocation", &alloc, "--json"]);
    assert_eq!((code, json(&out)["holds"].clone()), (0, Value::Bool(true)));
    let (code, _, _) = fairseq(&["fairness", "--notion", "wef1", "--instance", &inst]);
    assert_eq!(code, 2);
}

#[test]
fn mwnw_subcommand() {
    let inst = write_temp("mnw2.json", MNW_TABLE);
    let (code, out, _) = fairseq(&["mwnw", "--instance", &inst, "--json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["bundles"], serde_json::json!([[1, 3], [2]]));
    assert_eq!(v["score"]["product"], "10");
    let (code, unpruned, _) = fairseq(&["mwnw", "--instance", &inst, "--json", "--no-prune"]);
    assert_eq!((code, unpruned), (0, out));
    let (code, _, err) = fairseq(&["mwnw", "--instance", &inst, "--budget", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("budget") || err.contains("limit"), "{err}");
}

#[test]
fn mono_subcommand() {
    let inst = write_temp("mono.json", WEIGHT_TABLE);
    let (code, out, _) = fairseq(&[
        "mono", "--property", "weight", "--rule", "quota", "--instance", &inst, "--perturb",
        r#"{"agent": 1, "weight": "11/18"}"#, "--json",
    ]);
    assert_eq!(code, 1);
    let v = json(&out);
    assert_eq!(v["agents"][0], serde_json::json!({"agent": 1, "before": "25", "after": "19"}));

    let mnw = write_temp("mono-mnw.json", MNW_TABLE);
    let pert = write_temp("pert.json", r#"{"utilities": [2, 1]}"#);
    let (code, out, _) = fairseq(&["mono", "--property", "resource", "--rule", "mnw", "--instance", &mnw, "--perturb", &pert]);
    assert_eq!(code, 1);
    assert!(out.contains("agent 1: 5 -> 4"), "{out}");

    let (code, _, _) = fairseq(&[
        "mono", "--property", "resource", "--rule", "adams", "--instance", &mnw, "--perturb", r#"{"utilities": [2, 1]}"#,
    ]);
    assert_eq!(code, 0);
    let (code, _, _) = fairseq(&["mono", "--property", "weight", "--rule", "adams", "--instance", &mnw, "--perturb", "{}"]);
    assert_eq!(code, 2);
}

#[test]
fn consistency_subcommand() {
    let (code, _, _) = fairseq(&[
        "consistency", "--kind", "weight", "--before", "[1,2,3,1,2,4,1]", "--after", "[1,2,1,2,3,1,4]", "--agent", "1",
    ]);
    assert_eq!(code, 1);
    let (code, _, _) = fairseq(&["consistency", "--kind", "weight", "--before", "[2,1]", "--after", "[1,2]", "--agent", "1"]);
    assert_eq!(code, 0);
    let (code, out, _) = fairseq(&[
        "consistency", "--kind", "weight", "--rule", "quota", "--weights", "8/24,7/24,3/24,1/24,1/24,1/24,1/24,1/24,1/24",
        "--agent", "1", "--new-weight", "9/24", "--turns", "7", "--json",
    ]);
    assert_eq!(code, 1, "{out}");
    let (code, _, _) = fairseq(&["consistency", "--kind", "resource", "--rule", "webster", "--weights", "3,2,1", "--turns", "9"]);
    assert_eq!(code, 0);
    let (code, _, _) = fairseq(&["consistency", "--kind", "population", "--rule", "dean", "--weights", "3,2", "--turns", "6"]);
    assert_eq!(code, 2);
    let (code, _, _) = fairseq(&["consistency", "--kind", "population", "--rule", "mwnw", "--weights", "1", "--turns", "2", "--new-weight", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn scan_subcommand() {
    let args = ["scan", "--rule", "webster", "--property", "wef1", "--seed", "7", "--trials", "500", "--json"];
    let (code, out, _) = fairseq(&args);
    assert_eq!(code, 1);
    let v = json(&out);
    assert_eq!(v["seed"], 7);
    assert!(v["counterexample"]["instance"].is_object());
    let (code, out, _) = fairseq(&["scan", "--rule", "adams", "--property", "wef1", "--seed", "7", "--trials", "200", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["found"], false);
    let (code, _, _) = fairseq(&["scan", "--rule", "adams", "--property", "wef1", "--min-n", "4", "--max-n", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn repro_subcommand() {
    let (code, out, _) = fairseq(&["repro", "--case", "p61-mnw-resmon"]);
    assert_eq!(code, 0);
    assert!(out.contains("5 -> 4"), "{out}");
    let (code, out, _) = fairseq(&["repro", "--list"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 14);
    let (code, _, err) = fairseq(&["repro", "--case", "p99"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown case"), "{err}");
    assert_eq!(fairseq(&["repro"]).0, 2);
}

#[test]
fn malformed_input_is_a_usage_error() {
    for args in [
        vec!["sequence", "--method", "adams", "--weights", "1,-2", "--turns", "3"],
        vec!["sequence", "--method", "adams", "--weights", "a,b", "--turns", "3"],
        vec!["allocate", "--method", "adams", "--instance", "{not json"],
        vec!["allocate", "--method", "adams", "--instance", "@/nonexistent/file.json"],
        vec!["fairness", "--notion", "envy", "--sequence", "[1]", "--weights", "1"],
        vec!["fairness", "--notion", "wef1", "--sequence", "[0,1]", "--weights", "1"],
        vec!["mono", "--property", "size", "--rule", "adams", "--instance", "{}", "--perturb", "{}"],
    ] {
        let (code, _, err) = fairseq(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.contains("panicked"), "{err}");
    }
}

#[test]
fn json_output_is_deterministic_across_runs_and_workers() {
    let inst = write_temp("det.json", WEIGHT_TABLE);
    let runs = [
        vec!["mwnw", "--instance", &inst, "--json"],
        vec!["scan", "--rule", "mwnw", "--property", "resource", "--seed", "3", "--trials", "300", "--max-m", "5", "--json"],
        vec!["scan", "--rule", "hill", "--property", "wprop1", "--seed", "11", "--trials", "300", "--json"],
        vec!["allocate", "--method", "ecycle", "--instance", &inst, "--json"],
    ];
    for args in runs {
        let (_, first, _) = fairseq(&args);
        let (_, second, _) = fairseq(&args);
        let mut parallel = args.clone();
        parallel.extend(["--workers", "3"]);
        let (_, third, _) = fairseq(&parallel);
        assert_eq!(first, second, "{args:?}");
        assert_eq!(first, third, "{args:?}");
    }
}
