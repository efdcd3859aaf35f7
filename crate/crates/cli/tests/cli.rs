use std::process::{Command, Output};

use serde_json::Value;

fn monodromy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monodromy")).args(args).env_remove("MONODROMY_CACHE_DIR").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn basis_table_defaults_to_four_dimensions() {
    let out = monodromy(&["basis", "--max-rank", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "monodromy-report");
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["config"]["dim"], 4);
    let dims: Vec<u64> = v["records"].as_array().unwrap().iter().map(|r| r["details"]["dimension"].as_u64().unwrap()).collect();
    assert_eq!(dims, [4, 6, 20, 60, 204]);

    let v = json(&monodromy(&["basis", "--dim", "2", "--max-rank", "2"]));
    let rows: Vec<(u64, u64)> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["details"]["rank"].as_u64().unwrap(), r["details"]["dimension"].as_u64().unwrap()))
        .collect();
    assert_eq!(rows, [(1, 2), (2, 1)]);
}

#[test]
fn csv_and_text_are_projections() {
    let out = monodromy(&["basis", "--dim", "3", "--max-rank", "3", "--format", "csv"]);
    let s = String::from_utf8(out.stdout).unwrap();
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("suite,check,sector,verdict,cases,details,counterexample"));
    assert_eq!(lines.count(), 3);
    let out = monodromy(&["basis", "--dim", "3", "--max-rank", "3", "--format", "text"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("PASS  basis-dimension [D=3 N=03]"));
    assert!(s.ends_with("pass=3 fail=0 info=0 error=0\n"));
}

#[test]
fn usage_and_resource_errors_exit_with_two() {
    assert_eq!(monodromy(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(monodromy(&["basis", "--dim", "3", "--metric", "+---"]).status.code(), Some(2));
    assert_eq!(monodromy(&["verify", "jacobi", "--cutoff", "2"]).status.code(), Some(2));
    let out = monodromy(&["correspond", "--max-weight", "3", "--budget", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert!(v["summary"]["error"].as_u64().unwrap() > 0);
    assert!(v["records"][2]["counterexample"].as_str().unwrap().contains("exceeds"));
}

#[test]
fn metric_flag_sets_dimension() {
    let v = json(&monodromy(&["basis", "--metric", "+-", "--max-rank", "2"]));
    assert_eq!(v["config"]["dim"], 2);
    assert_eq!(v["config"]["metric"], "+-");
}

#[test]
fn kernel_and_quadgen_commands() {
    let v = json(&monodromy(&["kernel", "--weight", "2", "--classical"]));
    assert_eq!(v["records"][0]["details"]["dimension"], 10);
    let v = json(&monodromy(&["kernel", "--weight", "2", "--quantum", "--show-basis"]));
    assert_eq!(v["records"][0]["details"]["per_degree"]["-1"], 10);
    assert_eq!(v["records"][0]["details"]["basis"].as_array().unwrap().len(), 10);
    let out = monodromy(&["quadgen", "--max-rank", "5", "--no-exceptionals"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["records"][0]["details"]["rank_05"].as_str().unwrap().starts_with("NOT-GENERATED"));
}

#[test]
fn cache_flag_wins_over_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let run = |with_flag: bool| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_monodromy"));
        c.args(["basis", "--dim", "3", "--max-rank", "3"]).env("MONODROMY_CACHE_DIR", env_dir.path());
        if with_flag {
            c.arg("--cache-dir").arg(flag_dir.path());
        }
        c.output().unwrap()
    };
    let a = run(true);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(env_dir.path()).unwrap().count(), 0);
    assert!(std::fs::read_dir(flag_dir.path()).unwrap().count() >= 3);
    let b = run(false);
    assert!(std::fs::read_dir(env_dir.path()).unwrap().count() >= 3);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let args = ["verify", "pi-intertwine", "--dim", "3", "--cutoff", "4", "--pairs", "20"];
    let one = monodromy(&[&args[..], &["--threads", "1"]].concat());
    let three = monodromy(&[&args[..], &["--threads", "3"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, three.stdout);
}
