use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cauchy-lab")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn verify_suites_pass_and_report_every_case() {
    let out = run(&["verify", "--suite", "plemelj"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("# failed: 0"));
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("plemelj,")).collect();
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
}

#[test]
fn tumanov_table_has_one_column_per_mu() {
    let out = run(&["tumanov", "--alpha", "0.5", "--J", "6", "--mu", "0,0.5,1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let header = text.lines().find(|l| l.starts_with("j,")).unwrap();
    assert_eq!(header, "j,lambda,S_value_re,S_value_im,q_mu_0,q_mu_0.5,q_mu_1");
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1 + 5);
}

#[test]
fn header_records_seed_and_config_hash() {
    let a = stdout(&run(&["seminorm", "--seed", "5", "--budget", "64"]));
    let b = stdout(&run(&["seminorm", "--seed", "6", "--budget", "64"]));
    assert!(a.contains("# seed: 5\n"));
    let hash = |s: &str| s.lines().find(|l| l.starts_with("# config_sha256: ")).unwrap().to_owned();
    assert_ne!(hash(&a), hash(&b));
    assert_eq!(hash(&a).len(), "# config_sha256: ".len() + 64);
}

#[test]
fn config_file_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("t.json");
    fs::write(&cfg, r#"{"J": 5, "mu": [2]}"#).unwrap();
    let out = run(&["tumanov", "--J", "12", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains(",q_mu_2\n"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1 + 4);
}

#[test]
fn output_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("solve.json");
    let out = run(&["dbar", "solve", "--form", "unit", "--rays", "16", "--radial", "8", "-o", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["header"]["command"], "dbar solve");
    assert_eq!(doc["body"]["shape"], serde_json::json!([4, 4]));
    let err: f64 = doc["header"]["max_abs_err"].as_str().unwrap().parse().unwrap();
    assert!(err < 1e-8, "{err}");
}

#[test]
fn exit_codes_follow_the_error_class() {
    let dir = tempfile::tempdir().unwrap();

    let bad_json = dir.path().join("bad.json");
    fs::write(&bad_json, "{ not json").unwrap();
    assert_eq!(code(&run(&["verify", "--config", bad_json.to_str().unwrap()])), 1);

    let unknown = dir.path().join("unknown.json");
    fs::write(&unknown, r#"{"nodes": 3}"#).unwrap();
    assert_eq!(code(&run(&["tumanov", "--config", unknown.to_str().unwrap()])), 1);

    let wrong = dir.path().join("wrong.json");
    fs::write(&wrong, r#"{"command": "seminorm"}"#).unwrap();
    assert_eq!(code(&run(&["tumanov", "--config", wrong.to_str().unwrap()])), 1);

    assert_eq!(code(&run(&["operators", "--n", "100"])), 1);
    assert_eq!(code(&run(&["tumanov", "--alpha", "1.5"])), 1);
    assert_eq!(code(&run(&["no-such-command"])), 1);
    assert_eq!(code(&run(&["verify", "--config", "/no/such/config.json"])), 3);

    assert_eq!(code(&run(&["tumanov", "--J", "4", "--tolerance", "1e-20"])), 2);

    let blocked = dir.path().join("missing").join("out.csv");
    assert_eq!(code(&run(&["verify", "--suite", "pv", "-o", blocked.to_str().unwrap()])), 3);
}
