use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use bcast_core::Witness;

fn bcast(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcast"))
        .args(args)
        .env_remove("BCAST_EXACT_LIMIT")
        .output()
        .expect("bcast runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn field(text: &str, name: &str) -> String {
    let prefix = format!("{name}: ");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no {name} in {text}"))
        .to_string()
}

#[test]
fn exact_values() {
    for (args, expected) in [
        (vec!["--n", "21", "--gens", "1,2"], "9"),
        (vec!["--n", "21", "--gens", "1,2", "--bound", "2"], "8"),
        (vec!["--n", "6", "--gens", "1,3", "--bound", "1"], "3"),
        (vec!["--n", "12", "--gens", "1,3,5"], "6"),
        (vec!["--n", "12", "--gens", "1,3,5", "--bound", "1"], "6"),
    ] {
        let o = bcast(&[&["exact"], args.as_slice()].concat());
        assert!(o.status.success(), "{args:?}: {}", stderr(&o));
        assert_eq!(field(&stdout(&o), "value"), expected, "{args:?}");
    }
}

#[test]
fn exact_witness_file_revalidates() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let o = bcast(&[
        "exact",
        "--n",
        "18",
        "--gens",
        "1,6",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let b = Witness::from_json(&fs::read_to_string(&path).unwrap())
        .unwrap()
        .into_broadcast()
        .unwrap();
    assert_eq!(b.cost(), 6);
    assert_eq!(b.check_independent(), Ok(()));
}

#[test]
fn exact_json_output() {
    let o = bcast(&["exact", "--n", "10", "--gens", "1,2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], 4);
    assert_eq!(v["witness"]["cost"], 4);
    assert!(v["bound"].is_null());
}

#[test]
fn predictions() {
    let o = bcast(&["predict", "--n", "14", "--a", "7"]);
    assert!(stdout(&o).starts_with("C(14;1,7) beta_b: 7 (exact"));
    let o = bcast(&["predict", "--n", "23", "--a", "7"]);
    assert!(stdout(&o).starts_with("C(23;1,7) beta_b: unknown (unknown, open)"));
    let o = bcast(&["predict", "--n", "13", "--a", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["beta"]["value"], 5);
    assert_eq!(v["beta"]["kind"], "exact");
    let o = bcast(&["predict", "--n", "25", "--a", "5", "--format", "csv"]);
    assert_eq!(
        stdout(&o).lines().nth(1),
        Some("25,5,10,exact,multiple_of_a,10")
    );
}

#[test]
fn construct_writes_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let o = bcast(&[
        "construct",
        "--n",
        "40",
        "--a",
        "8",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let b = Witness::from_json(&fs::read_to_string(&path).unwrap())
        .unwrap()
        .into_broadcast()
        .unwrap();
    assert_eq!(b.check_independent(), Ok(()));
    assert_eq!(
        Some(b.cost()),
        bcast_core::predict_beta(40, 8).unwrap().value
    );

    let o = bcast(&["construct", "--n", "23", "--a", "7"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_sweep_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let o = bcast(&["verify", "--n-max", "14", "--out", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(bcast_core::verify::CSV_HEADER));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), (4..=14).map(|n| n / 2 - 1).sum::<usize>());
    assert!(rows.iter().all(|r| !r.ends_with(",mismatch")));
    assert!(stderr(&o).starts_with(&format!("rows={} ", rows.len())));
}

#[test]
fn verify_beyond_limit_marks_skipped() {
    let o = bcast(&["verify", "--n-min", "25", "--n-max", "26", "--a", "2"]);
    assert!(o.status.success());
    let csv = stdout(&o);
    assert!(
        csv.lines()
            .skip(1)
            .all(|l| l.ends_with(",skipped_size") || l.ends_with(",confirmed")),
        "{csv}"
    );
}

#[test]
fn verify_bounded_only() {
    let o = bcast(&[
        "verify", "--n-min", "28", "--n-max", "28", "--a", "7", "--bound", "2", "--format", "json",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["beta_bounded2"], 14);
    assert_eq!(v[0]["status"], "confirmed");
}

#[test]
fn size_refusals_exit_2() {
    let o = bcast(&["exact", "--n", "30", "--gens", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = bcast(&["check-2bounded", "--n-max", "30"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn limit_override_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_bcast"))
        .args(["exact", "--n", "12", "--gens", "1,2"])
        .env("BCAST_EXACT_LIMIT", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_bcast"))
        .args(["exact", "--n", "12", "--gens", "1,2"])
        .env("BCAST_EXACT_LIMIT", "one")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        vec!["exact", "--n", "10"],
        vec!["exact", "--n", "10", "--gens", "1,7"],
        vec!["predict", "--n", "10", "--a", "6"],
        vec!["verify", "--n-max", "10", "--bound", "3"],
        vec!["frobnicate"],
    ] {
        assert_eq!(bcast(&args).status.code(), Some(1), "{args:?}");
    }
    assert!(bcast(&["--help"]).status.success());
}

#[test]
fn check_2bounded_reports_gaps() {
    let o = bcast(&["check-2bounded", "--n-max", "21"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = stdout(&o);
    assert!(csv.lines().any(|l| l == "21,2,9,8,1,true"), "{csv}");
}

#[test]
fn reduce_from_stdin() {
    let mut values = vec![0u32; 30];
    values[0] = 5;
    let input = format!("{{\"n\":30,\"generators\":[1,5],\"values\":{values:?},\"cost\":5}}\n");
    let mut child = Command::new(env!("CARGO_BIN_EXE_bcast"))
        .args(["reduce", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let b = Witness::from_json(&stdout(&o))
        .unwrap()
        .into_broadcast()
        .unwrap();
    assert!(b.is_ell_bounded(2));
    assert!(b.cost() >= 5);
    assert_eq!(b.check_independent(), Ok(()));
}

#[test]
fn reduce_rejects_dependent_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let mut values = vec![0u32; 30];
    values[0] = 3;
    values[2] = 1;
    fs::write(
        &path,
        format!("{{\"n\":30,\"generators\":[1,5],\"values\":{values:?},\"cost\":4}}"),
    )
    .unwrap();
    assert_eq!(
        bcast(&["reduce", path.to_str().unwrap()]).status.code(),
        Some(1)
    );
}

#[test]
fn reduce_random_is_seeded() {
    let run = |seed: &str| stdout(&bcast(&["reduce", "--random", "60", "--seed", seed]));
    let first = run("11");
    assert_eq!(first, run("11"));
    assert_ne!(first, run("12"));
    assert_eq!(first.lines().count(), 61);
    assert!(first.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn coverage_and_errata() {
    let o = bcast(&["coverage"]);
    assert!(stdout(&o).starts_with("n_class,a_class,theorem,kind\n"));
    let o = bcast(&["coverage", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.as_array().unwrap().len() >= 12);

    let o = bcast(&[
        "errata",
        "--n-max",
        "20",
        "--structural-n-max",
        "40",
        "--format",
        "json",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["findings"]
        .as_array()
        .unwrap()
        .iter()
        .any(|f| f.as_str().unwrap().contains("C(19;1,6)")));
}
