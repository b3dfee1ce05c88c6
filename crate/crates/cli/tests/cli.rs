use std::fs;
use std::process::{Command, Output};

fn linrec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linrec")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn polys(v: &serde_json::Value) -> Vec<String> {
    v["relations"].as_array().unwrap().iter().map(|r| r["poly"].as_str().unwrap().to_string()).collect()
}

#[test]
fn guess_binomial_is_deterministic() {
    let args = ["guess", "--table", "builtin:binomial", "--order", "drl:y<x", "--algo", "bms", "--stop", "x^3"];
    let a = linrec(&args);
    assert!(a.status.success());
    assert_eq!(polys(&json(&a)), ["y^2", "x*y - y - 1", "x^2 - 2*x + 1"]);
    assert_eq!(a.stdout, linrec(&args).stdout);
}

#[test]
fn guess_fib3d_and_f11() {
    let out =
        linrec(&["guess", "--table", "builtin:fib3d", "--order", "lex:z<y<x", "--algo", "asfglm", "--bound", "2"]);
    assert_eq!(polys(&json(&out)), ["z^2 - z - 1", "y - 1", "x - 3*z - 2"]);
    let out = linrec(&[
        "guess",
        "--table",
        "builtin:f11",
        "--order",
        "drl:y<x",
        "--algo",
        "asfglm",
        "--bound",
        "4",
        "--field",
        "fp:11",
    ]);
    // x*y - x - y + 1 with coefficients printed as residues mod 11.
    assert!(polys(&json(&out)).contains(&"x*y + 10*x + 10*y + 1".to_string()));
}

/// `(monomial, relation)` pairs of the skip lines, and the monomials where
/// every tested relation was skipped.
fn skip_summary(trace: &str) -> (Vec<(String, String)>, Vec<String>) {
    let mut pairs = Vec::new();
    let mut full = Vec::new();
    let mut at = String::new();
    let (mut skipped, mut tested) = (0, 0);
    fn close(at: &str, skipped: usize, tested: usize, full: &mut Vec<String>) {
        if skipped > 0 && tested == 0 {
            full.push(at.to_string());
        }
    }
    for line in trace.lines() {
        if let Some(m) = line.strip_prefix("For the monomial ") {
            close(&at, skipped, tested, &mut full);
            at = m.to_string();
            (skipped, tested) = (0, 0);
        } else if let Some(pos) = line.find("We skip testing ") {
            pairs.push((at.clone(), line[pos + 16..].trim_end_matches('.').to_string()));
            skipped += 1;
        } else if line.contains(" succeeds since ") || line.contains(" fails since ") {
            tested += 1;
        }
    }
    close(&at, skipped, tested, &mut full);
    (pairs, full)
}

#[test]
fn binomial_trace_skips_match_json() {
    let common =
        ["--table", "builtin:binomial", "--order", "drl:y<x", "--algo", "abms", "--bound", "5", "--stop", "x^5"];
    let trace = stdout(&linrec(&[&["trace"][..], &common].concat()));
    let (pairs, full) = skip_summary(&trace);
    let want =
        [("x*y^4", "g1"), ("x*y^4", "g2"), ("x^2*y^3", "g1"), ("x^3*y^2", "g1"), ("x^4*y", "g1"), ("x^4*y", "g3")];
    let want: Vec<(String, String)> = want.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    assert_eq!(pairs, want);
    let result = json(&linrec(&[&["guess"][..], &common].concat()));
    assert_eq!(result["skipped_tests"], pairs.len());
    assert_eq!(result["fully_skipped_monomials"], serde_json::json!(full));
}

#[test]
fn delta_trace_marks_thirteen_monomials() {
    let out = linrec(&[
        "trace",
        "--table",
        "builtin:delta",
        "--order",
        "drl:y<x",
        "--algo",
        "abms",
        "--bound",
        "14",
        "--stop",
        "x^9",
    ]);
    let (_, full) = skip_summary(&stdout(&out));
    assert_eq!(full.len(), 13);
}

#[test]
fn trivial_table_single_step() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("one.json");
    fs::write(&path, r#"{"nvars": 2, "field": "q", "entries": [[[0, 0], "1"]]}"#).unwrap();
    let out = linrec(&["trace", "--table", path.to_str().unwrap(), "--order", "drl:y<x", "--stop", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).matches("For the monomial").count(), 1);
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn bench_writes_csv_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("shape.csv");
    let out = linrec(&[
        "bench",
        "--family",
        "shape",
        "--dim",
        "2",
        "--dmin",
        "2",
        "--dmax",
        "25",
        "--algos",
        "asfglm,abms",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("family,nvars,d,algorithm,field,seed,staircase_size,queries,"));
    assert_eq!(csv_rows(&text).len(), 48);

    let out = linrec(&["bench", "--family", "rectangle", "--dim", "2", "--dmax", "4", "--algos", "asfglm"]);
    let rows = csv_rows(&stdout(&out));
    let row = rows.iter().find(|r| r[2] == "4").unwrap();
    assert_eq!((row[6].as_str(), row[7].as_str()), ("8", "25"));
}

#[test]
fn bench_lshape_3d() {
    let out = linrec(&["bench", "--family", "lshape", "--dim", "3", "--dmin", "15", "--dmax", "15", "--algos", "abms"]);
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 1);
    assert_eq!((rows[0][6].as_str(), rows[0][7].as_str(), rows[0][12].as_str()), ("43", "4557", "true"));
}

#[test]
fn exit_codes() {
    let usage = linrec(&["guess", "--table", "builtin:binomial", "--algo", "abms", "--stop", "x^3"]);
    assert_eq!(usage.status.code(), Some(2));
    let auto = linrec(&["guess", "--table", "builtin:binomial", "--stop", "auto"]);
    assert_eq!(auto.status.code(), Some(2));

    let partial = linrec(&["guess", "--table", "builtin:zero", "--algo", "asfglm", "--bound", "1"]);
    assert_eq!(partial.status.code(), Some(3));
    assert_eq!(json(&partial)["failure"], "RunSfglm");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"nvars": 2, "field": "q", "order": "drl:y<x", "relations": ["x*y - 1", "y^2", "x^2"],
            "staircase_values": [[[0, 0], "1"], [[1, 0], "2"], [[0, 1], "3"]]}"#,
    )
    .unwrap();
    let out = linrec(&["guess", "--table", bad.to_str().unwrap(), "--algo", "asfglm", "--bound", "3"]);
    assert_eq!(out.status.code(), Some(4));

    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{\"nvars\": 2,\n \"field\": }").unwrap();
    let out = linrec(&["guess", "--table", broken.to_str().unwrap(), "--stop", "x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn stop_auto_on_known_tables() {
    let out = linrec(&["guess", "--table", "family:rectangle:2:4", "--algo", "abms", "--bound", "8", "--stop", "auto"]);
    let v = json(&out);
    assert_eq!(v["staircase_size"], 8);
    assert_eq!(v["queries"], 39);
}
