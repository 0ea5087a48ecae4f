use std::path::Path;
use std::process::{Command, Output};

fn nesieve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nesieve"))
        .args(args)
        .output()
        .expect("run nesieve")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn survivors_line(text: &str) -> &str {
    text.lines()
        .find(|l| l.starts_with("# survivors"))
        .expect("survivor summary")
}

#[test]
fn sieve_text_output() {
    let o = nesieve(&["sieve", "--ell", "3", "--from", "2", "--to", "10000"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(survivors_line(&text).starts_with("# survivors (19): 7, 9, 13,"));
    assert!(survivors_line(&text).ends_with("997, 1597"));

    let o = nesieve(&["sieve", "--ell", "29", "--from", "2", "--to", "10000", "--workers", "3"]);
    assert_eq!(
        survivors_line(&stdout(&o)),
        "# survivors (7): 59, 233, 523, 841, 929, 2843, 3191"
    );
}

#[test]
fn witness_block_round_trips_through_verify() {
    let o = nesieve(&[
        "sieve",
        "--ell",
        "3",
        "--from",
        "9999999600",
        "--to",
        "10000000000",
        "--engine",
        "cubic",
        "--emit-witnesses",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for line in [
        "f=9999999673, q1=5, q2=7, r=17",
        "f=9999999781, q1=2, q2=5, r=7",
        "f=9999999967, q1=5, q2=7, r=11",
    ] {
        assert!(text.lines().any(|l| l == line), "missing {line}");
    }

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.txt");
    std::fs::write(&path, &text).unwrap();
    let v = nesieve(&["verify", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
    let out = stdout(&v);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS f=")).count(), 13);
    assert!(!out.contains("FAIL"));
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn verify_reports_failures_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let tampered = write(dir.path(), "t.txt", "f=9999999673, q1=5, q2=7, r=17\nf=9999999673, q1=5, q2=7, r=19\n");
    let o = nesieve(&["verify", &tampered]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(
        stdout(&o),
        "PASS f=9999999673, q1=5, q2=7, r=17\nFAIL f=9999999673, q1=5, q2=7, r=19\n"
    );

    let empty = write(dir.path(), "e.txt", "");
    let o = nesieve(&["verify", &empty]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "");

    let broken = write(dir.path(), "b.txt", "f=9999999673, q1=5, q2=7, r=17\n\nf=1 q1=2\n");
    let o = nesieve(&["verify", &broken]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let o = nesieve(&["verify", "--ell", "5", &tampered]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn formats_carry_the_same_records() {
    let base = ["sieve", "--ell", "7", "--from", "2", "--to", "3000", "--emit-witnesses"];
    let text = stdout(&nesieve(&base));
    let csv_out = stdout(&nesieve(&[&base[..], &["--format", "csv"]].concat()));
    let json_out = stdout(&nesieve(&[&base[..], &["--format", "json"]].concat()));

    let from_text: Vec<u64> = text
        .lines()
        .filter_map(|l| {
            let l = l.strip_prefix("# ").unwrap_or(l);
            l.strip_prefix("f=")?.split([',', ' ']).next()?.parse().ok()
        })
        .collect();
    let mut rdr = csv::Reader::from_reader(csv_out.as_bytes());
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        ["f", "verdict", "q1", "q2", "r", "evals"]
    );
    let from_csv: Vec<u64> = rdr.records().map(|r| r.unwrap()[0].parse().unwrap()).collect();
    let records: Vec<serde_json::Value> = json_out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let from_json: Vec<u64> = records.iter().filter_map(|v| v["f"].as_u64()).collect();

    assert!(!from_text.is_empty());
    assert_eq!(from_text, from_csv);
    assert_eq!(from_text, from_json);
    let summary = &records.last().unwrap()["summary"];
    assert_eq!(summary["survivors"], serde_json::json!([29, 43, 49, 127, 239, 673, 701, 911]));
}

#[test]
fn checkpointed_run_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("run.cp");
    let cp_s = cp.to_str().unwrap();
    let args = ["sieve", "--ell", "3", "--from", "2", "--to", "20000", "--chunk-width", "1000", "--checkpoint", cp_s];
    // pretend an earlier run stopped after [2, 5001]
    std::fs::write(&cp, "ell=3 A=2 B=20000\ndone=5001\n7\n9\n13\n19\n31\n37\n43\n61\n67\n73\n103\n109\n127\n157\n277\n439\n643\n997\n1597\n").unwrap();
    let o = nesieve(&args);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(survivors_line(&text).starts_with("# survivors (19):"));
    assert!(!text.contains("# f=7 "), "resumed prefix must not be re-sieved");
    let saved = std::fs::read_to_string(&cp).unwrap();
    assert!(saved.starts_with("ell=3 A=2 B=20000\ndone=20000\n7\n"));

    let o = nesieve(&["sieve", "--ell", "5", "--from", "2", "--to", "20000", "--checkpoint", cp_s]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn constants_tables() {
    let o = nesieve(&["constants", "--table", "c-burgess"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2 + 14);
    assert!(text.lines().nth(2).unwrap().trim_start().starts_with("2  10.0366"));
    assert!(text.lines().last().unwrap().ends_with("1.7700"));

    let o = nesieve(&["constants", "--table", "d1", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("k,D1(k)\n2,89.1550\n"));
    assert!(text.contains("\n8,20.9692\n"));

    let o = nesieve(&["constants", "--table", "c-ell", "--format", "csv"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 24);
    assert!(text.contains("\n3,5,68.234,10^69,10^70\n"));

    let o = nesieve(&["constants", "--table", "special", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["case 1"], "5986671");

    let o = nesieve(&["constants", "--table", "e"]);
    assert!(stdout(&o).contains("3.4936e3"));

    assert_eq!(nesieve(&["constants", "--table", "nope"]).status.code(), Some(1));
}

#[test]
fn selfcheck_passes_and_names_injected_faults() {
    let o = nesieve(&["selfcheck", "--quick"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));

    let o = nesieve(&["selfcheck", "--quick", "--inject-fault", "c-burgess:2"]);
    assert_eq!(o.status.code(), Some(2));
    let fails: Vec<String> = stdout(&o)
        .lines()
        .filter(|l| l.starts_with("FAIL"))
        .map(String::from)
        .collect();
    assert_eq!(fails.len(), 1);
    assert!(fails[0].starts_with("FAIL table c-burgess row r=2:"));
}

#[test]
fn exit_codes() {
    // bad flags and arguments
    assert_eq!(nesieve(&[]).status.code(), Some(1));
    assert_eq!(nesieve(&["sieve", "--ell", "3"]).status.code(), Some(1));
    assert_eq!(nesieve(&["sieve", "--ell", "4", "--from", "2", "--to", "10"]).status.code(), Some(1));
    assert_eq!(nesieve(&["sieve", "--ell", "3", "--from", "20", "--to", "10"]).status.code(), Some(1));
    assert_eq!(
        nesieve(&["sieve", "--ell", "5", "--from", "2", "--to", "10", "--engine", "cubic"]).status.code(),
        Some(1)
    );
    assert_eq!(
        nesieve(&["sieve", "--ell", "3", "--from", "2", "--to", "10", "--workers", "0"]).status.code(),
        Some(1)
    );
    // resource and range limits
    assert_eq!(
        nesieve(&["sieve", "--ell", "3", "--from", "2", "--to", "9223372036854775808"]).status.code(),
        Some(3)
    );
    assert_eq!(
        nesieve(&["sieve", "--ell", "3", "--from", "2", "--to", "100000000000", "--engine", "table"]).status.code(),
        Some(3)
    );
    assert_eq!(nesieve(&["--help"]).status.code(), Some(0));
}
