use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bundlecalc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_all_passes() {
    let o = run(&["verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("25 passed, 0 failed"), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_json_is_reproducible() {
    let a = run(&["verify", "--json", "--no-timing"]);
    let b = run(&["verify", "--json", "--no-timing"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["summary"]["pass"], 25);
    assert_eq!(v["summary"]["fail"], 0);
    let claims = v["claims"].as_array().unwrap();
    assert!(claims.iter().all(|c| c["elapsed_ms"] == 0 && c["status"] == "PASS"));
    let ids: Vec<&str> = claims.iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn verify_single_claim() {
    let o = run(&["verify", "--claim", "eq5", "--json", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["claims"].as_array().unwrap().len(), 1);
    assert_eq!(v["claims"][0]["id"], "eq5");
}

#[test]
fn unknown_claim_is_an_error() {
    let o = run(&["verify", "--claim", "no-such-claim"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn list_shows_every_claim() {
    let o = run(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 25);
}

#[test]
fn calc_commands() {
    assert_eq!(stdout(&run(&["calc", "chi", "0", "0"])).trim(), "-6");
    assert_eq!(stdout(&run(&["calc", "chi", "-2", "-4"])).trim(), "2");
    assert_eq!(stdout(&run(&["calc", "cohom", "-2", "0"])).trim(), "(0, 1, 0, 0, 0)");
    assert_eq!(stdout(&run(&["calc", "cohom", "1", "1"])).trim(), "(8, 0, 0, 0, 0)");
    assert_eq!(stdout(&run(&["calc", "slope", "1", "1", "1", "2"])).trim(), "7");
}

#[test]
fn pencil_rank_from_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# linear normal form, a = (2, 1, 3)").unwrap();
    writeln!(f, "degree 1").unwrap();
    for entry in ["2*l + m", "l", "0", "0", "3*l + m", "0", "0", "0", "0", "0"] {
        writeln!(f, "{entry}").unwrap();
    }
    let o = run(&["calc", "pencil-rank", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("generic rank: 2"), "{text}");
    assert!(text.contains("constant: true"), "{text}");
}

#[test]
fn malformed_pencil_exits_two() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "degree one").unwrap();
    let o = run(&["calc", "pencil-rank", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
