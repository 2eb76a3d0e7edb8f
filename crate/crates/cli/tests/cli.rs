use std::io::Write;
use std::process::{Command, Output};

fn jacquet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacquet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn expand_prints_terms() {
    let o = jacquet(&["expand", "--expr", "d(1/2,3/2) |x sigma"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("1 ⊗ d(1/2,3/2) |x sigma"));
    assert!(out.contains("d(-3/2,-1/2) ⊗ sigma"));
    assert_eq!(out.lines().count(), 6);
}

#[test]
fn expand_json_and_words() {
    let o = jacquet(&[
        "expand",
        "--expr",
        "d(1/2,3/2) |x sigma",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let coeffs: i64 = v
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["coeff"].as_i64().unwrap())
        .sum();
    assert_eq!(coeffs, 6);

    let o = jacquet(&[
        "expand",
        "--expr",
        "d(1/2,3/2) |x sigma",
        "--to-words",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let words: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["word"].as_str().unwrap())
        .collect();
    assert_eq!(words.len(), 4);
    assert!(words.contains(&"3/2,1/2"));
}

#[test]
fn syntax_and_domain_errors_are_usage_errors() {
    for expr in ["d(1/2,2) |x sigma", "d(1/2,3/2) |x", "d(1/2 3/2) |x sigma"] {
        let o = jacquet(&["expand", "--expr", expr]);
        assert_eq!(o.status.code(), Some(2), "{expr}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    }
    assert_eq!(jacquet(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        jacquet(&["candidates", "--triple", "1/2,3/2,5/2", "--sign", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn candidates_by_sign() {
    let o = jacquet(&["candidates", "--triple", "1/2,3/2,5/2", "--sign", "-"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 2);
    let o = jacquet(&["candidates", "--triple", "1/2,3/2,5/2", "--sign", "+"]);
    assert_eq!(stdout(&o).lines().count(), 5);
    let o = jacquet(&["candidates", "--triple", "3/2,1/2,5/2", "--sign", "+"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_exit_status_follows_verdicts() {
    let o = jacquet(&[
        "verify",
        "--claims",
        "tempered-*",
        "--triple",
        "1/2,3/2,5/2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("summary: 2 pass, 0 fail, 0 inconclusive"));

    let o = jacquet(&[
        "verify",
        "--claims",
        "leading-term",
        "--triple",
        "1/2,3/2,5/2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL"));

    assert_eq!(
        jacquet(&["verify", "--claims", "no-such-*"]).status.code(),
        Some(2)
    );
    assert_eq!(
        jacquet(&["verify", "--triple", "1/2,3/2"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_json_is_deterministic() {
    let args = [
        "verify",
        "--claims",
        "tempered-in-big",
        "--triple",
        "1/2,3/2,5/2",
        "--triple",
        "1/2,3/2,7/2",
        "--format",
        "json",
    ];
    let first = jacquet(&args);
    let second = jacquet(&args);
    assert_eq!(first.stdout, second.stdout);
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["summary"]["pass"], 2);
    assert!(v["reports"][0].get("elapsed_ms").is_none());
}

#[test]
fn grid_files() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# two triples\n1/2,3/2,5/2\n3/2,1/2,5/2").unwrap();
    let path = f.path().to_str().unwrap();
    let o = jacquet(&["verify", "--claims", "tempered-in-big", "--grid", path]);
    let out = stdout(&o);
    assert!(out.contains("PASS"));
    assert!(out.contains("error: (3/2,1/2,5/2)"));
    assert_eq!(o.status.code(), Some(1));

    let empty = tempfile::NamedTempFile::new().unwrap();
    let o = jacquet(&[
        "verify",
        "--grid",
        empty.path().to_str().unwrap(),
        "--claims",
        "leading-term",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("summary: 0 pass, 0 fail, 0 inconclusive"));
}
