use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn kissing(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kissing"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

// (t + 1)(t + 1/2)^2 t^2 (t - 1/2), ascending monomial coefficients
const E8_POLY: &str = "# E8\n0\n0\n-1/8\n\n-0.375\n1/4\n3/2\n1\n";

#[test]
fn verify_exact_and_float() {
    let f = file(E8_POLY);
    let path = f.path().to_str().unwrap();
    let o = kissing(&[
        "--format",
        "json",
        "verify",
        "--poly-file",
        path,
        "--n",
        "8",
        "--s",
        "1/2",
        "--exact",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bound"], 240.0);
    assert_eq!(v["rigorous"], true);
    let o = kissing(&["verify", "--poly-file", path, "--n", "8", "--s", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_rejects_bad_polynomial() {
    let f = file("0\n1\n");
    let path = f.path().to_str().unwrap();
    let o = kissing(&["verify", "--poly-file", path, "--n", "4", "--s", "0.5"]);
    assert_eq!(o.status.code(), Some(3));
    let o = kissing(&[
        "verify",
        "--poly-file",
        "/nonexistent/poly",
        "--n",
        "4",
        "--s",
        "0.5",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn analyze_points_file() {
    let mut text = String::new();
    for i in 0..4 {
        for sign in [1.0, -1.0] {
            let mut row = [0.0; 4];
            row[i] = sign;
            let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            text.push_str(&line.join(" "));
            text.push('\n');
        }
    }
    let f = file(&text);
    let path = f.path().to_str().unwrap();
    let o = kissing(&[
        "--format",
        "json",
        "analyze",
        "--points-file",
        path,
        "--pfender",
        "0.5",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["size"], 8);
    assert_eq!(v["pfender"]["holds"], true);

    let f = file("1 0 0\n0 0.5 0\n");
    let o = kissing(&["analyze", "--points-file", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lower_from_code_file() {
    let f = file("0000\n1100\n1010\n1001\n0110\n0101\n0011\n1111\n");
    let path = f.path().to_str().unwrap();
    let o = kissing(&[
        "--format",
        "csv",
        "lower",
        "--construction",
        "a",
        "--code-file",
        path,
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(stdout(&o).lines().nth(1).unwrap().contains(",24,"));
}

#[test]
fn json_output_is_deterministic() {
    let args = [
        "--format", "json", "--seed", "7", "upper", "--n", "5", "--s", "0.5", "--method", "all",
    ];
    let a = kissing(&args);
    let b = kissing(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        kissing(&["upper", "--n", "2", "--s", "0.5", "--method", "levenshtein"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(kissing(&["bogus"]).status.code(), Some(2));
    assert_eq!(kissing(&["--help"]).status.code(), Some(0));
}
