use std::io::Write;
use std::process::{Command, Output, Stdio};

fn clifford(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_clifford"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn clifford");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn expect_kills_the_subspace_direction() {
    let o = clifford(
        &[
            "expect",
            "--dim",
            "3",
            "--subspace",
            "1,0,0",
            "--input",
            "e1 + e3",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "e3\n");
    let echoed = String::from_utf8(o.stderr).unwrap();
    assert!(
        echoed.contains("subspace of dimension 1: {(1,0,0)}"),
        "{echoed}"
    );
}

#[test]
fn expect_orthonormalizes_its_subspace() {
    let o = clifford(
        &[
            "expect",
            "--dim",
            "3",
            "--subspace",
            "2,0,0;3,0,0;0,5,0",
            "--input",
            "1 + e1*e2 + e3",
        ],
        None,
    );
    assert_eq!(stdout(&o), "1 + e3\n");
    assert!(String::from_utf8(o.stderr).unwrap().contains("dimension 2"));
}

#[test]
fn norm_of_idempotent_multiple() {
    let o = clifford(&["norm", "--dim", "2", "--input", "1 + e1"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2\n");
}

#[test]
fn input_from_stdin() {
    let o = clifford(
        &["gamma", "--dim", "3", "--input", "-"],
        Some("(1,2) + e1*e2*e3\n"),
    );
    assert_eq!(stdout(&o), "(1,2) - e1*e2*e3\n");
}

#[test]
fn supercommutant_prints_a_basis() {
    let o = clifford(&["supercommutant", "--dim", "2", "--subspace", "1,0"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\ne2\n");
    let o = clifford(&["supercommutant", "--dim", "3"], None);
    assert_eq!(stdout(&o).lines().count(), 8);
}

#[test]
fn mul_multiplies_left_to_right() {
    let o = clifford(
        &[
            "mul", "--dim", "2", "--input", "e1 + e2", "--input", "e1 + e2",
        ],
        None,
    );
    assert_eq!(stdout(&o), "2\n");
}

#[test]
fn verify_duality_passes() {
    let o = clifford(
        &[
            "verify", "--suite", "duality", "--dim", "5", "--trials", "50", "--seed", "7",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("50/50"), "{text}");
    assert!(text.trim_end().ends_with("PASS"));
}

#[test]
fn json_report_schema_and_determinism() {
    let args = [
        "verify", "--suite", "cstar", "--dim", "3", "--trials", "12", "--seed", "42", "--json",
    ];
    let a = clifford(&args, None);
    let b = clifford(&args, None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["suite"], "cstar");
    assert_eq!(v["seed"], 42);
    assert_eq!(v["dim"], 3);
    assert_eq!(v["trials"], 12);
    let props = v["properties"].as_array().unwrap();
    assert!(!props.is_empty());
    for p in props {
        let keys: Vec<_> = p.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys.len(), 5);
        for k in ["name", "passes", "failures", "max_residual", "tolerance"] {
            assert!(p.get(k).is_some(), "missing {k}");
        }
        assert_eq!(
            p["passes"].as_u64().unwrap() + p["failures"].as_u64().unwrap(),
            12
        );
        assert!(p["max_residual"].as_f64().unwrap() >= 0.0);
    }
}

#[test]
fn report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = clifford(
        &[
            "verify",
            "--suite",
            "stabilization",
            "--dim",
            "4",
            "--trials",
            "5",
            "--json",
            "--out",
            path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, o.stdout);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["gamma", "--dim", "2", "--input", "e2*e1"][..],
        &["norm", "--dim", "2"],
        &["verify", "--suite", "everything"],
        &["verify", "--dim", "9", "--suite", "duality"],
        &[
            "expect",
            "--dim",
            "2",
            "--subspace",
            "1,0,0",
            "--input",
            "1",
        ],
        &["mul", "--dim", "2", "--input", "e1"],
        &[],
    ] {
        let o = clifford(args, None);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}
