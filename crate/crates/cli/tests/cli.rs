use std::io::Write;
use std::process::{Command, Output, Stdio};

fn webcalc(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_webcalc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn webcalc");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const LOOP: &str = "web n=3 src=()\n cup 1 -+\n cap 1 -+\n";
const BIGON: &str = "web n=3 src=(3+)\n split 2 1\n merge 2 1\n";

#[test]
fn eval_closed_loop() {
    let o = webcalc(&["eval", "-"], LOOP);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "q^2 + 1 + q^-2");
    let o = webcalc(&["--json", "eval", "-"], LOOP);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "q^2 + 1 + q^-2");
}

#[test]
fn eval_lists_entries() {
    let o = webcalc(&["eval", "-"], "web n=2 src=(1+,1+)\n merge 1 1\n");
    let text = stdout(&o);
    assert!(text.starts_with("(1+,1+) -> "), "{text}");
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn matrix_of_generator() {
    let o = webcalc(
        &[
            "--json", "matrix", "--gen", "F1", "--n", "2", "--object", "1+",
        ],
        "",
    );
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 1);
}

#[test]
fn ladder_with_verification() {
    let o = webcalc(&["ladder", "--verify", "-"], BIGON);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(
        text.starts_with("ladder n=3 src=(3,0)\nF 1 1\nE 1 1\n"),
        "{text}"
    );
    assert!(text.contains("equal"));
}

#[test]
fn uword_ladder_and_matrix() {
    let o = webcalc(
        &[
            "uword", "F2 E1", "--weight", "1,2,0", "--n", "3", "--ladder",
        ],
        "",
    );
    assert_eq!(stdout(&o), "ladder n=3 src=(1,2,0)\nE 1 1\nF 2 1\n");
    let a = webcalc(
        &["--json", "uword", "F2 E1", "--weight", "1,2,0", "--n", "3"],
        "",
    );
    let b = webcalc(
        &[
            "--json", "uword", "F2 E1", "--weight", "1,2,0", "--n", "3", "--direct",
        ],
        "",
    );
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn trefoil_invariant() {
    let o = webcalc(
        &[
            "invariant",
            "--n",
            "2",
            "--colors",
            "1,1",
            "--word",
            "s1 s1 s1",
            "--closure",
            "trace",
        ],
        "",
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o), "N=2 (q = u^2)\nu^7 + u^3 + u^-1 - u^-9\n");
}

#[test]
fn relcheck_passes_and_perturbation_fails() {
    let o = webcalc(
        &["--json", "relcheck", "--n", "2", "--relation", "2.2,2.3"],
        "",
    );
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let recs = v.as_array().unwrap();
    assert!(!recs.is_empty());
    for r in recs {
        assert_eq!(r["status"], "pass");
        assert!(r["relation"].is_string() && r["params"].is_string());
    }
    let o = webcalc(
        &["relcheck", "--n", "2", "--relation", "2.3", "--perturb"],
        "",
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness"));
}

#[test]
fn howe_rank_and_fuzzing() {
    let o = webcalc(&["howe-rank", "--n", "2", "--m", "2", "--total", "0,2"], "");
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(),
        2
    );
    let o = webcalc(
        &["--json", "fuzz-ladderize", "--n", "3", "--count", "20"],
        "",
    );
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["equal"], 20);
}

#[test]
fn errors_exit_with_two() {
    let o = webcalc(
        &["invariant", "--n", "2", "--colors", "1,2", "--word", "s1"],
        "",
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("out of range"));
    let o = webcalc(&["eval", "-"], "web n=3 src=(1+)\n merge 1 1\n");
    assert_eq!(o.status.code(), Some(2));
}
