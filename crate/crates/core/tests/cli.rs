use std::process::{Command, Output};

fn valext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_valext"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&valext(&["run", "--scenario", "example_9_9"])), 64);
    assert_eq!(
        code(&valext(&[
            "run",
            "--scenario",
            "example_2_2",
            "--truncation",
            "99"
        ])),
        64
    );
    assert_eq!(
        code(&valext(&[
            "run",
            "--scenario",
            "example_2_2",
            "--value-bound",
            "lex:1,2"
        ])),
        64
    );
    assert_eq!(code(&valext(&["properties", "--suite", "nope"])), 64);
    assert_eq!(code(&valext(&["frobnicate"])), 64);
    assert_eq!(code(&valext(&["--help"])), 0);
}

#[test]
fn runs_are_byte_stable() {
    let args = ["run", "--scenario", "example_2_2", "--seed", "7"];
    let a = valext(&args);
    let b = valext(&args);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["seed"], 7);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("millis"));
}

#[test]
fn small_truncation_and_bare_bound() {
    let o = valext(&[
        "run",
        "--scenario",
        "example_2_2",
        "--truncation",
        "4",
        "--value-bound",
        "4",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn implicit_ideal_contraction_fails_for_example_2_9() {
    let o = valext(&["run", "--scenario", "example_2_9", "--output", "text"]);
    assert_eq!(code(&o), 1);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.ends_with("verdict: FAIL\n"));
    assert!(
        text.lines()
            .any(|l| l.starts_with("FAIL") && l.contains("kernel")),
        "{text}"
    );
}

#[test]
fn property_suite_writes_file() {
    let path = std::env::temp_dir().join(format!("valext-cli-{}.json", std::process::id()));
    let o = valext(&[
        "properties",
        "--suite",
        "canonical-form",
        "--samples",
        "20",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["kind"], "properties");
    assert_eq!(v["verdict"], "pass");
}
