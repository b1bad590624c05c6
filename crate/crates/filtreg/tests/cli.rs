//! End-to-end checks of the command-line interface: exit codes, formats,
//! determinism of emitted reports, and direct bound evaluation.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_filtreg"))
}

fn write_cfg(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join("filtreg-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

const GOOD: &str = r#"
name = cli-demo
variables = [x, y]
J = ["x^2", "x*y"]
I = ["x", "y"]
filtration = adic
q = ["x", "y"]
seed = 7
"#;

#[test]
fn run_passes_and_emits_json() {
    let cfg = write_cfg("good.cfg", GOOD);
    let out = bin()
        .args(["run", "--config", cfg.to_str().unwrap(), "--no-timings"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let body = String::from_utf8(out.stdout).unwrap();
    assert!(body.contains("\"name\":\"cli-demo\""));
    assert!(body.contains("\"id\":\"A3.i\""));
    assert!(body.contains("\"status\":\"pass\""));
}

#[test]
fn same_seed_is_byte_identical() {
    let cfg = write_cfg("det.cfg", GOOD);
    let run = || {
        bin()
            .args([
                "run",
                "--config",
                cfg.to_str().unwrap(),
                "--no-timings",
                "--seed",
                "99",
            ])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn csv_has_one_row_per_check() {
    let cfg = write_cfg("csv.cfg", GOOD);
    let out = bin()
        .args([
            "run",
            "--config",
            cfg.to_str().unwrap(),
            "--format",
            "csv",
            "--no-timings",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let body = String::from_utf8(out.stdout).unwrap();
    let mut lines = body.lines();
    assert_eq!(lines.next().unwrap(), "instance,check,computed,bound,status,reason");
    assert!(lines.clone().count() >= 20);
    for line in lines {
        assert!(line.starts_with("cli-demo,"), "bad row: {line}");
    }
}

#[test]
fn bad_config_exits_2() {
    let cfg = write_cfg("bad.cfg", "variables = [x]\n");
    let out = bin()
        .args(["run", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let missing = bin()
        .args(["run", "--config", "/nonexistent/path.cfg"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn corrupt_chain_exits_3() {
    let cfg = write_cfg(
        "corrupt.cfg",
        r#"
name = corrupt
variables = [x, y]
J = []
I = ["x", "y"]
chain = [["1"], ["x^2", "y^2"]]
"#,
    );
    let out = bin()
        .args(["run", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not a good filtration"), "stderr: {err}");
}

#[test]
fn bound_subcommand_evaluates_formulas() {
    let cases = [
        (vec!["bound", "A3", "--args", "d=3,D=4,r=1"], "7773"),
        (vec!["bound", "F4", "--args", "d=2,D=4"], "49"),
        (vec!["bound", "B4", "--args", "d=2,lAI=3"], "14"),
        (
            vec!["bound", "C3", "--args", "d=2,lMQM=4,r=1,regM=0,iM=0,delta=2"],
            "47",
        ),
        (vec!["bound", "Hilb.2", "--args", "d=2,D=1,r=0"], "32"),
    ];
    for (args, expected) in cases {
        let out = bin().args(&args).output().unwrap();
        assert!(out.status.success());
        assert_eq!(
            String::from_utf8(out.stdout).unwrap().trim(),
            expected,
            "args: {args:?}"
        );
    }
    // big values print exactly
    let out = bin()
        .args(["bound", "A3", "--args", "d=5,D=8,r=1"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), format!("{}", num_bigint::BigInt::from(10).pow(71) - 5));
    // unknown id is a usage error
    let bad = bin().args(["bound", "Nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn corpus_filter_fiber_runs_only_fiber_checks() {
    let out = bin()
        .args(["corpus", "--filter", "fiber", "--jobs", "4"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let body = String::from_utf8(out.stdout).unwrap();
    assert!(body.contains("total:"));
    assert!(body.contains(" 0 fail"));
}

#[test]
fn profile_flag_reports_groebner_statistics() {
    let cfg = write_cfg("profile.cfg", GOOD);
    let out = bin()
        .args(["run", "--config", cfg.to_str().unwrap(), "--profile", "--no-timings"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("groebner:"), "stderr: {err}");
}
