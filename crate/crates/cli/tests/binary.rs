use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn ramislope(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ramislope"));
    cmd.args(args)
        .env_remove("RAMISLOPE_MAX_PRECISION")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn golden(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    p.to_str().unwrap().to_string()
}

#[test]
fn success_matches_golden_bytes() {
    for name in ["filtration", "nearby", "sweep"] {
        let job = golden(&format!("{name}.job"));
        let o = ramislope(&["--input", &job], "", &[]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let want = std::fs::read(golden(&format!("{name}.json"))).unwrap();
        assert_eq!(o.stdout, want);
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let job = golden("sweep.job");
    let one = ramislope(&["--input", &job, "--jobs", "1"], "", &[]);
    let four = ramislope(&["--input", &job, "--jobs", "4"], "", &[]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn reads_standard_input() {
    let src = std::fs::read_to_string(golden("filtration.job")).unwrap();
    let o = ramislope(&[], &src, &[]);
    assert_eq!(code(&o), 0);
    assert_eq!(o.stdout, std::fs::read(golden("filtration.json")).unwrap());
}

#[test]
fn exit_codes_by_category() {
    assert_eq!(code(&ramislope(&["--bogus"], "", &[])), 1);
    assert_eq!(code(&ramislope(&["--input", "/nonexistent/job"], "", &[])), 1);
    assert_eq!(code(&ramislope(&[], "trait p=2\ntask ??\n", &[])), 2);
    assert_eq!(code(&ramislope(&[], "trait p=4\n", &[])), 3);
    let undeclared = "trait p=3\ntask filtration cover=Z\n";
    let o = ramislope(&[], undeclared, &[]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:23"));
    // Unsupported tower shape: AS monodromy over an AS base of a different break.
    let unsupported = "trait p=3\ncover A = artin_schreier m=1 a=1\ncover B = artin_schreier m=2 a=1\n\
                       sheaf M on B = regular\ntask nearby cover=A sheaf=M\n";
    assert_eq!(code(&ramislope(&[], unsupported, &[])), 4);
}

#[test]
fn precision_cap_sources() {
    let job = "trait p=2\ncover A = artin_schreier m=1 a=1\ncover B = artin_schreier m=3 a=1\n\
               cover C = compositum A B\nsheaf R on C = regular\ntask slopes sheaf=R\n";
    // A compositum needs more than the smallest admissible precision.
    let o = ramislope(&["--precision", "8", "--max-precision", "8"], job, &[]);
    assert_eq!(code(&o), 5, "{}", String::from_utf8_lossy(&o.stdout));
    let o = ramislope(&["--precision", "8"], job, &[("RAMISLOPE_MAX_PRECISION", "8")]);
    assert_eq!(code(&o), 5);
    // The flag wins over the environment, which wins over the job file.
    let o = ramislope(
        &["--precision", "8", "--max-precision", "256"],
        job,
        &[("RAMISLOPE_MAX_PRECISION", "8")],
    );
    assert_eq!(code(&o), 0);
    let capped = job.replacen("trait p=2", "trait p=2 precision=8 max_precision=8", 1);
    assert_eq!(code(&ramislope(&[], &capped, &[])), 5);
    let o = ramislope(&[], &capped, &[("RAMISLOPE_MAX_PRECISION", "256")]);
    assert_eq!(code(&o), 0);
    // Precision failures take precedence over other task failures.
    let mixed = format!(
        "{capped}cover D = artin_schreier m=5 a=1\nsheaf S on D = regular\ntask nearby cover=A sheaf=S\n"
    );
    assert_eq!(code(&ramislope(&[], &mixed, &[])), 5);
    let o = ramislope(&[], job, &[("RAMISLOPE_MAX_PRECISION", "lots")]);
    assert_eq!(code(&o), 3);
}

#[test]
fn tsv_sweep_rows() {
    let job = "trait p=2\ntask sweep p=2 m=1..5\n";
    let o = ramislope(&["--format", "tsv"], job, &[]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("m\t"))
        .collect();
    assert_eq!(rows, ["1\t1\t1/2", "3\t3\t3/4", "5\t5\t5/6"]);
}

#[test]
fn summary_goes_to_stderr() {
    let o = ramislope(&["--input", &golden("certificate.job"), "--summary"], "", &[]);
    assert_eq!(code(&o), 0);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("inclusion holds"), "{err}");
    assert!(serde_json::from_slice::<serde_json::Value>(&o.stdout).is_ok());
}
