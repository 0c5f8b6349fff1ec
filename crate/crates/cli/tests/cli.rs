use std::path::Path;
use std::process::{Command, Output};

use qc_core::chabauty::{Combination, SweepReport};

fn qc(args: &[&str], cache: &Path) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qc"));
    for (k, _) in std::env::vars() {
        if k.starts_with("QC_") {
            cmd.env_remove(k);
        }
    }
    cmd.arg("--cache-dir").arg(cache).args(args).output().expect("qc runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn bad_reduction_is_a_precondition_failure() {
    let dir = tempfile::tempdir().unwrap();
    let o = qc(&["--prime", "37"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bad reduction at 37"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn rejected_inputs_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 6] = [
        &["--curve", "0,1,0,-2,0", "--gen", "0,0"],
        &["--gen", "1,1"],
        &["--gen", "1/4,-5/8"],
        &["--prime", "4"],
        &["--prec", "3"],
        &["--combination", "half"],
    ];
    for args in cases {
        let o = qc(args, dir.path());
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
    let o = qc(&["--curve", "0,1,0,-2,0", "--gen", "0,0"], dir.path());
    assert!(stderr(&o).contains("torsion"));
}

#[test]
fn sweep_output_is_reproducible_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cold = qc(&["--json"], dir.path());
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0, "cache was not written");
    let warm = qc(&["--json"], dir.path());
    assert!(stderr(&cold).contains("computed"));
    assert!(stderr(&warm).contains("cached"));
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.status.code(), warm.status.code());

    let text = String::from_utf8(cold.stdout).unwrap();
    let report = SweepReport::from_json(&text).unwrap();
    assert_eq!(report.to_json() + "\n", text);
    assert_eq!(report.matches.len(), 10);
    assert_eq!(report.combination, Combination::Rho);
    assert_eq!(report.timings.sweep_ms, 0);
    let expected = if report.all_matched && report.inconclusive_disks().is_empty() { 0 } else { 2 };
    assert_eq!(cold.status.code(), Some(expected));

    let d2 = qc(&["--json", "--combination", "d2"], dir.path());
    let r2 = SweepReport::from_json(&String::from_utf8(d2.stdout).unwrap()).unwrap();
    assert!(r2.all_matched);
    assert!(r2.inconclusive_disks().is_empty());
    assert_eq!(d2.status.code(), Some(0));
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.txt");
    let o = qc(&["--combination", "d2", "--output", out.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&out).unwrap(), o.stdout);
    assert!(String::from_utf8(o.stdout).unwrap().contains("(2, -3)"));
}

#[test]
fn selftest_detects_an_injected_sign_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = qc(&["--selftest", "--combination", "sign-flipped"], dir.path());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(o.status.code(), Some(2), "{text}");
    assert!(text.contains("FAIL base-point independence"), "{text}");
    assert!(text.contains("PASS Frobenius"), "{text}");

    let o = qc(&["--selftest", "--combination", "d2"], dir.path());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().all(|l| l.starts_with("PASS ")), "{text}");
    assert_eq!(o.status.code(), Some(0));
}
