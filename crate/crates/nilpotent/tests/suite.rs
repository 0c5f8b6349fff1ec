use qc_nilpotent::{run_suite, F101, Q};

#[test]
fn suite_over_rationals() {
    let r = run_suite::<Q>(200, 1);
    assert!(r.all_passed(), "{:?}", &r.failures[..r.failures.len().min(5)]);
    assert!(r.tallies.iter().all(|t| t.total == 200));
}

#[test]
fn suite_over_f101() {
    let r = run_suite::<F101>(200, 2);
    assert!(r.all_passed(), "{:?}", &r.failures[..r.failures.len().min(5)]);
}

#[test]
fn suite_is_reproducible() {
    let a = run_suite::<F101>(30, 9);
    let b = run_suite::<F101>(30, 9);
    assert_eq!(a.tallies, b.tallies);
    assert_eq!(a.failures, b.failures);
}
