//! CLI half of the acceptance suite: deterministic CSV output.

use std::process::Command;

fn run_sweep(path: &std::path::Path) {
    let status = Command::new(env!("CARGO_BIN_EXE_noswitch"))
        .args([
            "sweep",
            "--eta-range",
            "0.1:0.9:9",
            "--vn-list",
            "1,1.2,2",
            "--va",
            "100",
            "--protocols",
            "heterodyne,homodyne,feedforward",
            "--out",
        ])
        .arg(path)
        .status()
        .expect("spawn noswitch");
    assert!(status.success());
}

#[test]
fn criterion_9_csv_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.csv");
    let second = dir.path().join("b.csv");
    run_sweep(&first);
    run_sweep(&second);
    let a = std::fs::read(&first).unwrap();
    let b = std::fs::read(&second).unwrap();
    let pass = a == b && !a.is_empty();
    println!(
        "acceptance criterion 9 (CSV determinism, sweep half): {} — two identical sweeps, {} bytes each",
        if pass { "PASS" } else { "FAIL" },
        a.len()
    );
    assert!(pass, "sweep CSV output differs between identical runs");
}
