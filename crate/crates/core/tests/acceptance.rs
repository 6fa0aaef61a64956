//! Runs every acceptance criterion and prints one PASS/FAIL line for each.
//! Criterion 12 is also checked end to end through the binary under LAUREL_THREADS.

use std::process::Command;

use laurel::cli::reproduce::{determinism_commands, run_criterion, TITLES};

fn binary_output(args: &[String], threads: &str) -> (Vec<u8>, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_laurel"))
        .args(args)
        .env("LAUREL_THREADS", threads)
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code())
}

fn binary_determinism() -> (bool, String) {
    let mut bad = Vec::new();
    for args in determinism_commands() {
        let runs: Vec<_> = ["1", "4", "8"].iter().map(|t| binary_output(&args, t)).collect();
        if runs.windows(2).any(|w| w[0] != w[1]) || runs[0].1 != Some(0) {
            bad.push(args.join(" "));
        }
    }
    (bad.is_empty(), if bad.is_empty() { "all commands identical".into() } else { format!("differ: {bad:?}") })
}

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for n in 1..=12u32 {
        let (passed, detail) = if n == 12 {
            let in_process = run_criterion(12).map(|r| r.passed).unwrap_or(false);
            let (binary, detail) = binary_determinism();
            (in_process && binary, detail)
        } else {
            match run_criterion(n) {
                Ok(r) => (r.passed, r.expected),
                Err(e) => (false, format!("error: {e}")),
            }
        };
        println!("criterion {n:>2} {}: {} ({detail})", if passed { "PASS" } else { "FAIL" }, TITLES[n as usize - 1]);
        if !passed {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
