//! Acceptance gate for the command-line contract: golden outputs for all
//! four commands, the exit-code paths, and exact decimal radius parsing.

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::Value;

fn criterion<F: FnOnce()>(n: u32, name: &str, limit: Option<Duration>, body: F) {
    let start = Instant::now();
    let outcome = panic::catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let in_budget = limit.map_or(true, |lim| elapsed <= lim);
    let verdict = if outcome.is_ok() && in_budget {
        "PASS"
    } else {
        "FAIL"
    };
    println!(
        "[acceptance] criterion {n} ({name}): {verdict} ({:.2}s)",
        elapsed.as_secs_f64()
    );
    if let Err(cause) = outcome {
        panic::resume_unwind(cause);
    }
    if let Some(lim) = limit {
        assert!(
            in_budget,
            "criterion {n} runtime {elapsed:?} exceeded budget {lim:?}"
        );
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pell"))
        .env_remove("PELL_SCAN_CAP")
        .args(args)
        .output()
        .expect("binary should run")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout should be utf-8")
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("golden {}: {e}", path.display()))
}

fn expect_golden(args: &[&str], name: &str) {
    let out = run(args);
    assert!(out.status.success(), "{args:?} exited {:?}", out.status.code());
    assert_eq!(stdout_of(&out), golden(name), "stdout mismatch for {args:?}");
}

fn expect_exit(args: &[&str], code: i32, needle: &str) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    let err = String::from_utf8(out.stderr).expect("stderr should be utf-8");
    assert!(err.contains(needle), "{args:?} stderr {err:?} missing {needle:?}");
}

#[test]
fn criterion_9_cli_contract() {
    criterion(9, "CLI contract", None, || {
        // Golden outputs for the four commands on the fixture inputs.
        expect_golden(&["fundamental", "2"], "fundamental_2.txt");
        expect_golden(&["fundamental", "61"], "fundamental_61.txt");
        expect_golden(&["count", "2", "5"], "count_2_5.txt");
        expect_golden(&["count", "2", "5", "--method", "formula"], "count_2_5.txt");
        expect_golden(&["count", "2", "5", "--method", "brute"], "count_2_5.txt");
        expect_golden(&["count", "2", "5", "--check"], "count_2_5_check.txt");
        expect_golden(&["count", "2", "6", "--shift", "1", "0"], "count_2_6_shift_1_0.txt");
        expect_golden(&["enumerate", "2", "5"], "enumerate_2_5.txt");
        expect_golden(
            &["enumerate", "2", "6", "--shift", "1", "0", "--csv"],
            "enumerate_2_6_shift_csv.txt",
        );
        expect_golden(&["g", "2", "5"], "g_2_5.txt");
        expect_golden(&["g", "2", "5", "--form", "floor"], "g_2_5_floor.txt");

        // Exact decimal parsing: one part in 10^12 under the boundary.
        expect_golden(&["count", "2", "4.999999999999"], "count_2_boundary.txt");

        // Exit code 2: invalid inputs of every flavor.
        expect_exit(&["fundamental", "4"], 2, "perfect square");
        expect_exit(&["fundamental", "abc"], 2, "expected an integer");
        expect_exit(&["count", "2", "0"], 2, "radius must be positive");
        expect_exit(&["count", "2", "25000", "--method", "brute"], 2, "exceeds the cap");
        expect_exit(&["g", "2", "0.5"], 2, "must be at least 1");

        // Exit code 3: closed-form count requested below the threshold K.
        expect_exit(&["count", "2", "1.5", "--shift", "1", "0"], 3, "K = 2");

        // JSON records parse and carry the pinned schema version.
        for args in [
            vec!["fundamental", "2", "--json"],
            vec!["count", "2", "5", "--json"],
            vec!["enumerate", "2", "5", "--json"],
            vec!["g", "2", "10", "--json"],
        ] {
            let out = run(&args);
            assert!(out.status.success(), "{args:?}");
            let rec: Value = serde_json::from_str(&stdout_of(&out)).expect("JSON record");
            assert_eq!(rec["schema_version"], "1", "{args:?}");
        }
    });
}
