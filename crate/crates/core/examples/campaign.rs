//! Runs the default verification campaign and prints one line per suite.

use harnack::harness::{run_all, TrialConfig};

fn main() {
    let report = run_all(&TrialConfig::default()).expect("default config is valid");
    for s in &report.suites {
        println!(
            "{:<32} trials={:<7} violations={:<3} worst={:?}",
            s.suite, s.trials, s.violations, s.worst_slack
        );
    }
    println!("pass = {}", report.pass);
}
