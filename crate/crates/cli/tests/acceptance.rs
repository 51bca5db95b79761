//! Runs the eight acceptance criteria at the full level on the bundled
//! fixtures and prints one line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use maltcat_cli::suite::{criterion, TITLES};
use maltcat_cli::{Level, Workspace};

fn main() -> ExitCode {
    let ws = Workspace::bundled();
    let mut failed = 0;
    for id in 1..=TITLES.len() {
        let start = Instant::now();
        let c = criterion(&ws, id, Level::Full);
        let label = if c.passed { "PASS" } else { "FAIL" };
        println!(
            "{label} criterion {id}: {} ({}) [{:.2}s]",
            c.title,
            c.detail,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!c.passed);
    }
    println!(
        "acceptance: {} of {} criteria passed",
        TITLES.len() - failed,
        TITLES.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
