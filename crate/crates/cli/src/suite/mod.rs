//! The acceptance suite: a fixture validation step followed by the eight
//! criteria, one report line each.

pub mod criteria;
pub mod oracle;

pub use criteria::{Bounds, CriterionResult, TITLES};

use clap::ValueEnum;

use crate::{Level, RunReport, Workspace};

/// Runs criterion `id` (1 to 8) at `level`.
pub fn criterion(ws: &Workspace, id: usize, level: Level) -> CriterionResult {
    criteria::run(id, ws, Bounds::for_level(level))
}

pub fn cmd_suite(ws: &Workspace, level: Level) -> RunReport {
    let label = level
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    let mut report = RunReport::new(format!("suite --level {label}"));
    let rejected: Vec<String> = ws
        .rejected
        .iter()
        .map(|(name, r)| format!("{} {name}: {}", r.kind, r.error))
        .collect();
    report.check("0. fixtures validate", rejected.is_empty(), rejected.join("; "));
    for id in 1..=TITLES.len() {
        let c = criterion(ws, id, level);
        report.check(format!("{}. {}", c.id, c.title), c.passed, c.detail);
    }
    report
}
