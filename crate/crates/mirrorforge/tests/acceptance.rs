//! The fourteen acceptance criteria, one status line each.

use mirrorforge::repro::{run_all, ReproConfig, CRITERIA};

#[test]
fn acceptance() {
    let report = run_all(&ReproConfig::default());
    assert_eq!(report.criteria.len(), CRITERIA.len());
    for c in &report.criteria {
        println!("{}", c.line());
    }
    let failed: Vec<_> = report
        .criteria
        .iter()
        .filter(|c| !(c.pass && c.within_budget()))
        .map(|c| format!("{} {}: {:.3}s, {}", c.id, c.name, c.elapsed.as_secs_f64(), c.details))
        .collect();
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
    assert!(report.all_pass);
}
