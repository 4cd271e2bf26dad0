//! Scenario files, builtin examples, named checks, and reports for the
//! plectic library.

// dense index arithmetic reads best with explicit loops
#![allow(clippy::needless_range_loop)]

pub mod builtins;
pub mod checks;
pub mod expr;
pub mod report;
pub mod scenario;

use report::Report;

/// Runs a batch of resolved scenarios, optionally across worker threads;
/// reports come back in the input order regardless of scheduling.
pub fn run_batch(scenarios: Vec<scenario::Scenario>, jobs: usize) -> Vec<Report> {
    if jobs <= 1 || scenarios.len() <= 1 {
        return scenarios.iter().map(scenario::run_scenario).collect();
    }
    let total = scenarios.len();
    let next = std::sync::atomic::AtomicUsize::new(0);
    let scenarios = &scenarios;
    let mut slots: Vec<Option<Report>> = (0..total).map(|_| None).collect();
    let slots_ref = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(total) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= total {
                    break;
                }
                let report = scenario::run_scenario(&scenarios[i]);
                slots_ref.lock().unwrap()[i] = Some(report);
            });
        }
    });
    slots
        .into_iter()
        .map(|r| r.expect("all slots filled"))
        .collect()
}
