//! Runs the built-in desk grid and prints the summary.
use goppa_fold::harness::{run_sweep, Grid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let jobs = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let report = run_sweep(&Grid::desk(), jobs, false)?;
    let s = &report.summary;
    println!("{} instances: {} passed, {} failed, {} errors", s.total, s.passed, s.failed, s.errors);
    for e in report.entries.iter().filter(|e| e.n_folded > 0 && e.k_folded > 0).take(5) {
        println!("  {} {:?} [{}, {}] -> [{}, {}]", e.field, e.family, e.n, e.k, e.n_folded, e.k_folded);
    }
    Ok(())
}
