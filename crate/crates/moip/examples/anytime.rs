//! Anytime behaviour: stop the solver after any number of IP solves and it
//! still returns a feasible incumbent plus two-sided bounds on the optimal
//! utility. The gap closes as the budget grows.
//!
//! ```bash
//! cargo run --example anytime
//! ```

use std::path::PathBuf;

use moip::cli::parse_instance;
use moip::driver::{run, RunConfig, RunStatus};

fn main() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/assign5x5_cubes.moip");
    let (inst, expr) = parse_instance(&path).expect("instance parses");

    println!("budget  status            lower bound   incumbent utility");
    for budget in 1..=8 {
        let cfg = RunConfig {
            max_ip_solves: Some(budget),
            ..RunConfig::default()
        };
        let result = run(&inst, &expr, &cfg).expect("run succeeds");
        let status = match result.status {
            RunStatus::ProvedOptimal => "proved optimal  ",
            RunStatus::BudgetExhausted => "budget exhausted",
        };
        println!(
            "{budget:>6}  {status}  {:>11}   {}",
            result.g_lower_bound.to_string(),
            result.g_best
        );
    }
}
