//! End to end: load an instance file, optimise its utility over the
//! efficient set, and report the result.
//!
//! ```bash
//! cargo run --example solve_instance [path/to/instance.moip]
//! ```

use std::path::PathBuf;

use moip::cli::parse_instance;
use moip::driver::{run, RunConfig, RunStatus};

fn main() {
    let path = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/assign5x5_cubes.moip")
    });
    let (inst, expr) = parse_instance(&path).expect("instance parses");
    println!(
        "instance: {} objectives, {} variables, {} constraints",
        inst.num_objectives(),
        inst.num_vars(),
        inst.num_constraints()
    );
    println!("utility:  {expr}");

    let result = run(&inst, &expr, &RunConfig::default()).expect("run succeeds");
    match result.status {
        RunStatus::ProvedOptimal => println!("status:   proved optimal"),
        RunStatus::BudgetExhausted => println!("status:   budget exhausted"),
    }
    println!("utility value: {}", result.g_best);
    println!("objectives:    {}", result.incumbent_objectives);
    println!("ip solves:     {}", result.ip_solves);
}
