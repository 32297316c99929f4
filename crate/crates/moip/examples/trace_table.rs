//! Prints the solver's full iteration table for the bundled benchmark:
//! every solver call and bound update, in the order they happened. Empty
//! cells mean "unchanged"; the final row restates the whole state.
//!
//! ```bash
//! cargo run --example trace_table
//! ```

use std::path::PathBuf;

use moip::cli::parse_instance;
use moip::driver::{run, RunConfig};
use moip::trace::render_trace_tsv;

fn main() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/assign5x5_cubes.moip");
    let (inst, expr) = parse_instance(&path).expect("instance parses");
    let result = run(&inst, &expr, &RunConfig::default()).expect("run succeeds");
    print!("{}", render_trace_tsv(&result.trace, inst.num_objectives()));
    eprintln!(
        "# proved {} optimal in {} IP solves over {} trace rows",
        result.g_best,
        result.ip_solves,
        result.trace.len()
    );
}
