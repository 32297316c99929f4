//! Exact optimisation of a strictly increasing nonlinear utility function
//! over the efficient set of a multi-objective integer linear program.
//!
//! The solver maintains per-objective lower and upper bounds together with
//! the best utility found so far. Lower bounds come from exact LP
//! relaxations, upper bounds from inverting the utility function at the
//! current lower bounds, and when neither moves, a recursive nondominated-set
//! generator settles the last objective's upper bound. The bounds shrink on
//! every loop, so the search provably terminates with the optimal utility
//! and a witness point. Stopped early, the run still yields a feasible
//! incumbent plus two-sided bounds on the optimum.
//!
//! The crate is organised around the pipeline:
//!
//! - [`model`] — instances, objective vectors, dominance, bound state
//! - [`lp`] — exact rational two-phase simplex for the LP relaxations
//! - [`ip`] — branch-and-bound and lexicographic integer optimisation
//! - [`utility`] — utility expression parsing, evaluation, and inversion
//! - [`enumerate`] — recursive nondominated-set generation
//! - [`driver`] — the bound-shrinking state machine and its audit trace
//! - [`cli`] — instance file format, random instance generation, commands
//!
//! See the `examples/` directory for one runnable example per capability,
//! starting with `examples/solve_instance.rs`.

pub mod cli;
pub mod driver;
pub mod enumerate;
pub mod ip;
pub mod lp;
pub mod model;
pub mod trace;
pub mod utility;

pub use driver::{run, RunConfig, RunResult, RunStatus};
pub use enumerate::{enumerate_full_frontier, enumerate_nondominated, EnumerationRequest};
pub use ip::{solve_ip, solve_lexicographic, SolveCounter};
pub use lp::{solve_lp, LpProblem, LpResult};
pub use model::{BoundsState, ExtInt, MoipInstance, ObjectiveVector, Point};
pub use utility::{parse_utility, UtilityExpr, UtilityValue};
