//! The exact rational simplex on its own: no floating point, no
//! tolerances. Optimal values and solutions come back as exact rationals,
//! so fractional vertices are unambiguous and ceilings need no epsilon.
//!
//! ```bash
//! cargo run --example exact_lp
//! ```

use moip::lp::{is_integral, rat, solve_lp, LpProblem, LpResult, Rat};
use moip::model::{ExtInt, MoipInstance};

fn pretty(solution: &[Rat]) -> String {
    let cells: Vec<String> = solution.iter().map(|v| v.to_string()).collect();
    format!("({})", cells.join(", "))
}

fn main() {
    // Two goods sharing a budget: x1 + 2 x2 + s = 7, minimise -3 x1 - 5 x2
    // (that is, maximise 3 x1 + 5 x2) over nonnegative integers relaxed to
    // rationals.
    let inst = MoipInstance::new(
        vec![vec![1, 2, 1]],
        vec![7],
        vec![vec![-3, -5, 0], vec![1, 0, 0]],
    )
    .expect("valid instance");

    let relaxed = solve_lp(&LpProblem::minimising_row(&inst, 0)).expect("solve succeeds");
    if let LpResult::Optimal { value, solution } = &relaxed {
        println!("uncapped optimum: {value}, solution {}", pretty(solution));
        println!("integral vertex: {:?}", is_integral(&relaxed));
    }

    // Cap the second objective row (f2 = x1) at 4 and watch the optimum
    // degrade; caps never improve a minimum.
    let capped = LpProblem::minimising_row(&inst, 0)
        .with_caps(vec![ExtInt::PosInf, ExtInt::Finite(4)]);
    if let LpResult::Optimal { value, solution } = solve_lp(&capped).expect("solve succeeds") {
        println!("capped optimum:   {value}, solution {}", pretty(&solution));
    }

    // A fractional vertex, reported exactly.
    let odd = MoipInstance::new(vec![vec![2, 2]], vec![5], vec![vec![1, 1]]).unwrap();
    let res = solve_lp(&LpProblem::minimising_row(&odd, 0)).expect("solve succeeds");
    if let LpResult::Optimal { value, .. } = &res {
        println!("fractional optimum: {value} = {}", rat(5) / rat(2));
        println!("integral vertex: {:?}", is_integral(&res));
    }
}
