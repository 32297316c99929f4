//! Utility expression tooling: parsing, exact evaluation, sampled
//! monotonicity checking, and the integer bound inversion the solver uses
//! to turn an incumbent into per-objective upper bounds.
//!
//! ```bash
//! cargo run --example utility_expressions
//! ```

use moip::model::ExtInt;
use moip::utility::{check_monotone_sample, invert_bound, parse_utility, UtilityValue};

fn fin(values: &[i64]) -> Vec<ExtInt> {
    values.iter().map(|&v| ExtInt::Finite(v)).collect()
}

fn main() {
    let expr = parse_utility("f1^3 + f2^3 + f3^3", 3).expect("parses");
    println!("expression: {expr} (polynomial: {})", expr.is_polynomial());

    let at = fin(&[96, 186, 204]);
    println!("value at (96, 186, 204): {}", expr.eval(&at).unwrap());

    // Sampled monotonicity evidence: bump each coordinate by one and demand
    // a strict increase.
    let report = check_monotone_sample(&expr, &[(0, 400), (0, 400), (0, 400)], 1000, 42)
        .expect("sampling succeeds");
    println!(
        "monotonicity over [0,400]^3: {} samples, {} violations",
        report.samples,
        report.violations.len()
    );
    let bad = parse_utility("f1 - f2", 2).expect("parses");
    let report = check_monotone_sample(&bad, &[(0, 10), (0, 10)], 200, 42).unwrap();
    println!(
        "monotonicity of {bad}: {} violations (decreasing in f2)",
        report.violations.len()
    );

    // Bound inversion: the largest z with G(86, 128, z) still at most the
    // incumbent utility. One more and the utility must exceed it.
    let lb = fin(&[86, 128, 129]);
    let g_best = UtilityValue::exact_int(44_448_624);
    for coord in 0..3 {
        let z = invert_bound(&expr, &lb, coord, &g_best).expect("inversion succeeds");
        println!("upper bound for objective {} from inversion: {z}", coord + 1);
    }
}
