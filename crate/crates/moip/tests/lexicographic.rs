//! Brute-force nondominance checks for lexicographic solves on small
//! random assignment instances, with and without objective caps.

mod common;

use moip::cli::{generate_instance, GeneratorSpec, Shape};
use moip::ip::{solve_lexicographic, LexOutcome, SolveCounter};
use moip::model::ExtInt;

#[test]
fn lexicographic_solves_are_nondominated_in_the_capped_problem() {
    let priorities_k2: [&[usize]; 2] = [&[0, 1], &[1, 0]];
    let priorities_k3: [&[usize]; 3] = [&[0, 1, 2], &[1, 0, 2], &[2, 0, 1]];
    for seed in 0..12u64 {
        let size = 3 + (seed % 2) as usize;
        let k = 2 + (seed % 3 == 0) as usize;
        let spec = GeneratorSpec {
            shape: Shape::Assignment { size },
            cost_min: 1,
            cost_max: 20,
            seed: 500 + seed,
            k,
        };
        let (inst, _) = generate_instance(&spec, None).unwrap();
        let all = common::all_assignment_vectors(&inst, size);

        // Caps at the halfway point of each objective's observed range keep
        // the capped region nonempty for some seeds and empty for others;
        // both outcomes are checked.
        let caps: Vec<ExtInt> = (0..k)
            .map(|i| {
                let lo = all.iter().map(|v| v[i]).min().unwrap();
                let hi = all.iter().map(|v| v[i]).max().unwrap();
                ExtInt::Finite(lo + (hi - lo) / 2)
            })
            .collect();
        let feasible: Vec<Vec<i64>> = all
            .iter()
            .filter(|v| {
                v.iter()
                    .zip(&caps)
                    .all(|(&x, cap)| ExtInt::Finite(x) <= *cap)
            })
            .cloned()
            .collect();
        let frontier = common::naive_nondominated(&feasible);

        let priorities: &[&[usize]] = if k == 2 {
            &priorities_k2
        } else {
            &priorities_k3
        };
        for priority in priorities {
            let mut counter = SolveCounter::new();
            match solve_lexicographic(&inst, priority, &caps, &mut counter).unwrap() {
                LexOutcome::Optimal { objectives, .. } => {
                    assert!(
                        frontier.contains(objectives.values()),
                        "seed {seed}, priority {priority:?}: {objectives} not nondominated"
                    );
                }
                LexOutcome::Infeasible => {
                    assert!(
                        feasible.is_empty(),
                        "seed {seed}: solver reported an empty region that is not empty"
                    );
                }
            }
        }
    }
}
