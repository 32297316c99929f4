//! Test-support oracles, independent of the solver's computation paths:
//! permutation enumeration over assignment instances, raw objective
//! arithmetic, and a from-scratch nondominated filter.

// Each test binary uses a different subset of these helpers.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use moip::cli::{generate_instance, GeneratorSpec, Shape};
use moip::model::MoipInstance;
use moip::utility::{parse_utility, UtilityExpr};

pub fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/assign5x5_cubes.moip")
}

pub fn trace_fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/assign5x5_cubes_trace.tsv")
}

/// All permutations of `0..s` via Heap's algorithm.
pub fn permutations(s: usize) -> Vec<Vec<usize>> {
    fn heap(arr: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if n <= 1 {
            out.push(arr.clone());
            return;
        }
        for i in 0..n {
            heap(arr, n - 1, out);
            if n.is_multiple_of(2) {
                arr.swap(i, n - 1);
            } else {
                arr.swap(0, n - 1);
            }
        }
    }
    let mut arr: Vec<usize> = (0..s).collect();
    let mut out = Vec::new();
    heap(&mut arr, s, &mut out);
    out
}

/// The feasible point of an assignment permutation in the generator's
/// variable layout: cell variables row-major, then one slack per cell.
pub fn assignment_point(perm: &[usize], s: usize) -> Vec<i64> {
    let cells = s * s;
    let mut x = vec![0i64; 2 * cells];
    for (r, &c) in perm.iter().enumerate() {
        x[r * s + c] = 1;
    }
    for j in 0..cells {
        x[cells + j] = 1 - x[j];
    }
    x
}

/// Raw objective values of a point, straight i128 dot products.
pub fn raw_objectives(inst: &MoipInstance, point: &[i64]) -> Vec<i64> {
    inst.objective_rows()
        .iter()
        .map(|row| {
            row.iter()
                .zip(point)
                .map(|(&c, &x)| c as i128 * x as i128)
                .sum::<i128>() as i64
        })
        .collect()
}

fn dominates_raw(a: &[i64], b: &[i64]) -> bool {
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strict = true;
        }
    }
    strict
}

/// From-scratch nondominated filter over raw vectors.
pub fn naive_nondominated(vectors: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let unique: BTreeSet<Vec<i64>> = vectors.iter().cloned().collect();
    unique
        .iter()
        .filter(|v| !unique.iter().any(|u| dominates_raw(u, v)))
        .cloned()
        .collect()
}

/// Every objective vector of an s-by-s assignment instance, one per
/// permutation.
pub fn all_assignment_vectors(inst: &MoipInstance, s: usize) -> Vec<Vec<i64>> {
    permutations(s)
        .iter()
        .map(|perm| raw_objectives(inst, &assignment_point(perm, s)))
        .collect()
}

pub struct CorpusCase {
    pub inst: MoipInstance,
    pub expr: UtilityExpr,
    pub size: usize,
    pub cube: bool,
}

/// Fifty seeded assignment instances covering sizes 3 and 4, two and three
/// objectives, and sum-of-squares / sum-of-cubes utilities.
pub fn corpus() -> Vec<CorpusCase> {
    (0..50u64)
        .map(|t| {
            let size = 3 + (t % 2) as usize;
            let k = 2 + ((t / 2) % 2) as usize;
            let cube = (t / 4) % 2 == 1;
            let spec = GeneratorSpec {
                shape: Shape::Assignment { size },
                cost_min: 1,
                cost_max: 20,
                seed: 1000 + t,
                k,
            };
            let power = if cube { 3 } else { 2 };
            let utility = (1..=k)
                .map(|i| format!("f{i}^{power}"))
                .collect::<Vec<_>>()
                .join(" + ");
            let (inst, _) = generate_instance(&spec, Some(&utility)).expect("valid spec");
            let expr = parse_utility(&utility, k).expect("valid utility");
            CorpusCase {
                inst,
                expr,
                size,
                cube,
            }
        })
        .collect()
}

/// Independent utility arithmetic for the corpus utilities.
pub fn raw_utility(values: &[i64], cube: bool) -> i128 {
    values
        .iter()
        .map(|&v| {
            let v = v as i128;
            if cube {
                v * v * v
            } else {
                v * v
            }
        })
        .sum()
}
