//! Integer optimisation over the LP relaxations: depth-first branch-and-bound
//! with exact bounds, plus staged lexicographic optimisation.
//!
//! Branching is on the lowest-index fractional variable, floor child first,
//! so identical inputs always explore identical trees. Because objective
//! coefficients are integers, a node is pruned as soon as the ceiling of its
//! relaxation value reaches the incumbent.
//!
//! A [`SolveCounter`] counts top-level solves: one per [`solve_ip`] call and
//! one per [`solve_lexicographic`] call, regardless of how many stages or
//! tree nodes the call needs.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::lp::{self, LpProblem, LpResult, Rat};
use crate::model::{ExtInt, ModelError, MoipInstance, ObjectiveVector, Point};

#[derive(Debug, Error, PartialEq)]
pub enum IpError {
    #[error(transparent)]
    Lp(#[from] lp::LpError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("integer program is unbounded below")]
    Unbounded,
    #[error("a solution component or objective value does not fit in 64 bits")]
    ValueRange,
    #[error("objective priority must be a nonempty list of distinct indices below {k}")]
    BadPriority { k: usize },
    #[error("objective row index {index} out of range 0..{k}")]
    BadObjectiveRow { index: usize, k: usize },
}

/// Counts top-level integer-program solves.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveCounter {
    ip_solves: u64,
}

impl SolveCounter {
    pub fn new() -> Self {
        SolveCounter::default()
    }

    pub fn count(&self) -> u64 {
        self.ip_solves
    }

    fn bump(&mut self) {
        self.ip_solves += 1;
    }
}

/// An integer program: minimise objective row `objective_row` over the
/// instance's feasible set, under objective caps and pins.
#[derive(Debug, Clone)]
pub struct IpProblem<'a> {
    pub inst: &'a MoipInstance,
    pub objective_row: usize,
    pub obj_caps: Vec<ExtInt>,
    pub obj_fixes: Vec<Option<i64>>,
}

impl<'a> IpProblem<'a> {
    pub fn new(inst: &'a MoipInstance, objective_row: usize) -> Self {
        IpProblem {
            inst,
            objective_row,
            obj_caps: vec![ExtInt::PosInf; inst.num_objectives()],
            obj_fixes: vec![None; inst.num_objectives()],
        }
    }

    pub fn with_caps(mut self, caps: Vec<ExtInt>) -> Self {
        self.obj_caps = caps;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum IpOutcome {
    Optimal { value: i64, point: Point },
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IpSolve {
    pub outcome: IpOutcome,
    /// Branch-and-bound nodes explored, for determinism checks.
    pub nodes: u64,
}

/// Exact integer minimum via branch-and-bound. Counts as one IP solve.
pub fn solve_ip(prob: &IpProblem, counter: &mut SolveCounter) -> Result<IpSolve, IpError> {
    counter.bump();
    branch_and_bound(
        prob.inst,
        prob.objective_row,
        &prob.obj_caps,
        &prob.obj_fixes,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub enum LexOutcome {
    Optimal {
        point: Point,
        objectives: ObjectiveVector,
    },
    Infeasible,
}

/// Sequentially minimises the objectives in `priority` order (zero-based
/// indices), pinning each stage's optimum as an equality before the next
/// stage. Counts as one IP solve in total.
pub fn solve_lexicographic(
    inst: &MoipInstance,
    priority: &[usize],
    obj_caps: &[ExtInt],
    counter: &mut SolveCounter,
) -> Result<LexOutcome, IpError> {
    let k = inst.num_objectives();
    let mut seen = vec![false; k];
    if priority.is_empty() {
        return Err(IpError::BadPriority { k });
    }
    for &p in priority {
        if p >= k || seen[p] {
            return Err(IpError::BadPriority { k });
        }
        seen[p] = true;
    }
    counter.bump();

    let mut fixes: Vec<Option<i64>> = vec![None; k];
    let mut last_point: Option<Point> = None;
    for &p in priority {
        match branch_and_bound(inst, p, obj_caps, &fixes)?.outcome {
            IpOutcome::Infeasible => {
                // Later stages always contain the previous stage's optimum.
                debug_assert!(last_point.is_none());
                return Ok(LexOutcome::Infeasible);
            }
            IpOutcome::Optimal { value, point } => {
                fixes[p] = Some(value);
                last_point = Some(point);
            }
        }
    }
    let point = last_point.expect("priority is nonempty");
    let objectives = inst.evaluate_objectives(&point)?;
    Ok(LexOutcome::Optimal { point, objectives })
}

struct Node {
    var_lower: Vec<i64>,
    var_upper: Vec<ExtInt>,
}

fn branch_and_bound(
    inst: &MoipInstance,
    objective_row: usize,
    obj_caps: &[ExtInt],
    obj_fixes: &[Option<i64>],
) -> Result<IpSolve, IpError> {
    let k = inst.num_objectives();
    if objective_row >= k {
        return Err(IpError::BadObjectiveRow {
            index: objective_row,
            k,
        });
    }
    let n = inst.num_vars();
    let mut incumbent: Option<(i64, Point)> = None;
    let mut nodes: u64 = 0;
    let mut stack = vec![Node {
        var_lower: vec![0; n],
        var_upper: vec![ExtInt::PosInf; n],
    }];

    while let Some(node) = stack.pop() {
        nodes += 1;
        let mut prob = LpProblem::minimising_row(inst, objective_row);
        prob.obj_caps = obj_caps.to_vec();
        prob.obj_fixes = obj_fixes.to_vec();
        prob.var_lower = node.var_lower.clone();
        prob.var_upper = node.var_upper.clone();
        let relaxation = lp::solve_lp(&prob)?;
        let (value, solution) = match relaxation {
            LpResult::Infeasible => continue,
            LpResult::Unbounded => return Err(IpError::Unbounded),
            LpResult::Optimal { value, solution } => (value, solution),
        };
        if let Some((best, _)) = &incumbent {
            // Integer objective data: the node is dead once ceil(bound)
            // reaches the incumbent.
            if value.ceil().to_integer() >= BigInt::from(*best) {
                continue;
            }
        }
        match first_fractional(&solution) {
            None => {
                let point = lp::is_integral(&LpResult::Optimal {
                    value: value.clone(),
                    solution,
                })
                .ok_or(IpError::ValueRange)?;
                let exact = objective_value(inst, objective_row, &point)?;
                if incumbent.as_ref().is_none_or(|(best, _)| exact < *best) {
                    incumbent = Some((exact, point));
                }
            }
            Some((j, frac)) => {
                let floor = frac
                    .floor()
                    .to_integer()
                    .to_i64()
                    .ok_or(IpError::ValueRange)?;
                // Depth-first with the floor child explored first.
                let mut ceil_child = Node {
                    var_lower: node.var_lower.clone(),
                    var_upper: node.var_upper.clone(),
                };
                ceil_child.var_lower[j] = floor + 1;
                let mut floor_child = node;
                floor_child.var_upper[j] = ExtInt::Finite(floor);
                stack.push(ceil_child);
                stack.push(floor_child);
            }
        }
    }

    let outcome = match incumbent {
        Some((value, point)) => IpOutcome::Optimal { value, point },
        None => IpOutcome::Infeasible,
    };
    Ok(IpSolve { outcome, nodes })
}

fn first_fractional(solution: &[Rat]) -> Option<(usize, &Rat)> {
    solution
        .iter()
        .enumerate()
        .find(|(_, v)| !v.is_integer())
}

fn objective_value(inst: &MoipInstance, row: usize, point: &Point) -> Result<i64, IpError> {
    inst.objective_row(row)
        .iter()
        .zip(point.coords())
        .map(|(&c, &x)| c as i128 * x as i128)
        .sum::<i128>()
        .to_i64()
        .ok_or(IpError::ValueRange)
}
