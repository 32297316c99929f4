//! The bound-shrinking state machine.
//!
//! A run initialises bounds from one lexicographic solve per objective,
//! then cycles three phases until the search region is exhausted:
//!
//! 1. stop if the utility at the lower bounds already matches the best
//!    known value; otherwise invert the utility at the lower bounds to
//!    tighten each objective's upper bound;
//! 2. re-solve the capped LP relaxations and raise lower bounds to the
//!    ceilings of the optimal values, returning to phase 1 whenever a lower
//!    bound moves (an integral LP vertex may also improve the incumbent);
//! 3. stream nondominated vectors of the subproblem on the first `k - 1`
//!    objectives; the first vector beating the incumbent restarts phase 1,
//!    a completed sweep lowers the last objective's upper bound and returns
//!    to phase 2, and an empty region proves optimality.
//!
//! Every solver call and bound-update pass appends a [`TraceEvent`], so a
//! finished run replays as the table exported by [`trace::render_trace_tsv`].
//! Stopped on a budget, the run still returns the incumbent and utility
//! bounds from both sides.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::enumerate::{enumerate_with_hook, EnumStatus, Flow};
use crate::ip::{solve_lexicographic, IpError, LexOutcome, SolveCounter};
use crate::lp::{self, LpProblem, LpResult};
use crate::model::{BoundsState, ExtInt, ModelError, MoipInstance, ObjectiveVector, Point};
use crate::trace::{RowValues, StepId, TraceEvent};
use crate::utility::{invert_bound, UtilityError, UtilityExpr, UtilityValue};

#[derive(Debug, Error, PartialEq)]
pub enum RunError {
    #[error("instance is infeasible")]
    Infeasible,
    #[error("IP budget must be at least one solve")]
    ZeroBudget,
    #[error("utility expression uses {expr} objectives, instance has {inst}")]
    ObjectiveCountMismatch { expr: usize, inst: usize },
    #[error("initialisation orders must start each objective exactly once")]
    BadInitStrategy,
    #[error(transparent)]
    Ip(#[from] IpError),
    #[error(transparent)]
    Utility(#[from] UtilityError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    /// Lexicographic priority orders for initialisation; defaults to
    /// objective `i` first, then the rest in index order.
    pub init_orders: Option<Vec<Vec<usize>>>,
    /// Stop before starting an IP solve beyond this many.
    pub max_ip_solves: Option<u64>,
    /// Wall-clock budget, checked between solver calls.
    pub time_budget: Option<Duration>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    ProvedOptimal,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub status: RunStatus,
    pub g_best: UtilityValue,
    pub incumbent: Point,
    pub incumbent_objectives: ObjectiveVector,
    /// A proved lower bound on the optimal utility: the utility at the final
    /// lower bounds, capped at `g_best` once the incumbent is proved optimal.
    pub g_lower_bound: UtilityValue,
    pub trace: Vec<TraceEvent>,
    pub ip_solves: u64,
}

/// Optimises the utility over the instance's efficient set.
pub fn run(
    inst: &MoipInstance,
    expr: &UtilityExpr,
    cfg: &RunConfig,
) -> Result<RunResult, RunError> {
    let k = inst.num_objectives();
    if expr.num_objectives() != k {
        return Err(RunError::ObjectiveCountMismatch {
            expr: expr.num_objectives(),
            inst: k,
        });
    }
    if cfg.max_ip_solves == Some(0) {
        return Err(RunError::ZeroBudget);
    }
    let orders = match &cfg.init_orders {
        Some(orders) => {
            validate_orders(orders, k)?;
            orders.clone()
        }
        None => default_orders(k),
    };

    let mut core = Core {
        inst,
        expr,
        bounds: BoundsState::new(k),
        trace: Vec::new(),
        pivot_armed: true,
        lp_solved_caps: vec![None; k],
        incumbent_objectives: None,
    };
    let mut counter = SolveCounter::new();
    let budget = Budget {
        max_ips: cfg.max_ip_solves,
        deadline: cfg.time_budget.map(|d| Instant::now() + d),
    };

    let status = algorithm(&mut core, &mut counter, &orders, &budget)?;

    // The utility floor of the remaining region can exceed the incumbent
    // once the region no longer contains it; the optimum is bounded below
    // by the smaller of the two.
    let at_lb = core.expr.eval(&core.bounds.lb)?;
    let g_lower_bound = if core.bounds.g_best.lt(&at_lb) {
        core.bounds.g_best.clone()
    } else {
        at_lb
    };
    let incumbent = core.bounds.incumbent.clone().expect("incumbent exists");
    let incumbent_objectives = core
        .incumbent_objectives
        .clone()
        .expect("incumbent objectives exist");
    Ok(RunResult {
        status,
        g_best: core.bounds.g_best.clone(),
        incumbent,
        incumbent_objectives,
        g_lower_bound,
        trace: core.trace,
        ip_solves: counter.count(),
    })
}

pub fn default_orders(k: usize) -> Vec<Vec<usize>> {
    (0..k)
        .map(|i| {
            let mut order = vec![i];
            order.extend((0..k).filter(|&j| j != i));
            order
        })
        .collect()
}

fn validate_orders(orders: &[Vec<usize>], k: usize) -> Result<(), RunError> {
    if orders.len() != k {
        return Err(RunError::BadInitStrategy);
    }
    let mut firsts = vec![false; k];
    for order in orders {
        let mut seen = vec![false; k];
        if order.len() != k {
            return Err(RunError::BadInitStrategy);
        }
        for &i in order {
            if i >= k || seen[i] {
                return Err(RunError::BadInitStrategy);
            }
            seen[i] = true;
        }
        let head = order[0];
        if firsts[head] {
            return Err(RunError::BadInitStrategy);
        }
        firsts[head] = true;
    }
    Ok(())
}

struct Budget {
    max_ips: Option<u64>,
    deadline: Option<Instant>,
}

impl Budget {
    fn allows_ip(&self, counter: &SolveCounter) -> bool {
        if let Some(max) = self.max_ips {
            if counter.count() >= max {
                return false;
            }
        }
        !self.time_exceeded()
    }

    fn time_exceeded(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

struct Core<'a> {
    inst: &'a MoipInstance,
    expr: &'a UtilityExpr,
    bounds: BoundsState,
    trace: Vec<TraceEvent>,
    /// Whether the last objective is re-inverted in phase 1. The pivot is
    /// re-inverted only while each inversion improves its bound by more than
    /// one; an incumbent improvement or an external change to its bound
    /// re-arms it.
    pivot_armed: bool,
    /// Cap vector at the last LP solve per objective; a solve is skipped
    /// when no cap other than the objective's own has changed since, which
    /// cannot move the optimum.
    lp_solved_caps: Vec<Option<Vec<ExtInt>>>,
    incumbent_objectives: Option<ObjectiveVector>,
}

enum Step1Outcome {
    Stop,
    Continue,
}

enum Step2Outcome {
    Improved,
    Unchanged,
    RegionEmpty,
    TimedOut,
}

enum Step3Outcome {
    ImprovedGBest,
    TightenedUb,
    Exhausted,
    BudgetHit,
}

fn algorithm(
    core: &mut Core,
    counter: &mut SolveCounter,
    orders: &[Vec<usize>],
    budget: &Budget,
) -> Result<RunStatus, RunError> {
    if !step0_initialise(core, counter, orders, budget)? {
        return Ok(RunStatus::BudgetExhausted);
    }
    loop {
        match step1_update_upper_bounds(core)? {
            Step1Outcome::Stop => return Ok(RunStatus::ProvedOptimal),
            Step1Outcome::Continue => {}
        }
        loop {
            match step2_update_lower_bounds(core, budget)? {
                Step2Outcome::Improved => break,
                Step2Outcome::RegionEmpty => return Ok(RunStatus::ProvedOptimal),
                Step2Outcome::TimedOut => return Ok(RunStatus::BudgetExhausted),
                Step2Outcome::Unchanged => match step3_enumerate_and_tighten(
                    core, counter, budget,
                )? {
                    Step3Outcome::ImprovedGBest => break,
                    Step3Outcome::TightenedUb => continue,
                    Step3Outcome::Exhausted => return Ok(RunStatus::ProvedOptimal),
                    Step3Outcome::BudgetHit => return Ok(RunStatus::BudgetExhausted),
                },
            }
        }
    }
}

/// Runs one lexicographic solve per objective, seeding the incumbent and
/// the lower bounds. Returns `false` when the budget ran out first.
fn step0_initialise(
    core: &mut Core,
    counter: &mut SolveCounter,
    orders: &[Vec<usize>],
    budget: &Budget,
) -> Result<bool, RunError> {
    let caps = vec![ExtInt::PosInf; core.inst.num_objectives()];
    for (idx, order) in orders.iter().enumerate() {
        // The first solve always runs; a running solve is never interrupted.
        if idx > 0 && !budget.allows_ip(counter) {
            return Ok(false);
        }
        match solve_lexicographic(core.inst, order, &caps, counter)? {
            LexOutcome::Infeasible => return Err(RunError::Infeasible),
            LexOutcome::Optimal { point, objectives } => {
                let g = core.expr.eval(&objective_args(&objectives))?;
                if g.lt(&core.bounds.g_best) {
                    core.set_incumbent(g, point, objectives.clone());
                }
                let head = order[0];
                core.bounds
                    .raise_lb(head, ExtInt::Finite(objectives.values()[head]));
                core.push_event(
                    StepId::Step0,
                    Some(counter.count()),
                    format!("IP Min f{}(x)", head + 1),
                    RowValues::Objectives(objectives),
                )?;
            }
        }
    }
    Ok(true)
}

/// Phase 1: the stop test, then per-objective upper bounds from utility
/// inversion at the current lower bounds.
fn step1_update_upper_bounds(core: &mut Core) -> Result<Step1Outcome, RunError> {
    let k = core.inst.num_objectives();
    let g_lb = core.expr.eval(&core.bounds.lb)?;
    if g_lb.ge(&core.bounds.g_best) {
        return Ok(Step1Outcome::Stop);
    }
    let mut inverted: Vec<usize> = Vec::new();
    for i in 0..k {
        let is_pivot = k >= 2 && i == k - 1;
        if is_pivot && !core.pivot_armed {
            continue;
        }
        let z = invert_bound(core.expr, &core.bounds.lb, i, &core.bounds.g_best)?;
        inverted.push(i);
        if is_pivot {
            let improvement = match (core.bounds.ub[i], z) {
                (ExtInt::PosInf, ExtInt::Finite(_)) => i64::MAX,
                (ExtInt::Finite(old), ExtInt::Finite(new)) if new < old => old - new,
                _ => 0,
            };
            core.pivot_armed = improvement > 1;
        }
        core.bounds.lower_ub(i, z);
    }
    let labels: Vec<String> = inverted.iter().map(|i| format!("f{}A", i + 1)).collect();
    core.push_event(
        StepId::Step1,
        None,
        format!("Find {}", labels.join(",")),
        RowValues::None,
    )?;
    Ok(Step1Outcome::Continue)
}

/// Phase 2: capped LP relaxations raise the lower bounds; integral vertices
/// may improve the incumbent opportunistically.
fn step2_update_lower_bounds(
    core: &mut Core,
    budget: &Budget,
) -> Result<Step2Outcome, RunError> {
    if budget.time_exceeded() {
        return Ok(Step2Outcome::TimedOut);
    }
    let k = core.inst.num_objectives();
    let mut any_lb_change = false;
    let mut solved: Vec<Option<lp::Rat>> = vec![None; k];
    let mut solved_idx: Vec<usize> = Vec::new();
    for i in 0..k {
        if let Some(prev) = &core.lp_solved_caps[i] {
            let unchanged_elsewhere =
                (0..k).all(|j| j == i || prev[j] == core.bounds.ub[j]);
            if unchanged_elsewhere {
                continue;
            }
        }
        let prob = LpProblem::minimising_row(core.inst, i)
            .with_caps(core.bounds.ub.clone());
        match lp::solve_lp(&prob).map_err(IpError::from)? {
            LpResult::Infeasible => return Ok(Step2Outcome::RegionEmpty),
            LpResult::Unbounded => return Err(RunError::Ip(IpError::Unbounded)),
            LpResult::Optimal { value, solution } => {
                core.lp_solved_caps[i] = Some(core.bounds.ub.clone());
                let ceiling = value
                    .ceil()
                    .to_integer()
                    .try_into()
                    .map_err(|_| ModelError::Overflow(i))?;
                if core.bounds.raise_lb(i, ExtInt::Finite(ceiling)) {
                    any_lb_change = true;
                }
                let result = LpResult::Optimal {
                    value: value.clone(),
                    solution,
                };
                if let Some(point) = lp::is_integral(&result) {
                    let objectives = core.inst.evaluate_objectives(&point)?;
                    let g = core.expr.eval(&objective_args(&objectives))?;
                    if g.lt(&core.bounds.g_best) {
                        core.set_incumbent(g, point, objectives);
                    }
                }
                solved[i] = Some(value);
                solved_idx.push(i);
            }
        }
    }
    if !solved_idx.is_empty() {
        let list: Vec<String> = solved_idx.iter().map(|i| (i + 1).to_string()).collect();
        core.push_event(
            StepId::Step2,
            None,
            format!("LP Min fi(x),i={}", list.join(",")),
            RowValues::LpValues(solved),
        )?;
    }
    Ok(if any_lb_change {
        Step2Outcome::Improved
    } else {
        Step2Outcome::Unchanged
    })
}

/// Phase 3: stream nondominated vectors of the first `k - 1` objectives;
/// react to the first incumbent improvement, otherwise tighten the last
/// objective's upper bound from the completed sweep.
fn step3_enumerate_and_tighten(
    core: &mut Core,
    counter: &mut SolveCounter,
    budget: &Budget,
) -> Result<Step3Outcome, RunError> {
    let k = core.inst.num_objectives();
    debug_assert!(k >= 2, "single-objective runs stop in phase 1");
    if !budget.allows_ip(counter) {
        return Ok(Step3Outcome::BudgetHit);
    }
    let active: Vec<usize> = (0..k - 1).collect();
    let action = {
        let parts: Vec<String> = active.iter().map(|i| format!("f{}(x)", i + 1)).collect();
        format!("IP Min {}", parts.join(","))
    };
    let caps = core.bounds.ub.clone();

    let mut improved = false;
    let mut budget_hit = false;
    let mut hook_error: Option<RunError> = None;
    let inst = core.inst;
    let outcome = {
        let max_ips = budget.max_ips;
        let deadline = budget.deadline;
        let core = &mut *core;
        let mut hook = |record: &crate::enumerate::LexRecord| -> Flow {
            let row = match &record.outcome {
                Some((vector, point)) => {
                    if record.fresh {
                        match core.expr.eval(&objective_args(vector)) {
                            Ok(g) => {
                                if g.lt(&core.bounds.g_best) {
                                    core.set_incumbent(
                                        g,
                                        point.clone(),
                                        vector.clone(),
                                    );
                                    improved = true;
                                }
                            }
                            Err(e) => {
                                hook_error = Some(e.into());
                                return Flow::Abort;
                            }
                        }
                    }
                    RowValues::Objectives(vector.clone())
                }
                None => RowValues::Infeasible,
            };
            if let Err(e) =
                core.push_event(StepId::Step3, Some(record.ip_index), action.clone(), row)
            {
                hook_error = Some(e);
                return Flow::Abort;
            }
            if improved {
                return Flow::Abort;
            }
            Flow::Continue
        };
        let mut guard = |count: u64| -> bool {
            let allowed = max_ips.is_none_or(|max| count < max)
                && deadline.is_none_or(|d| Instant::now() < d);
            if !allowed {
                budget_hit = true;
            }
            allowed
        };
        enumerate_with_hook(inst, &active, caps, counter, &mut hook, &mut guard)?
    };
    if let Some(e) = hook_error {
        return Err(e);
    }
    match outcome.status {
        EnumStatus::Aborted if improved => Ok(Step3Outcome::ImprovedGBest),
        EnumStatus::Aborted => {
            debug_assert!(budget_hit);
            Ok(Step3Outcome::BudgetHit)
        }
        EnumStatus::Infeasible => Ok(Step3Outcome::Exhausted),
        EnumStatus::Complete => {
            let pivot = k - 1;
            let max_pivot = outcome
                .vectors
                .iter()
                .map(|v| v.values()[pivot])
                .max()
                .expect("complete sweeps are nonempty");
            core.bounds.lower_ub(pivot, ExtInt::Finite(max_pivot - 1));
            core.pivot_armed = true;
            // The bound belongs to the sweep that proved it: show it on the
            // sweep's closing row.
            if let Some(last) = core.trace.last_mut() {
                last.ub = core.bounds.ub.clone();
            }
            Ok(Step3Outcome::TightenedUb)
        }
    }
}

fn objective_args(v: &ObjectiveVector) -> Vec<ExtInt> {
    v.values().iter().map(|&x| ExtInt::Finite(x)).collect()
}

impl Core<'_> {
    fn set_incumbent(&mut self, g: UtilityValue, point: Point, objectives: ObjectiveVector) {
        self.bounds.g_best = g;
        self.bounds.incumbent = Some(point);
        self.incumbent_objectives = Some(objectives);
        self.pivot_armed = true;
    }

    fn push_event(
        &mut self,
        step: StepId,
        ip: Option<u64>,
        action: String,
        values: RowValues,
    ) -> Result<(), RunError> {
        let g_lb = self.expr.eval(&self.bounds.lb)?;
        self.trace.push(TraceEvent {
            step,
            ip,
            action,
            values,
            g_best: self.bounds.g_best.clone(),
            lb: self.bounds.lb.clone(),
            ub: self.bounds.ub.clone(),
            g_lb,
            incumbent_objectives: self.incumbent_objectives.clone(),
        });
        Ok(())
    }
}
