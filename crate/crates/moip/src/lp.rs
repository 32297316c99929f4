//! Exact-arithmetic LP relaxations: a dense two-phase simplex over exact
//! rationals.
//!
//! Solves `min c.x` subject to `Ax = b`, `x >= 0`, optional objective caps
//! `C_i x <= u_i`, optional objective pins `C_i x = v_i`, and per-variable
//! bounds added by branch-and-bound. There is no tolerance anywhere: a value
//! is integral exactly when its reduced rational form has denominator one,
//! and ceilings of optimal values need no epsilon guard.
//!
//! Arithmetic runs over 128-bit rationals with overflow checks; a solve that
//! overflows is redone in arbitrary precision, so results are always exact
//! and overflow is never silently wrapped. Pivoting is deterministic: the
//! entering column is the most negative reduced cost with ties broken by
//! lowest index, the leaving row is the minimum ratio with ties broken by
//! lowest basic index, and a long degenerate streak switches the phase to
//! Bland's rule, which cannot cycle. Identical problems therefore take
//! identical pivot paths.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::model::{ExtInt, MoipInstance, Point};

pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("objective vector has length {actual}, instance has {expected} variables")]
    ObjectiveLength { expected: usize, actual: usize },
    #[error("cap vector has length {actual}, instance has {expected} objectives")]
    CapLength { expected: usize, actual: usize },
    #[error("variable bound vector has length {actual}, instance has {expected} variables")]
    BoundLength { expected: usize, actual: usize },
}

/// An LP relaxation over a [`MoipInstance`].
#[derive(Debug, Clone)]
pub struct LpProblem<'a> {
    pub inst: &'a MoipInstance,
    /// Cost vector of length `n`.
    pub objective: Vec<Rat>,
    /// Upper caps on the objective rows; `PosInf` means absent.
    pub obj_caps: Vec<ExtInt>,
    /// Equality pins on the objective rows, used by lexicographic stages.
    pub obj_fixes: Vec<Option<i64>>,
    /// Per-variable lower bounds (defaults to zero).
    pub var_lower: Vec<i64>,
    /// Per-variable upper bounds (defaults to none).
    pub var_upper: Vec<ExtInt>,
}

impl<'a> LpProblem<'a> {
    pub fn new(inst: &'a MoipInstance, objective: Vec<Rat>) -> Self {
        LpProblem {
            inst,
            objective,
            obj_caps: vec![ExtInt::PosInf; inst.num_objectives()],
            obj_fixes: vec![None; inst.num_objectives()],
            var_lower: vec![0; inst.num_vars()],
            var_upper: vec![ExtInt::PosInf; inst.num_vars()],
        }
    }

    /// Cost vector taken from objective row `i` of the instance.
    pub fn minimising_row(inst: &'a MoipInstance, i: usize) -> Self {
        let objective = inst.objective_row(i).iter().map(|&c| rat(c)).collect();
        LpProblem::new(inst, objective)
    }

    pub fn with_caps(mut self, caps: Vec<ExtInt>) -> Self {
        self.obj_caps = caps;
        self
    }

    fn validate(&self) -> Result<(), LpError> {
        let n = self.inst.num_vars();
        let k = self.inst.num_objectives();
        if self.objective.len() != n {
            return Err(LpError::ObjectiveLength {
                expected: n,
                actual: self.objective.len(),
            });
        }
        if self.obj_caps.len() != k || self.obj_fixes.len() != k {
            return Err(LpError::CapLength {
                expected: k,
                actual: self.obj_caps.len().max(self.obj_fixes.len()),
            });
        }
        if self.var_lower.len() != n || self.var_upper.len() != n {
            return Err(LpError::BoundLength {
                expected: n,
                actual: self.var_lower.len().max(self.var_upper.len()),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpResult {
    Optimal { value: Rat, solution: Vec<Rat> },
    Infeasible,
    Unbounded,
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Returns the solution as an integer point when every component is exactly
/// integral, `None` otherwise (including non-optimal results).
pub fn is_integral(res: &LpResult) -> Option<Point> {
    match res {
        LpResult::Optimal { solution, .. } => {
            let mut coords = Vec::with_capacity(solution.len());
            for v in solution {
                if !v.is_integer() {
                    return None;
                }
                coords.push(v.to_integer().to_i64()?);
            }
            Point::new(coords).ok()
        }
        _ => None,
    }
}

/// Exact optimum of the relaxation.
pub fn solve_lp(prob: &LpProblem) -> Result<LpResult, LpError> {
    prob.validate()?;
    // Fast path in 128-bit rationals; arbitrary precision only when a
    // checked operation overflows.
    match Tableau::<Ratio<i128>>::build(prob).solve() {
        Ok(res) => Ok(res),
        Err(Overflow) => Ok(Tableau::<Rat>::build(prob)
            .solve()
            .expect("arbitrary precision does not overflow")),
    }
}

// Marker for a 128-bit arithmetic overflow; triggers the big-integer path.
#[derive(Debug)]
struct Overflow;

/// Exact rational scalar the simplex can run over.
trait Scalar: Sized + Clone + PartialEq + PartialOrd {
    fn from_i64(v: i64) -> Self;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn sub(&self, other: &Self) -> Result<Self, Overflow>;
    fn mul(&self, other: &Self) -> Result<Self, Overflow>;
    fn div(&self, other: &Self) -> Result<Self, Overflow>;
    fn neg(&self) -> Self;
    fn into_big(self) -> Rat;
    fn from_big(v: &Rat) -> Option<Self>;
}

impl Scalar for Ratio<i128> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
    fn zero() -> Self {
        <Ratio<i128> as Zero>::zero()
    }
    fn one() -> Self {
        <Ratio<i128> as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn sub(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_sub(other).ok_or(Overflow)
    }
    fn mul(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_mul(other).ok_or(Overflow)
    }
    fn div(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_div(other).ok_or(Overflow)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn into_big(self) -> Rat {
        Rat::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
    fn from_big(v: &Rat) -> Option<Self> {
        Some(Ratio::new(
            v.numer().to_i128()?,
            v.denom().to_i128()?,
        ))
    }
}

impl Scalar for Rat {
    fn from_i64(v: i64) -> Self {
        rat(v)
    }
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn sub(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self - other)
    }
    fn mul(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self * other)
    }
    fn div(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self / other)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn into_big(self) -> Rat {
        self
    }
    fn from_big(v: &Rat) -> Option<Self> {
        Some(v.clone())
    }
}

// One assembled constraint row awaiting tableau placement; `slack` holds
// the sign of the slack/surplus column, when the row has one.
struct RawRow {
    coeffs: Vec<(usize, i64)>,
    rhs: i64,
    slack: Option<i64>,
}

fn assemble_rows(prob: &LpProblem) -> Vec<RawRow> {
    let inst = prob.inst;
    let mut raw: Vec<RawRow> = Vec::new();
    for (row, &b) in inst.constraint_matrix().iter().zip(inst.rhs()) {
        raw.push(RawRow {
            coeffs: nonzero(row),
            rhs: b,
            slack: None,
        });
    }
    for (i, cap) in prob.obj_caps.iter().enumerate() {
        if let ExtInt::Finite(u) = cap {
            raw.push(RawRow {
                coeffs: nonzero(inst.objective_row(i)),
                rhs: *u,
                slack: Some(1),
            });
        }
    }
    for (i, fix) in prob.obj_fixes.iter().enumerate() {
        if let Some(v) = fix {
            raw.push(RawRow {
                coeffs: nonzero(inst.objective_row(i)),
                rhs: *v,
                slack: None,
            });
        }
    }
    for (j, &lo) in prob.var_lower.iter().enumerate() {
        if lo > 0 {
            raw.push(RawRow {
                coeffs: vec![(j, 1)],
                rhs: lo,
                slack: Some(-1),
            });
        }
    }
    for (j, up) in prob.var_upper.iter().enumerate() {
        if let ExtInt::Finite(u) = up {
            raw.push(RawRow {
                coeffs: vec![(j, 1)],
                rhs: *u,
                slack: Some(1),
            });
        }
    }
    raw
}

fn nonzero(row: &[i64]) -> Vec<(usize, i64)> {
    row.iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| (j, c))
        .collect()
}

struct Tableau<S> {
    rows: Vec<Vec<S>>,
    rhs: Vec<S>,
    // Phase-2 cost row (reduced costs), phase-1 cost row, and their
    // current objective offsets.
    cost: Vec<S>,
    cost_value: S,
    art_cost: Vec<S>,
    art_value: S,
    basis: Vec<usize>,
    cols: usize,
    n_structural: usize,
    first_artificial: usize,
    failed: bool,
}

enum PivotPick {
    Pivot(usize, usize),
    Optimal,
    Unbounded,
}

impl<S: Scalar> Tableau<S> {
    fn build(prob: &LpProblem) -> Tableau<S> {
        let n = prob.inst.num_vars();
        let raw = assemble_rows(prob);

        // Assign slack columns, then artificial columns for rows whose slack
        // cannot serve as the initial basis.
        let mut cols = n;
        let mut slack_cols: Vec<Option<(usize, i64)>> = Vec::with_capacity(raw.len());
        for row in &raw {
            match row.slack {
                Some(sign) => {
                    slack_cols.push(Some((cols, sign)));
                    cols += 1;
                }
                None => slack_cols.push(None),
            }
        }
        let first_artificial = cols;

        let m = raw.len();
        let mut rows: Vec<Vec<S>> = Vec::with_capacity(m);
        let mut rhs: Vec<S> = Vec::with_capacity(m);
        let mut basis: Vec<usize> = vec![usize::MAX; m];
        let mut artificial_rows: Vec<usize> = Vec::new();

        for (r, row) in raw.iter().enumerate() {
            let negate = row.rhs < 0;
            let sign: i64 = if negate { -1 } else { 1 };
            let mut dense = vec![S::zero(); cols];
            for &(j, c) in &row.coeffs {
                dense[j] = S::from_i64(c * sign);
            }
            if let Some((col, slack_sign)) = slack_cols[r] {
                dense[col] = S::from_i64(slack_sign * sign);
            }
            // The slack can start basic only when it enters with +1.
            let basic_slack = slack_cols[r]
                .filter(|&(_, s)| s * sign == 1)
                .map(|(col, _)| col);
            match basic_slack {
                Some(col) => basis[r] = col,
                None => artificial_rows.push(r),
            }
            rows.push(dense);
            rhs.push(S::from_i64(row.rhs * sign));
        }

        let total_cols = cols + artificial_rows.len();
        for row in rows.iter_mut() {
            row.resize(total_cols, S::zero());
        }
        for (idx, &r) in artificial_rows.iter().enumerate() {
            let col = cols + idx;
            rows[r][col] = S::one();
            basis[r] = col;
        }

        let mut cost = vec![S::zero(); total_cols];
        let mut failed = false;
        for (j, c) in prob.objective.iter().enumerate() {
            match S::from_big(c) {
                Some(v) => cost[j] = v,
                None => failed = true,
            }
        }
        let mut art_cost = vec![S::zero(); total_cols];
        for slot in art_cost.iter_mut().take(total_cols).skip(first_artificial) {
            *slot = S::one();
        }

        let mut t = Tableau {
            rows,
            rhs,
            cost,
            cost_value: S::zero(),
            art_cost,
            art_value: S::zero(),
            basis,
            cols: total_cols,
            n_structural: n,
            first_artificial,
            failed,
        };
        if t.reduce_cost_rows().is_err() {
            t.failed = true;
        }
        t
    }

    // Eliminates basic columns from the freshly built cost rows.
    fn reduce_cost_rows(&mut self) -> Result<(), Overflow> {
        for r in 0..self.rows.len() {
            let b = self.basis[r];
            for which in [false, true] {
                let factor = if which {
                    self.art_cost[b].clone()
                } else {
                    self.cost[b].clone()
                };
                if factor.is_zero() {
                    continue;
                }
                for c in 0..self.cols {
                    let v = self.rows[r][c].clone();
                    if v.is_zero() {
                        continue;
                    }
                    let delta = factor.mul(&v)?;
                    let cost = if which { &mut self.art_cost } else { &mut self.cost };
                    cost[c] = cost[c].sub(&delta)?;
                }
                let delta = factor.mul(&self.rhs[r])?;
                if which {
                    self.art_value = self.art_value.sub(&delta)?;
                } else {
                    self.cost_value = self.cost_value.sub(&delta)?;
                }
            }
        }
        Ok(())
    }

    fn solve(&mut self) -> Result<LpResult, Overflow> {
        if self.failed {
            return Err(Overflow);
        }
        if self.first_artificial < self.cols {
            if let PivotPick::Unbounded = self.simplex(true)? {
                unreachable!("phase 1 is bounded below by zero");
            }
            if !self.art_value.is_zero() {
                return Ok(LpResult::Infeasible);
            }
            self.evict_basic_artificials()?;
        }
        match self.simplex(false)? {
            PivotPick::Unbounded => Ok(LpResult::Unbounded),
            _ => {
                let mut solution = vec![<Rat as Zero>::zero(); self.n_structural];
                for (r, &b) in self.basis.iter().enumerate() {
                    if b < self.n_structural {
                        solution[b] = self.rhs[r].clone().into_big();
                    }
                }
                // cost_value tracks -z through the eliminations.
                Ok(LpResult::Optimal {
                    value: self.cost_value.neg().into_big(),
                    solution,
                })
            }
        }
    }

    // Simplex iteration for one phase. Returns Optimal or Unbounded.
    fn simplex(&mut self, phase1: bool) -> Result<PivotPick, Overflow> {
        // Consecutive degenerate pivots tolerated before falling back to
        // Bland's rule for the rest of the phase.
        const DEGENERATE_STREAK_LIMIT: u32 = 32;
        let mut streak = 0u32;
        let mut bland = false;
        loop {
            match self.pick_pivot(phase1, bland)? {
                PivotPick::Pivot(r, c) => {
                    if self.rhs[r].is_zero() {
                        streak += 1;
                        if streak >= DEGENERATE_STREAK_LIMIT {
                            bland = true;
                        }
                    } else {
                        streak = 0;
                    }
                    self.pivot(r, c)?;
                }
                done => return Ok(done),
            }
        }
    }

    fn pick_pivot(&self, phase1: bool, bland: bool) -> Result<PivotPick, Overflow> {
        let cost = if phase1 { &self.art_cost } else { &self.cost };
        // In phase 2 artificial columns are not eligible to re-enter.
        let limit = if phase1 { self.cols } else { self.first_artificial };
        let c = if bland {
            match (0..limit).find(|&c| cost[c].is_negative()) {
                Some(c) => c,
                None => return Ok(PivotPick::Optimal),
            }
        } else {
            let mut best: Option<usize> = None;
            for j in 0..limit {
                if cost[j].is_negative() && best.is_none_or(|b| cost[j] < cost[b]) {
                    best = Some(j);
                }
            }
            match best {
                Some(j) => j,
                None => return Ok(PivotPick::Optimal),
            }
        };
        let mut best: Option<(S, usize, usize)> = None;
        for r in 0..self.rows.len() {
            let a = &self.rows[r][c];
            if !a.is_positive() {
                continue;
            }
            let ratio = self.rhs[r].div(a)?;
            let replace = match &best {
                None => true,
                Some((best_ratio, best_basis, _)) => {
                    ratio < *best_ratio
                        || (ratio == *best_ratio && self.basis[r] < *best_basis)
                }
            };
            if replace {
                best = Some((ratio, self.basis[r], r));
            }
        }
        Ok(match best {
            Some((_, _, r)) => PivotPick::Pivot(r, c),
            None => PivotPick::Unbounded,
        })
    }

    fn pivot(&mut self, r: usize, c: usize) -> Result<(), Overflow> {
        // Normalise the pivot row.
        let pivot = self.rows[r][c].clone();
        if pivot != S::one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v = v.div(&pivot)?;
                }
            }
            self.rhs[r] = self.rhs[r].div(&pivot)?;
        }
        let nonzero_cols: Vec<usize> = self.rows[r]
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, _)| j)
            .collect();
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();

        for rr in 0..self.rows.len() {
            if rr == r {
                continue;
            }
            let factor = self.rows[rr][c].clone();
            if factor.is_zero() {
                continue;
            }
            let row = &mut self.rows[rr];
            for &j in &nonzero_cols {
                row[j] = row[j].sub(&factor.mul(&pivot_row[j])?)?;
            }
            row[c] = S::zero();
            self.rhs[rr] = self.rhs[rr].sub(&factor.mul(&pivot_rhs)?)?;
        }
        for which in [false, true] {
            let factor = if which {
                self.art_cost[c].clone()
            } else {
                self.cost[c].clone()
            };
            if factor.is_zero() {
                continue;
            }
            let cost = if which { &mut self.art_cost } else { &mut self.cost };
            for &j in &nonzero_cols {
                cost[j] = cost[j].sub(&factor.mul(&pivot_row[j])?)?;
            }
            cost[c] = S::zero();
            let delta = factor.mul(&pivot_rhs)?;
            if which {
                self.art_value = self.art_value.sub(&delta)?;
            } else {
                self.cost_value = self.cost_value.sub(&delta)?;
            }
        }
        self.basis[r] = c;
        Ok(())
    }

    // After phase 1, pivot zero-level artificials out of the basis where a
    // real column is available; rows with no such column are redundant and
    // get zeroed.
    fn evict_basic_artificials(&mut self) -> Result<(), Overflow> {
        for r in 0..self.rows.len() {
            if self.basis[r] < self.first_artificial {
                continue;
            }
            debug_assert!(self.rhs[r].is_zero());
            let col = (0..self.first_artificial).find(|&j| !self.rows[r][j].is_zero());
            match col {
                Some(c) => self.pivot(r, c)?,
                None => {
                    for v in self.rows[r].iter_mut() {
                        *v = S::zero();
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::MoipInstance;

    fn opt_value(res: &LpResult) -> Rat {
        match res {
            LpResult::Optimal { value, .. } => value.clone(),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    // min x1 + x2  s.t.  x1 + 2 x2 = 4
    #[test]
    fn single_equality_row() {
        let inst = MoipInstance::new(vec![vec![1, 2]], vec![4], vec![vec![1, 1]]).unwrap();
        let res = solve_lp(&LpProblem::minimising_row(&inst, 0)).unwrap();
        assert_eq!(opt_value(&res), rat(2)); // x2 = 2
    }

    #[test]
    fn contradictory_rows_are_infeasible() {
        let inst =
            MoipInstance::new(vec![vec![1], vec![1]], vec![1, 2], vec![vec![1]]).unwrap();
        let res = solve_lp(&LpProblem::minimising_row(&inst, 0)).unwrap();
        assert_eq!(res, LpResult::Infeasible);
    }

    #[test]
    fn maximisation_is_unbounded_without_rows() {
        // min -x1, x1 >= 0, no constraints.
        let inst = MoipInstance::new(vec![], vec![], vec![vec![1]]).unwrap();
        let prob = LpProblem::new(&inst, vec![rat(-1)]);
        assert_eq!(solve_lp(&prob).unwrap(), LpResult::Unbounded);
    }

    #[test]
    fn objective_caps_bind() {
        // min -x1 s.t. x1 <= 5 expressed as a cap on objective row f1 = x1.
        let inst = MoipInstance::new(vec![], vec![], vec![vec![1]]).unwrap();
        let prob = LpProblem::new(&inst, vec![rat(-1)])
            .with_caps(vec![ExtInt::Finite(5)]);
        assert_eq!(opt_value(&solve_lp(&prob).unwrap()), rat(-5));
    }

    #[test]
    fn fractional_vertices_are_detected() {
        // min x1 + x2 s.t. 2 x1 + 2 x2 = 1 has optimum 1/2 on a fractional
        // vertex.
        let inst = MoipInstance::new(vec![vec![2, 2]], vec![1], vec![vec![1, 1]]).unwrap();
        let res = solve_lp(&LpProblem::minimising_row(&inst, 0)).unwrap();
        assert_eq!(opt_value(&res), Rat::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(is_integral(&res), None);
    }

    #[test]
    fn integral_vertices_are_detected() {
        let inst = MoipInstance::new(vec![vec![1, 1]], vec![3], vec![vec![1, 2]]).unwrap();
        let res = solve_lp(&LpProblem::minimising_row(&inst, 0)).unwrap();
        let p = is_integral(&res).expect("vertex is integral");
        assert_eq!(p.coords(), &[3, 0]);
    }

    #[test]
    fn resolving_is_deterministic() {
        let inst = MoipInstance::new(
            vec![vec![1, 1, 1], vec![2, 1, 0]],
            vec![6, 5],
            vec![vec![1, 4, 2]],
        )
        .unwrap();
        let prob = LpProblem::minimising_row(&inst, 0);
        let a = solve_lp(&prob).unwrap();
        let b = solve_lp(&prob).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn weak_duality_against_feasible_point() {
        // x1 + x2 = 4 with integer point (1, 3): LP min of f1 must not
        // exceed f1(1, 3).
        let inst =
            MoipInstance::new(vec![vec![1, 1]], vec![4], vec![vec![3, 1]]).unwrap();
        let res = solve_lp(&LpProblem::minimising_row(&inst, 0)).unwrap();
        assert!(opt_value(&res) <= rat(3 + 3));
    }

    #[test]
    fn var_bounds_enter_as_rows() {
        // min -x1 with x1 <= 7 via var_upper.
        let inst = MoipInstance::new(vec![], vec![], vec![vec![1]]).unwrap();
        let mut prob = LpProblem::new(&inst, vec![rat(-1)]);
        prob.var_upper[0] = ExtInt::Finite(7);
        assert_eq!(opt_value(&solve_lp(&prob).unwrap()), rat(-7));
        // and x1 >= 3 via var_lower, minimising +x1.
        let mut prob = LpProblem::new(&inst, vec![rat(1)]);
        prob.var_lower[0] = 3;
        assert_eq!(opt_value(&solve_lp(&prob).unwrap()), rat(3));
    }

    #[test]
    fn huge_objective_coefficients_fall_back_to_big_arithmetic() {
        // A cost outside the 128-bit range cannot enter the fast path; the
        // arbitrary-precision fallback must still give the exact optimum.
        let inst = MoipInstance::new(vec![vec![1, 1]], vec![3], vec![vec![1, 1]]).unwrap();
        let mut prob = LpProblem::minimising_row(&inst, 0);
        prob.objective = vec![
            Rat::from_integer(BigInt::from(2).pow(200)),
            rat(1),
        ];
        assert_eq!(opt_value(&solve_lp(&prob).unwrap()), rat(3));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            // Tightening a cap never decreases the optimum.
            #[test]
            fn caps_monotone(
                b in 1i64..8,
                c1 in 1i64..6,
                c2 in 1i64..6,
                cap in 0i64..10,
            ) {
                let inst = MoipInstance::new(
                    vec![vec![1, 1]],
                    vec![b],
                    vec![vec![c1, c2], vec![1, 0]],
                ).unwrap();
                let free = LpProblem::minimising_row(&inst, 0);
                let capped = LpProblem::minimising_row(&inst, 0)
                    .with_caps(vec![ExtInt::PosInf, ExtInt::Finite(cap)]);
                let v_free = solve_lp(&free).unwrap();
                let v_capped = solve_lp(&capped).unwrap();
                if let (LpResult::Optimal { value: a, .. }, LpResult::Optimal { value: b, .. })
                    = (&v_free, &v_capped) {
                    prop_assert!(a <= b);
                }
            }
        }
    }
}
