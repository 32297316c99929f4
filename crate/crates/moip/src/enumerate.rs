//! Recursive generation of all nondominated objective vectors of a
//! q-objective subproblem under objective caps, streaming each vector to a
//! consumer that may abort the enumeration.
//!
//! The base case (one active objective) is a single lexicographic solve:
//! the active objective first, then the remaining requested objectives in
//! order, then the inactive objectives, so every solve yields a full
//! k-objective nondominated vector. The recursive case enumerates the
//! subproblem on the first `q - 1` actives, tightens the cap on the q-th
//! active to one below the largest value generated, and repeats until the
//! capped region empties. Duplicates arising from alternate optima are
//! suppressed at emission through a seen-set on the full vector.

use std::collections::BTreeSet;

use crate::ip::{solve_lexicographic, IpError, LexOutcome, SolveCounter};
use crate::model::{filter_nondominated, ExtInt, MoipInstance, ObjectiveVector, Point};

/// Consumer verdict for a freshly generated nondominated vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flow {
    Continue,
    Abort,
}

/// One lexicographic solve performed by the enumerator; `outcome` is `None`
/// when the capped region was empty. `fresh` marks the first time a vector
/// is generated; repeats from alternate optima are not re-emitted.
#[derive(Debug, Clone)]
pub struct LexRecord {
    pub ip_index: u64,
    pub outcome: Option<(ObjectiveVector, Point)>,
    pub fresh: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumStatus {
    Complete,
    Aborted,
    Infeasible,
}

#[derive(Debug, Clone)]
pub struct EnumerationOutcome {
    pub status: EnumStatus,
    /// Distinct vectors emitted so far; on `Complete` this is exactly the
    /// nondominated set of the capped subproblem.
    pub vectors: Vec<ObjectiveVector>,
    /// IP solves consumed by this enumeration.
    pub ip_solves: u64,
}

/// A request to enumerate the nondominated vectors of the subproblem with
/// the given active objectives (zero-based, ordered) under objective caps.
pub struct EnumerationRequest<'a, C> {
    pub inst: &'a MoipInstance,
    pub active: Vec<usize>,
    pub obj_caps: Vec<ExtInt>,
    pub consumer: C,
}

/// Enumerates nondominated vectors, streaming each to the request's
/// consumer as it is generated.
pub fn enumerate_nondominated<C>(
    req: EnumerationRequest<'_, C>,
    counter: &mut SolveCounter,
) -> Result<EnumerationOutcome, IpError>
where
    C: FnMut(&ObjectiveVector, &Point) -> Flow,
{
    let EnumerationRequest {
        inst,
        active,
        obj_caps,
        mut consumer,
    } = req;
    enumerate_inner(
        inst,
        &active,
        obj_caps,
        counter,
        &mut |record| match &record.outcome {
            Some((vector, point)) if record.fresh => consumer(vector, point),
            _ => Flow::Continue,
        },
        &mut |_| true,
    )
}

/// Enumerates with a raw hook that sees every lexicographic solve,
/// including infeasible ones, plus a guard consulted with the current IP
/// count immediately before each solve; a `false` guard aborts without
/// consuming the solve. Used by the solver driver for trace capture and
/// budget enforcement.
pub fn enumerate_with_hook(
    inst: &MoipInstance,
    active: &[usize],
    obj_caps: Vec<ExtInt>,
    counter: &mut SolveCounter,
    hook: &mut dyn FnMut(&LexRecord) -> Flow,
    guard: &mut dyn FnMut(u64) -> bool,
) -> Result<EnumerationOutcome, IpError> {
    enumerate_inner(inst, active, obj_caps, counter, hook, guard)
}

/// The naive baseline: the whole nondominated frontier, all objectives
/// active, no caps.
pub fn enumerate_full_frontier(
    inst: &MoipInstance,
    counter: &mut SolveCounter,
) -> Result<EnumerationOutcome, IpError> {
    let k = inst.num_objectives();
    let req = EnumerationRequest {
        inst,
        active: (0..k).collect(),
        obj_caps: vec![ExtInt::PosInf; k],
        consumer: |_: &ObjectiveVector, _: &Point| Flow::Continue,
    };
    enumerate_nondominated(req, counter)
}

struct Enumerator<'a, 'h> {
    inst: &'a MoipInstance,
    active: &'a [usize],
    caps: Vec<ExtInt>,
    base_priority: Vec<usize>,
    seen: BTreeSet<ObjectiveVector>,
    emitted: Vec<ObjectiveVector>,
    counter: &'a mut SolveCounter,
    hook: &'h mut dyn FnMut(&LexRecord) -> Flow,
    guard: &'h mut dyn FnMut(u64) -> bool,
}

enum Sweep {
    // Vectors generated by this sub-enumeration (complete, with duplicates
    // of earlier sweeps retained for the cap computation).
    Done(Vec<ObjectiveVector>),
    Infeasible,
    Aborted,
}

fn enumerate_inner(
    inst: &MoipInstance,
    active: &[usize],
    obj_caps: Vec<ExtInt>,
    counter: &mut SolveCounter,
    hook: &mut dyn FnMut(&LexRecord) -> Flow,
    guard: &mut dyn FnMut(u64) -> bool,
) -> Result<EnumerationOutcome, IpError> {
    let k = inst.num_objectives();
    let mut seen_idx = vec![false; k];
    if active.is_empty() {
        return Err(IpError::BadPriority { k });
    }
    for &i in active {
        if i >= k || seen_idx[i] {
            return Err(IpError::BadPriority { k });
        }
        seen_idx[i] = true;
    }
    if obj_caps.len() != k {
        return Err(IpError::Lp(crate::lp::LpError::CapLength {
            expected: k,
            actual: obj_caps.len(),
        }));
    }

    // Base lexicographic order: requested actives first, inactives after.
    let mut base_priority = active.to_vec();
    base_priority.extend((0..k).filter(|&i| !seen_idx[i]));

    let start = counter.count();
    let mut state = Enumerator {
        inst,
        active,
        caps: obj_caps,
        base_priority,
        seen: BTreeSet::new(),
        emitted: Vec::new(),
        counter,
        hook,
        guard,
    };
    let sweep = state.sweep(active.len())?;
    let status = match sweep {
        Sweep::Done(_) => EnumStatus::Complete,
        Sweep::Infeasible => EnumStatus::Infeasible,
        Sweep::Aborted => EnumStatus::Aborted,
    };
    let vectors = if status == EnumStatus::Complete {
        filter_nondominated(&state.emitted)
    } else {
        state.emitted
    };
    let ip_solves = state.counter.count() - start;
    Ok(EnumerationOutcome {
        status,
        vectors,
        ip_solves,
    })
}

impl Enumerator<'_, '_> {
    fn sweep(&mut self, q: usize) -> Result<Sweep, IpError> {
        if q == 1 {
            return self.base_solve();
        }
        let pivot = self.active[q - 1];
        let saved_cap = self.caps[pivot];
        let mut generated: Vec<ObjectiveVector> = Vec::new();
        let result = loop {
            match self.sweep(q - 1)? {
                Sweep::Aborted => break Sweep::Aborted,
                Sweep::Infeasible => {
                    if generated.is_empty() {
                        break Sweep::Infeasible;
                    }
                    break Sweep::Done(generated);
                }
                Sweep::Done(batch) => {
                    let max_pivot = batch
                        .iter()
                        .map(|v| v.values()[pivot])
                        .max()
                        .expect("completed sweeps are nonempty");
                    generated.extend(batch);
                    self.caps[pivot] = ExtInt::Finite(max_pivot - 1);
                }
            }
        };
        self.caps[pivot] = saved_cap;
        Ok(result)
    }

    fn base_solve(&mut self) -> Result<Sweep, IpError> {
        if !(self.guard)(self.counter.count()) {
            return Ok(Sweep::Aborted);
        }
        let outcome = solve_lexicographic(
            self.inst,
            &self.base_priority,
            &self.caps,
            self.counter,
        )?;
        match outcome {
            LexOutcome::Infeasible => {
                let record = LexRecord {
                    ip_index: self.counter.count(),
                    outcome: None,
                    fresh: false,
                };
                match (self.hook)(&record) {
                    Flow::Abort => Ok(Sweep::Aborted),
                    Flow::Continue => Ok(Sweep::Infeasible),
                }
            }
            LexOutcome::Optimal { point, objectives } => {
                let fresh = self.seen.insert(objectives.clone());
                if fresh {
                    self.emitted.push(objectives.clone());
                }
                let record = LexRecord {
                    ip_index: self.counter.count(),
                    outcome: Some((objectives.clone(), point)),
                    fresh,
                };
                match (self.hook)(&record) {
                    Flow::Abort => Ok(Sweep::Aborted),
                    Flow::Continue => Ok(Sweep::Done(vec![objectives])),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::MoipInstance;

    fn assignment_2x2(c1: [[i64; 2]; 2], c2: [[i64; 2]; 2]) -> MoipInstance {
        let vars = 8;
        let mut a = Vec::new();
        let mut b = Vec::new();
        for r in 0..2 {
            let mut row = vec![0i64; vars];
            for c in 0..2 {
                row[r * 2 + c] = 1;
            }
            a.push(row);
            b.push(1);
        }
        for c in 0..2 {
            let mut row = vec![0i64; vars];
            for r in 0..2 {
                row[r * 2 + c] = 1;
            }
            a.push(row);
            b.push(1);
        }
        for j in 0..4 {
            let mut row = vec![0i64; vars];
            row[j] = 1;
            row[4 + j] = 1;
            a.push(row);
            b.push(1);
        }
        let mut obj1 = vec![0i64; vars];
        let mut obj2 = vec![0i64; vars];
        for r in 0..2 {
            for c in 0..2 {
                obj1[r * 2 + c] = c1[r][c];
                obj2[r * 2 + c] = c2[r][c];
            }
        }
        MoipInstance::new(a, b, vec![obj1, obj2]).unwrap()
    }

    fn ov(values: &[i64]) -> ObjectiveVector {
        ObjectiveVector::new(values.to_vec())
    }

    #[test]
    fn single_active_objective_is_one_lex_solve() {
        let inst = assignment_2x2([[1, 2], [2, 1]], [[2, 1], [1, 2]]);
        let mut counter = SolveCounter::new();
        let req = EnumerationRequest {
            inst: &inst,
            active: vec![0],
            obj_caps: vec![ExtInt::PosInf; 2],
            consumer: |_: &ObjectiveVector, _: &Point| Flow::Continue,
        };
        let out = enumerate_nondominated(req, &mut counter).unwrap();
        assert_eq!(out.status, EnumStatus::Complete);
        assert_eq!(out.vectors, vec![ov(&[2, 4])]);
        assert_eq!(out.ip_solves, 1);
    }

    #[test]
    fn full_frontier_of_2x2() {
        let inst = assignment_2x2([[1, 2], [2, 1]], [[2, 1], [1, 2]]);
        let mut counter = SolveCounter::new();
        let out = enumerate_full_frontier(&inst, &mut counter).unwrap();
        assert_eq!(out.status, EnumStatus::Complete);
        assert_eq!(out.vectors, vec![ov(&[2, 4]), ov(&[4, 2])]);
    }

    #[test]
    fn infeasible_instance_reports_infeasible() {
        // x1 = 1 and x1 = 2 cannot both hold.
        let inst = MoipInstance::new(
            vec![vec![1], vec![1]],
            vec![1, 2],
            vec![vec![1], vec![2]],
        )
        .unwrap();
        let mut counter = SolveCounter::new();
        let out = enumerate_full_frontier(&inst, &mut counter).unwrap();
        assert_eq!(out.status, EnumStatus::Infeasible);
        assert!(out.vectors.is_empty());
    }

    #[test]
    fn single_objective_frontier_is_the_minimum() {
        let inst = MoipInstance::new(vec![vec![1, 1]], vec![3], vec![vec![2, 5]]).unwrap();
        let mut counter = SolveCounter::new();
        let out = enumerate_full_frontier(&inst, &mut counter).unwrap();
        assert_eq!(out.status, EnumStatus::Complete);
        assert_eq!(out.vectors, vec![ov(&[6])]);
    }

    #[test]
    fn emitted_vectors_respect_caps_and_are_incomparable() {
        let inst = assignment_2x2([[9, 2], [2, 9]], [[1, 8], [8, 1]]);
        let mut counter = SolveCounter::new();
        let caps = vec![ExtInt::Finite(11), ExtInt::Finite(9)];
        let req = EnumerationRequest {
            inst: &inst,
            active: vec![0, 1],
            obj_caps: caps.clone(),
            consumer: |_: &ObjectiveVector, _: &Point| Flow::Continue,
        };
        let out = enumerate_nondominated(req, &mut counter).unwrap();
        for v in &out.vectors {
            for (value, cap) in v.values().iter().zip(&caps) {
                assert!(ExtInt::Finite(*value) <= *cap);
            }
            for u in &out.vectors {
                assert!(!u.dominates(v));
            }
        }
    }

    #[test]
    fn abort_stops_the_enumeration() {
        let inst = assignment_2x2([[1, 2], [2, 1]], [[2, 1], [1, 2]]);
        let mut counter = SolveCounter::new();
        let mut seen = 0;
        let req = EnumerationRequest {
            inst: &inst,
            active: vec![0, 1],
            obj_caps: vec![ExtInt::PosInf; 2],
            consumer: |_: &ObjectiveVector, _: &Point| {
                seen += 1;
                Flow::Abort
            },
        };
        let out = enumerate_nondominated(req, &mut counter).unwrap();
        assert_eq!(out.status, EnumStatus::Aborted);
        assert_eq!(seen, 1);
        assert_eq!(out.ip_solves, 1);
    }
}
