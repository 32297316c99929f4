//! Problem instances, objective vectors, dominance, and solver bound state.
//!
//! All objective arithmetic is exact: objective values are 64-bit integers
//! computed through 128-bit intermediates with explicit overflow detection,
//! and bounds live in an extended-integer domain with `-inf`/`+inf`
//! sentinels rather than floating-point infinities.

use std::fmt;

use thiserror::Error;

use crate::utility::UtilityValue;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("dimension mismatch in {what}: expected {expected}, got {actual}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("instance must have at least one variable and one objective")]
    EmptyInstance,
    #[error("point has a negative component at index {0}")]
    NegativeComponent(usize),
    #[error("integer overflow while evaluating objective {0}")]
    Overflow(usize),
}

/// An integer extended with `-inf` and `+inf` sentinels.
///
/// The derived ordering is the natural one: `NegInf < Finite(_) < PosInf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Finite(i64),
    PosInf,
}

impl ExtInt {
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Finite(_))
    }

    /// The next smaller extended integer; infinities are fixed points.
    pub fn pred(self) -> ExtInt {
        match self {
            ExtInt::Finite(v) => ExtInt::Finite(v - 1),
            other => other,
        }
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Finite(v)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::Finite(v) => write!(f, "{v}"),
            ExtInt::PosInf => write!(f, "inf"),
        }
    }
}

/// A nonnegative integer point in variable space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point(Vec<i64>);

impl Point {
    pub fn new(coords: Vec<i64>) -> Result<Self, ModelError> {
        if let Some(idx) = coords.iter().position(|&v| v < 0) {
            return Err(ModelError::NegativeComponent(idx));
        }
        Ok(Point(coords))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The image of a point in objective space: one exact integer per objective.
///
/// Equality and hashing are componentwise, so nondominated sets deduplicate
/// vectors even when they come from distinct efficient points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectiveVector(Vec<i64>);

impl ObjectiveVector {
    pub fn new(values: Vec<i64>) -> Self {
        ObjectiveVector(values)
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Componentwise `<=` with at least one strict `<`, in minimisation
    /// sense. Panics if the vectors have different lengths.
    pub fn dominates(&self, other: &ObjectiveVector) -> bool {
        assert_eq!(
            self.0.len(),
            other.0.len(),
            "dominance requires equal objective counts"
        );
        let mut strict = false;
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a > b {
                return false;
            }
            if a < b {
                strict = true;
            }
        }
        strict
    }
}

impl fmt::Display for ObjectiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Removes duplicates and dominated vectors. The result is sorted, so it is
/// independent of input order.
pub fn filter_nondominated(set: &[ObjectiveVector]) -> Vec<ObjectiveVector> {
    let mut unique: Vec<ObjectiveVector> = set.to_vec();
    unique.sort();
    unique.dedup();
    let mut kept: Vec<ObjectiveVector> = Vec::new();
    for v in &unique {
        if !unique.iter().any(|u| u.dominates(v)) {
            kept.push(v.clone());
        }
    }
    kept
}

/// A multi-objective integer program: minimise the rows of `C` over
/// `{ x : Ax = b, x >= 0, x integer }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoipInstance {
    n: usize,
    m: usize,
    k: usize,
    a: Vec<Vec<i64>>,
    b: Vec<i64>,
    c: Vec<Vec<i64>>,
}

impl MoipInstance {
    pub fn new(
        a: Vec<Vec<i64>>,
        b: Vec<i64>,
        c: Vec<Vec<i64>>,
    ) -> Result<Self, ModelError> {
        let k = c.len();
        if k == 0 {
            return Err(ModelError::EmptyInstance);
        }
        let n = c[0].len();
        if n == 0 {
            return Err(ModelError::EmptyInstance);
        }
        let m = a.len();
        for row in &c {
            if row.len() != n {
                return Err(ModelError::DimensionMismatch {
                    what: "objective row",
                    expected: n,
                    actual: row.len(),
                });
            }
        }
        for row in &a {
            if row.len() != n {
                return Err(ModelError::DimensionMismatch {
                    what: "constraint row",
                    expected: n,
                    actual: row.len(),
                });
            }
        }
        if b.len() != m {
            return Err(ModelError::DimensionMismatch {
                what: "right-hand side",
                expected: m,
                actual: b.len(),
            });
        }
        Ok(MoipInstance { n, m, k, a, b, c })
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn num_constraints(&self) -> usize {
        self.m
    }

    pub fn num_objectives(&self) -> usize {
        self.k
    }

    pub fn constraint_matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn rhs(&self) -> &[i64] {
        &self.b
    }

    pub fn objective_rows(&self) -> &[Vec<i64>] {
        &self.c
    }

    pub fn objective_row(&self, i: usize) -> &[i64] {
        &self.c[i]
    }

    /// Exact objective values `C x` of a point.
    pub fn evaluate_objectives(&self, p: &Point) -> Result<ObjectiveVector, ModelError> {
        if p.len() != self.n {
            return Err(ModelError::DimensionMismatch {
                what: "point",
                expected: self.n,
                actual: p.len(),
            });
        }
        let mut values = Vec::with_capacity(self.k);
        for (i, row) in self.c.iter().enumerate() {
            let mut acc: i128 = 0;
            for (&coef, &x) in row.iter().zip(p.coords()) {
                acc += coef as i128 * x as i128;
            }
            let v = i64::try_from(acc).map_err(|_| ModelError::Overflow(i))?;
            values.push(v);
        }
        Ok(ObjectiveVector::new(values))
    }
}

/// The solver's shrinking search region: per-objective bounds, the best
/// utility found so far, and the point attaining it.
///
/// Lower bounds only ever increase, upper bounds only ever decrease, and a
/// finite `g_best` is always attained by `incumbent`.
#[derive(Debug, Clone)]
pub struct BoundsState {
    pub lb: Vec<ExtInt>,
    pub ub: Vec<ExtInt>,
    pub g_best: UtilityValue,
    pub incumbent: Option<Point>,
}

impl BoundsState {
    pub fn new(k: usize) -> Self {
        BoundsState {
            lb: vec![ExtInt::NegInf; k],
            ub: vec![ExtInt::PosInf; k],
            g_best: UtilityValue::PosInf,
            incumbent: None,
        }
    }

    /// Raises `lb[i]` to `value` if that is an increase; returns whether it was.
    pub fn raise_lb(&mut self, i: usize, value: ExtInt) -> bool {
        if value > self.lb[i] {
            self.lb[i] = value;
            true
        } else {
            false
        }
    }

    /// Lowers `ub[i]` to `value` if that is a decrease; returns whether it was.
    pub fn lower_ub(&mut self, i: usize, value: ExtInt) -> bool {
        if value < self.ub[i] {
            self.ub[i] = value;
            true
        } else {
            false
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ov(values: &[i64]) -> ObjectiveVector {
        ObjectiveVector::new(values.to_vec())
    }

    fn tiny_instance() -> MoipInstance {
        // one variable, one objective with coefficient 7, no constraints
        MoipInstance::new(vec![], vec![], vec![vec![7]]).unwrap()
    }

    #[test]
    fn scalar_dot_product() {
        let inst = tiny_instance();
        let p = Point::new(vec![3]).unwrap();
        assert_eq!(inst.evaluate_objectives(&p).unwrap(), ov(&[21]));
    }

    #[test]
    fn zero_point_maps_to_zero() {
        let inst = MoipInstance::new(vec![], vec![], vec![vec![3, -2], vec![5, 9]]).unwrap();
        let p = Point::new(vec![0, 0]).unwrap();
        assert_eq!(inst.evaluate_objectives(&p).unwrap(), ov(&[0, 0]));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let inst = tiny_instance();
        let p = Point::new(vec![1, 2]).unwrap();
        assert!(matches!(
            inst.evaluate_objectives(&p),
            Err(ModelError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn overflow_is_detected() {
        let inst = MoipInstance::new(vec![], vec![], vec![vec![i64::MAX]]).unwrap();
        let p = Point::new(vec![2]).unwrap();
        assert_eq!(
            inst.evaluate_objectives(&p),
            Err(ModelError::Overflow(0))
        );
    }

    #[test]
    fn negative_points_are_rejected() {
        assert_eq!(
            Point::new(vec![1, -1]),
            Err(ModelError::NegativeComponent(1))
        );
    }

    #[test]
    fn dominance_is_irreflexive() {
        let a = ov(&[86, 214, 324]);
        assert!(!a.dominates(&a));
    }

    #[test]
    fn dominance_needs_one_strict_improvement() {
        assert!(ov(&[96, 186, 204]).dominates(&ov(&[97, 186, 204])));
        assert!(!ov(&[97, 186, 204]).dominates(&ov(&[96, 186, 204])));
    }

    #[test]
    fn incomparable_vectors_do_not_dominate() {
        let a = ov(&[86, 214, 324]);
        let b = ov(&[96, 186, 204]);
        assert!(!a.dominates(&b));
        assert!(!b.dominates(&a));
    }

    #[test]
    fn filter_drops_dominated_and_duplicates() {
        let set = vec![ov(&[1, 2]), ov(&[2, 1]), ov(&[2, 2]), ov(&[1, 2])];
        assert_eq!(filter_nondominated(&set), vec![ov(&[1, 2]), ov(&[2, 1])]);
    }

    #[test]
    fn filter_of_empty_set_is_empty() {
        assert!(filter_nondominated(&[]).is_empty());
    }

    #[test]
    fn ext_int_ordering() {
        assert!(ExtInt::NegInf < ExtInt::Finite(i64::MIN));
        assert!(ExtInt::Finite(i64::MAX) < ExtInt::PosInf);
        assert!(ExtInt::Finite(-3) < ExtInt::Finite(2));
    }

    #[test]
    fn domain_types_cross_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<ExtInt>();
        assert_send_sync::<Point>();
        assert_send_sync::<ObjectiveVector>();
        assert_send_sync::<MoipInstance>();
        assert_send_sync::<BoundsState>();
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn vec_strategy() -> impl Strategy<Value = Vec<i64>> {
            proptest::collection::vec(-20i64..20, 3)
        }

        proptest! {
            #[test]
            fn dominance_is_antisymmetric(a in vec_strategy(), b in vec_strategy()) {
                let a = ObjectiveVector::new(a);
                let b = ObjectiveVector::new(b);
                prop_assert!(!(a.dominates(&b) && b.dominates(&a)));
            }

            #[test]
            fn dominance_is_transitive(
                a in vec_strategy(),
                b in vec_strategy(),
                c in vec_strategy(),
            ) {
                let a = ObjectiveVector::new(a);
                let b = ObjectiveVector::new(b);
                let c = ObjectiveVector::new(c);
                if a.dominates(&b) && b.dominates(&c) {
                    prop_assert!(a.dominates(&c));
                }
            }

            #[test]
            fn filter_is_idempotent_and_incomparable(
                set in proptest::collection::vec(vec_strategy(), 0..24)
            ) {
                let set: Vec<ObjectiveVector> =
                    set.into_iter().map(ObjectiveVector::new).collect();
                let once = filter_nondominated(&set);
                let twice = filter_nondominated(&once);
                prop_assert_eq!(&once, &twice);
                for v in &once {
                    for u in &once {
                        prop_assert!(!u.dominates(v));
                    }
                }
            }

            #[test]
            fn objective_evaluation_is_linear(
                p in proptest::collection::vec(0i64..50, 4),
                q in proptest::collection::vec(0i64..50, 4),
            ) {
                let inst = MoipInstance::new(
                    vec![],
                    vec![],
                    vec![vec![3, -1, 4, 2], vec![0, 5, -2, 7]],
                ).unwrap();
                let sum: Vec<i64> =
                    p.iter().zip(q.iter()).map(|(a, b)| a + b).collect();
                let fp = inst.evaluate_objectives(&Point::new(p).unwrap()).unwrap();
                let fq = inst.evaluate_objectives(&Point::new(q).unwrap()).unwrap();
                let fs = inst.evaluate_objectives(&Point::new(sum).unwrap()).unwrap();
                let added: Vec<i64> = fp
                    .values()
                    .iter()
                    .zip(fq.values())
                    .map(|(a, b)| a + b)
                    .collect();
                prop_assert_eq!(fs, ObjectiveVector::new(added));
            }
        }
    }
}
