//! The solver's audit trace: one event per solver call or bound-update
//! pass, exportable as a tab-separated table.
//!
//! Column set: step, #IP, action, one value column per objective, the best
//! utility, one lower-bound column per objective, the utility at the lower
//! bounds, and one upper-bound column per objective. An empty cell means
//! the value has not changed since the previous row; the final row prints
//! the complete state.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::Signed;

use crate::model::{ExtInt, ObjectiveVector};
use crate::utility::UtilityValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepId {
    Step0,
    Step1,
    Step2,
    Step3,
}

impl StepId {
    fn label(self) -> &'static str {
        match self {
            StepId::Step0 => "0",
            StepId::Step1 => "1",
            StepId::Step2 => "2",
            StepId::Step3 => "3",
        }
    }
}

/// Per-row solver output in the value columns.
#[derive(Debug, Clone, PartialEq)]
pub enum RowValues {
    /// No solver call on this row (bound-inversion rows).
    None,
    /// Integer objective vector from an IP solve.
    Objectives(ObjectiveVector),
    /// Optimal LP values per objective; unsolved slots stay empty.
    LpValues(Vec<Option<BigRational>>),
    /// The solve proved the capped region empty.
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceEvent {
    pub step: StepId,
    /// Running IP counter, present on rows that consumed an IP solve.
    pub ip: Option<u64>,
    pub action: String,
    pub values: RowValues,
    pub g_best: UtilityValue,
    pub lb: Vec<ExtInt>,
    pub ub: Vec<ExtInt>,
    pub g_lb: UtilityValue,
    /// Objectives of the incumbent attaining `g_best`, for invariant checks;
    /// not a table column.
    pub incumbent_objectives: Option<ObjectiveVector>,
}

/// Renders a rational for the table: integers plain, fractions rounded to
/// one decimal place the way the human-readable reports print them.
pub fn rational_cell(value: &BigRational) -> String {
    if value.is_integer() {
        return value.numer().to_string();
    }
    let tenths = (value * BigRational::from_integer(10.into())).round();
    let negative = tenths.is_negative();
    let tenths = tenths.numer().abs();
    let whole = &tenths / 10;
    let frac = &tenths % 10;
    format!("{}{}.{}", if negative { "-" } else { "" }, whole, frac)
}

fn utility_cell(value: &UtilityValue) -> String {
    match value {
        UtilityValue::Exact(r) => rational_cell(r),
        other => other.to_string(),
    }
}

/// Serialises the trace as TSV with change-masked cells.
pub fn render_trace_tsv(events: &[TraceEvent], k: usize) -> String {
    let mut out = String::new();
    out.push_str("step\tip\taction");
    for i in 1..=k {
        let _ = write!(out, "\tf{i}");
    }
    out.push_str("\tg_best");
    for i in 1..=k {
        let _ = write!(out, "\tf{i}_lb");
    }
    out.push_str("\tg_lb");
    for i in 1..=k {
        let _ = write!(out, "\tf{i}_ub");
    }
    out.push('\n');

    // Last printed value per masked column: g_best, lb[..], g_lb, ub[..].
    let mut last: Vec<Option<String>> = vec![None; 2 * k + 2];
    for (idx, event) in events.iter().enumerate() {
        let terminal = idx + 1 == events.len();
        let mut cells: Vec<String> = Vec::with_capacity(3 * k + 5);
        cells.push(event.step.label().to_string());
        cells.push(event.ip.map(|v| v.to_string()).unwrap_or_default());
        cells.push(event.action.clone());
        match &event.values {
            RowValues::None => cells.extend(std::iter::repeat_n(String::new(), k)),
            RowValues::Infeasible => {
                cells.push("inf.".to_string());
                cells.extend(std::iter::repeat_n(String::new(), k - 1));
            }
            RowValues::Objectives(v) => {
                cells.extend(v.values().iter().map(|x| x.to_string()));
            }
            RowValues::LpValues(vals) => {
                cells.extend(vals.iter().map(|v| {
                    v.as_ref().map(rational_cell).unwrap_or_default()
                }));
            }
        }

        let mut masked: Vec<String> = Vec::with_capacity(2 * k + 2);
        masked.push(utility_cell(&event.g_best));
        masked.extend(event.lb.iter().map(|b| b.to_string()));
        masked.push(utility_cell(&event.g_lb));
        masked.extend(event.ub.iter().map(|b| b.to_string()));
        for (slot, value) in last.iter_mut().zip(masked) {
            let changed = slot.as_deref() != Some(value.as_str());
            if changed {
                *slot = Some(value.clone());
            }
            // The terminal row prints the full state.
            if changed || terminal {
                cells.push(value);
            } else {
                cells.push(String::new());
            }
        }
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    out
}
