//! Instance file format, seeded instance generation, and the command
//! implementations behind the `moip` binary.
//!
//! Instance files are line oriented. `#` starts a comment, blank lines are
//! ignored, and the sections appear in a fixed order:
//!
//! ```text
//! moip <k> <n> <m>
//! <k objective rows, n integers each>
//! <m constraint rows, n integers followed by the right-hand side>
//! utility: <expression over f1..fk>
//! ```
//!
//! Constraint rows are equalities over nonnegative integer variables.
//! Inequalities are expressed with explicit slack variables; the assignment
//! generator does exactly that for its `x <= 1` rows.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Duration;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::driver::{run, RunConfig, RunError, RunStatus};
use crate::enumerate::{enumerate_full_frontier, EnumStatus};
use crate::ip::SolveCounter;
use crate::model::{ModelError, MoipInstance};
use crate::trace::render_trace_tsv;
use crate::utility::{parse_utility, UtilityError, UtilityExpr, UtilityValue};

/// Process exit codes for `moip solve`.
pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_BUDGET_EXHAUSTED: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Utility {
        line: usize,
        source: UtilityError,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("generator: {0}")]
    Spec(String),
}

fn parse_err(line: usize, msg: impl Into<String>) -> InstanceError {
    InstanceError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses an instance document from text.
pub fn parse_instance_str(
    text: &str,
) -> Result<(MoipInstance, UtilityExpr), InstanceError> {
    // Content lines with their 1-based line numbers, comments stripped.
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(idx, raw)| {
            let content = raw.split('#').next().unwrap_or("").trim();
            (idx + 1, content)
        })
        .filter(|(_, content)| !content.is_empty());

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty instance file"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("moip") {
        return Err(parse_err(header_line, "expected header `moip <k> <n> <m>`"));
    }
    let mut header_num = |what: &str| -> Result<usize, InstanceError> {
        tokens
            .next()
            .ok_or_else(|| parse_err(header_line, format!("missing {what} in header")))?
            .parse::<usize>()
            .map_err(|_| parse_err(header_line, format!("{what} must be a nonnegative integer")))
    };
    let k = header_num("objective count")?;
    let n = header_num("variable count")?;
    let m = header_num("constraint count")?;
    if tokens.next().is_some() {
        return Err(parse_err(header_line, "trailing tokens in header"));
    }

    let mut int_row = |what: &str, expected: usize| -> Result<(usize, Vec<i64>), InstanceError> {
        let (line, content) = lines
            .next()
            .ok_or_else(|| parse_err(usize::MAX, format!("missing {what} row")))
            .map_err(|_| {
                parse_err(
                    text.lines().count(),
                    format!("unexpected end of file: missing {what} row"),
                )
            })?;
        let values: Result<Vec<i64>, _> = content
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect();
        let values = values
            .map_err(|_| parse_err(line, format!("{what} row must contain only integers")))?;
        if values.len() != expected {
            return Err(parse_err(
                line,
                format!(
                    "{what} row has {} entries, expected {expected}",
                    values.len()
                ),
            ));
        }
        Ok((line, values))
    };

    let mut c = Vec::with_capacity(k);
    for _ in 0..k {
        c.push(int_row("objective", n)?.1);
    }
    let mut a = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    for _ in 0..m {
        let (_, mut row) = int_row("constraint", n + 1)?;
        let rhs = row.pop().expect("row has n + 1 entries");
        a.push(row);
        b.push(rhs);
    }

    let (utility_line, utility_content) = lines.next().ok_or_else(|| {
        parse_err(text.lines().count(), "missing `utility:` line")
    })?;
    let expr_text = utility_content
        .strip_prefix("utility:")
        .ok_or_else(|| parse_err(utility_line, "expected `utility: <expression>`"))?
        .trim();
    let expr = parse_utility(expr_text, k).map_err(|source| InstanceError::Utility {
        line: utility_line,
        source,
    })?;

    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, "unexpected content after utility line"));
    }

    let inst = MoipInstance::new(a, b, c)?;
    if inst.num_vars() != n || inst.num_constraints() != m || inst.num_objectives() != k {
        return Err(parse_err(header_line, "header disagrees with section sizes"));
    }
    Ok((inst, expr))
}

/// Reads and parses an instance file.
pub fn parse_instance(path: &Path) -> Result<(MoipInstance, UtilityExpr), InstanceError> {
    let text = fs::read_to_string(path)?;
    parse_instance_str(&text)
}

/// Canonical serialisation; `parse_instance_str` round-trips it byte for byte.
pub fn write_instance(inst: &MoipInstance, expr: &UtilityExpr) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "moip {} {} {}",
        inst.num_objectives(),
        inst.num_vars(),
        inst.num_constraints()
    );
    for row in inst.objective_rows() {
        let _ = writeln!(out, "{}", join_ints(row));
    }
    for (row, rhs) in inst.constraint_matrix().iter().zip(inst.rhs()) {
        let _ = writeln!(out, "{} {}", join_ints(row), rhs);
    }
    let _ = writeln!(out, "utility: {expr}");
    out
}

fn join_ints(row: &[i64]) -> String {
    row.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    /// An s-by-s assignment problem: one variable per cell plus one slack
    /// per cell for the `x <= 1` rows.
    Assignment { size: usize },
    /// Random equality system `Ax = b` made feasible by construction.
    General { vars: usize, cons: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub shape: Shape,
    pub cost_min: i64,
    pub cost_max: i64,
    pub seed: u64,
    pub k: usize,
}

/// The row/column equality system of an s-by-s assignment problem with
/// explicit `x <= 1` slack rows: variables are the s*s cells in row-major
/// order followed by s*s slacks.
pub fn assignment_system(size: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
    let cells = size * size;
    let vars = 2 * cells;
    let mut a = Vec::with_capacity(2 * size + cells);
    let mut b = Vec::with_capacity(2 * size + cells);
    for r in 0..size {
        let mut row = vec![0i64; vars];
        for c in 0..size {
            row[r * size + c] = 1;
        }
        a.push(row);
        b.push(1);
    }
    for c in 0..size {
        let mut row = vec![0i64; vars];
        for r in 0..size {
            row[r * size + c] = 1;
        }
        a.push(row);
        b.push(1);
    }
    for j in 0..cells {
        let mut row = vec![0i64; vars];
        row[j] = 1;
        row[cells + j] = 1;
        a.push(row);
        b.push(1);
    }
    (a, b)
}

/// Builds a deterministic instance for the spec. All randomness flows from
/// the seed; identical specs produce identical bytes.
pub fn generate_instance(
    spec: &GeneratorSpec,
    utility: Option<&str>,
) -> Result<(MoipInstance, UtilityExpr), InstanceError> {
    if spec.k == 0 {
        return Err(InstanceError::Spec("objective count must be positive".into()));
    }
    if spec.cost_min > spec.cost_max {
        return Err(InstanceError::Spec("empty cost range".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (a, b, costs_per_objective) = match spec.shape {
        Shape::Assignment { size } => {
            if size < 2 {
                return Err(InstanceError::Spec(
                    "assignment size must be at least 2".into(),
                ));
            }
            let (a, b) = assignment_system(size);
            let cells = size * size;
            let vars = 2 * cells;
            let mut rows = Vec::with_capacity(spec.k);
            for _ in 0..spec.k {
                let mut row = vec![0i64; vars];
                for cell in row.iter_mut().take(cells) {
                    *cell = rng.gen_range(spec.cost_min..=spec.cost_max);
                }
                rows.push(row);
            }
            (a, b, rows)
        }
        Shape::General { vars, cons } => {
            if vars == 0 {
                return Err(InstanceError::Spec("variable count must be positive".into()));
            }
            let mut a = Vec::with_capacity(cons);
            // A known nonnegative integer point keeps the system feasible.
            let witness: Vec<i64> = (0..vars).map(|_| rng.gen_range(0..=3)).collect();
            let mut b = Vec::with_capacity(cons);
            for _ in 0..cons {
                let row: Vec<i64> = (0..vars).map(|_| rng.gen_range(0..=5)).collect();
                let rhs = row
                    .iter()
                    .zip(&witness)
                    .map(|(&c, &x)| c * x)
                    .sum::<i64>();
                a.push(row);
                b.push(rhs);
            }
            let mut rows = Vec::with_capacity(spec.k);
            for _ in 0..spec.k {
                let row: Vec<i64> = (0..vars)
                    .map(|_| rng.gen_range(spec.cost_min..=spec.cost_max))
                    .collect();
                rows.push(row);
            }
            (a, b, rows)
        }
    };
    let inst = MoipInstance::new(a, b, costs_per_objective)?;
    let text = match utility {
        Some(text) => text.to_string(),
        None => default_utility(spec.k),
    };
    let expr = parse_utility(&text, spec.k).map_err(|source| InstanceError::Utility {
        line: 0,
        source,
    })?;
    Ok((inst, expr))
}

/// Sum of squares, strictly increasing over the nonnegative objectives the
/// generator produces.
pub fn default_utility(k: usize) -> String {
    (1..=k)
        .map(|i| format!("f{i}^2"))
        .collect::<Vec<_>>()
        .join(" + ")
}

#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    pub naive: bool,
    pub max_ips: Option<u64>,
    pub time_limit: Option<f64>,
    pub trace_path: Option<std::path::PathBuf>,
    pub quiet: bool,
}

/// Solves an instance file and reports to stdout. Returns the process exit
/// code: 0 proved optimal, 2 budget exhausted, 3 infeasible, 1 errors.
pub fn cmd_solve(instance_path: &Path, opts: &SolveOptions) -> i32 {
    match solve_inner(instance_path, opts) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_ERROR
        }
    }
}

fn solve_inner(instance_path: &Path, opts: &SolveOptions) -> Result<i32, InstanceError> {
    let (inst, expr) = parse_instance(instance_path)?;
    if opts.naive {
        return naive_solve(&inst, &expr, opts);
    }
    let cfg = RunConfig {
        init_orders: None,
        max_ip_solves: opts.max_ips,
        time_budget: opts.time_limit.map(Duration::from_secs_f64),
    };
    let result = match run(&inst, &expr, &cfg) {
        Ok(result) => result,
        Err(RunError::Infeasible) => {
            if !opts.quiet {
                println!("status: infeasible");
            }
            return Ok(EXIT_INFEASIBLE);
        }
        Err(err) => {
            eprintln!("error: {err}");
            return Ok(EXIT_ERROR);
        }
    };
    if let Some(path) = &opts.trace_path {
        fs::write(path, render_trace_tsv(&result.trace, inst.num_objectives()))?;
    }
    if !opts.quiet {
        match result.status {
            RunStatus::ProvedOptimal => {
                println!("status: optimal");
                println!("utility: {}", result.g_best);
                println!("objectives: {}", result.incumbent_objectives);
                println!("ip-solves: {}", result.ip_solves);
            }
            RunStatus::BudgetExhausted => {
                println!("status: budget-exhausted");
                println!("utility-upper: {}", result.g_best);
                println!("utility-lower: {}", result.g_lower_bound);
                println!("objectives: {}", result.incumbent_objectives);
                println!("ip-solves: {}", result.ip_solves);
            }
        }
    }
    Ok(match result.status {
        RunStatus::ProvedOptimal => EXIT_OK,
        RunStatus::BudgetExhausted => EXIT_BUDGET_EXHAUSTED,
    })
}

fn naive_solve(
    inst: &MoipInstance,
    expr: &UtilityExpr,
    opts: &SolveOptions,
) -> Result<i32, InstanceError> {
    let mut counter = SolveCounter::new();
    let outcome = match enumerate_full_frontier(inst, &mut counter) {
        Ok(outcome) => outcome,
        Err(err) => {
            eprintln!("error: {err}");
            return Ok(EXIT_ERROR);
        }
    };
    if outcome.status == EnumStatus::Infeasible {
        if !opts.quiet {
            println!("status: infeasible");
        }
        return Ok(EXIT_INFEASIBLE);
    }
    let mut best: Option<(UtilityValue, &crate::model::ObjectiveVector)> = None;
    for vector in &outcome.vectors {
        let args: Vec<crate::model::ExtInt> = vector
            .values()
            .iter()
            .map(|&v| crate::model::ExtInt::Finite(v))
            .collect();
        let g = match expr.eval(&args) {
            Ok(g) => g,
            Err(err) => {
                eprintln!("error: {err}");
                return Ok(EXIT_ERROR);
            }
        };
        if best.as_ref().is_none_or(|(b, _)| g.lt(b)) {
            best = Some((g, vector));
        }
    }
    let (g, vector) = best.expect("complete frontier is nonempty");
    if !opts.quiet {
        println!("status: optimal");
        println!("utility: {g}");
        println!("objectives: {vector}");
        println!("frontier-size: {}", outcome.vectors.len());
        println!("ip-solves: {}", outcome.ip_solves);
    }
    Ok(EXIT_OK)
}

/// Writes a generated instance file. Returns the process exit code.
pub fn cmd_generate(
    spec: &GeneratorSpec,
    utility: Option<&str>,
    out_path: &Path,
) -> i32 {
    match generate_instance(spec, utility) {
        Ok((inst, expr)) => {
            let text = write_instance(&inst, &expr);
            match fs::write(out_path, text) {
                Ok(()) => EXIT_OK,
                Err(err) => {
                    eprintln!("error: {err}");
                    EXIT_ERROR
                }
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_ERROR
        }
    }
}
