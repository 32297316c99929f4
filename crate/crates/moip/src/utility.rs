//! Utility expressions over objective values: parsing, evaluation, bound
//! inversion, and sampled monotonicity checking.
//!
//! The grammar accepts variables `f1..fk`, integer and decimal constants,
//! `+ - * ^` with standard precedence (`^` binds tighter than unary minus,
//! which binds tighter than `*`, which binds tighter than `+`/`-`), the
//! unary functions `exp` and `log`, and parentheses. Exponents must be
//! positive integer literals.
//!
//! Expressions without `exp`/`log` evaluate exactly in rational arithmetic;
//! the rest evaluate in `f64` with a comparison slack of [`APPROX_SLACK`].
//! Strict monotonicity is the caller's declaration — `check_monotone_sample`
//! is a sampling validator, not a proof.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::ExtInt;

/// Comparison slack for utilities evaluated in floating point.
pub const APPROX_SLACK: f64 = 1e-9;

/// Growth cap for the upward bracket in [`invert_bound`]; offsets beyond
/// this are reported as `+inf`.
pub const DEFAULT_BRACKET_CAP: i64 = 1 << 62;

#[derive(Debug, Error, PartialEq)]
pub enum UtilityError {
    #[error("syntax error at column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("unknown identifier `{name}` at column {col}")]
    UnknownIdentifier { name: String, col: usize },
    #[error("objective index f{index} out of range 1..={k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("evaluation takes {expected} objective values, got {actual}")]
    ArgumentCount { expected: usize, actual: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("cannot combine -inf and +inf arguments")]
    MixedInfinities,
    #[error("bound inversion requires the utility at the lower bounds not to exceed the target")]
    PreconditionViolated,
    #[error("bound inversion requires a finite starting coordinate")]
    NonFiniteStart,
}

/// A utility value: exact rational for polynomial expressions, `f64`
/// otherwise, with explicit infinities for extended arguments and for the
/// "no incumbent yet" state.
#[derive(Debug, Clone, PartialEq)]
pub enum UtilityValue {
    NegInf,
    Exact(BigRational),
    Approx(f64),
    PosInf,
}

impl UtilityValue {
    pub fn exact_int(v: i64) -> Self {
        UtilityValue::Exact(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, UtilityValue::Exact(_) | UtilityValue::Approx(_))
    }

    fn as_f64(&self) -> f64 {
        match self {
            UtilityValue::NegInf => f64::NEG_INFINITY,
            UtilityValue::PosInf => f64::INFINITY,
            UtilityValue::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            UtilityValue::Approx(v) => *v,
        }
    }

    /// `self <= other`, exact when both sides are exact, otherwise within
    /// [`APPROX_SLACK`].
    pub fn le_with_slack(&self, other: &UtilityValue) -> bool {
        match (self, other) {
            (UtilityValue::NegInf, _) | (_, UtilityValue::PosInf) => true,
            (_, UtilityValue::NegInf) | (UtilityValue::PosInf, _) => false,
            (UtilityValue::Exact(a), UtilityValue::Exact(b)) => a <= b,
            _ => self.as_f64() <= other.as_f64() + APPROX_SLACK,
        }
    }

    /// Strict order used for incumbent updates; exact when possible.
    pub fn lt(&self, other: &UtilityValue) -> bool {
        match (self, other) {
            (UtilityValue::NegInf, UtilityValue::NegInf) => false,
            (UtilityValue::PosInf, UtilityValue::PosInf) => false,
            (UtilityValue::NegInf, _) | (_, UtilityValue::PosInf) => true,
            (_, UtilityValue::NegInf) | (UtilityValue::PosInf, _) => false,
            (UtilityValue::Exact(a), UtilityValue::Exact(b)) => a < b,
            _ => self.as_f64() < other.as_f64(),
        }
    }

    pub fn ge(&self, other: &UtilityValue) -> bool {
        !self.lt(other)
    }
}

impl fmt::Display for UtilityValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UtilityValue::NegInf => write!(f, "-inf"),
            UtilityValue::PosInf => write!(f, "inf"),
            UtilityValue::Exact(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            UtilityValue::Approx(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Expr {
    Const(BigRational),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Exp(Box<Expr>),
    Log(Box<Expr>),
}

/// A parsed utility expression over `f1..fk`, immutable after parse.
#[derive(Debug, Clone, PartialEq)]
pub struct UtilityExpr {
    ast: Expr,
    k: usize,
    polynomial: bool,
}

impl UtilityExpr {
    pub fn num_objectives(&self) -> usize {
        self.k
    }

    /// True when the expression uses only `+ - * ^` and constants, so every
    /// evaluation at integer arguments is exact.
    pub fn is_polynomial(&self) -> bool {
        self.polynomial
    }
}

impl fmt::Display for UtilityExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(&self.ast, f, 0)
    }
}

// Precedence levels used when re-rendering: 0 add, 1 mul, 2 unary, 3 pow.
fn write_expr(e: &Expr, f: &mut fmt::Formatter<'_>, parent: u8) -> fmt::Result {
    let prec = match e {
        Expr::Add(..) | Expr::Sub(..) => 0,
        Expr::Mul(..) => 1,
        Expr::Neg(..) => 2,
        _ => 3,
    };
    let needs_parens = prec < parent;
    if needs_parens {
        write!(f, "(")?;
    }
    match e {
        Expr::Const(r) => {
            if r.is_integer() {
                write!(f, "{}", r.numer())?;
            } else {
                write!(f, "{}/{}", r.numer(), r.denom())?;
            }
        }
        Expr::Var(i) => write!(f, "f{}", i + 1)?,
        Expr::Neg(inner) => {
            write!(f, "-")?;
            write_expr(inner, f, 2)?;
        }
        Expr::Add(a, b) => {
            write_expr(a, f, 0)?;
            write!(f, " + ")?;
            write_expr(b, f, 1)?;
        }
        Expr::Sub(a, b) => {
            write_expr(a, f, 0)?;
            write!(f, " - ")?;
            write_expr(b, f, 1)?;
        }
        Expr::Mul(a, b) => {
            write_expr(a, f, 1)?;
            write!(f, "*")?;
            write_expr(b, f, 2)?;
        }
        Expr::Pow(base, exp) => {
            write_expr(base, f, 3)?;
            write!(f, "^{exp}")?;
        }
        Expr::Exp(inner) => {
            write!(f, "exp(")?;
            write_expr(inner, f, 0)?;
            write!(f, ")")?;
        }
        Expr::Log(inner) => {
            write!(f, "log(")?;
            write_expr(inner, f, 0)?;
            write!(f, ")")?;
        }
    }
    if needs_parens {
        write!(f, ")")?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    tokens: Vec<(Token, usize)>,
}

impl<'a> Lexer<'a> {
    fn tokenize(text: &'a str) -> Result<Vec<(Token, usize)>, UtilityError> {
        let mut lx = Lexer {
            src: text.as_bytes(),
            pos: 0,
            tokens: Vec::new(),
        };
        while lx.pos < lx.src.len() {
            let c = lx.src[lx.pos];
            let col = lx.pos + 1;
            match c {
                b' ' | b'\t' => lx.pos += 1,
                b'+' => lx.push(Token::Plus, col),
                b'-' => lx.push(Token::Minus, col),
                b'*' => lx.push(Token::Star, col),
                b'^' => lx.push(Token::Caret, col),
                b'(' => lx.push(Token::LParen, col),
                b')' => lx.push(Token::RParen, col),
                b'0'..=b'9' => lx.number(col)?,
                c if c.is_ascii_alphabetic() => lx.ident(col),
                other => {
                    return Err(UtilityError::Syntax {
                        col,
                        msg: format!("unexpected character `{}`", other as char),
                    })
                }
            }
        }
        Ok(lx.tokens)
    }

    fn push(&mut self, tok: Token, col: usize) {
        self.tokens.push((tok, col));
        self.pos += 1;
    }

    fn number(&mut self, col: usize) -> Result<(), UtilityError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let mut frac_digits = 0usize;
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            let frac_start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            frac_digits = self.pos - frac_start;
            if frac_digits == 0 {
                return Err(UtilityError::Syntax {
                    col,
                    msg: "expected digits after decimal point".into(),
                });
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let digits: String = text.chars().filter(|c| *c != '.').collect();
        let numer: BigInt = digits.parse().unwrap();
        let denom = BigInt::from(10u32).pow(frac_digits as u32);
        self.tokens
            .push((Token::Number(BigRational::new(numer, denom)), col));
        Ok(())
    }

    fn ident(&mut self, col: usize) {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        self.tokens.push((Token::Ident(text.to_string()), col));
    }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    k: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.end_col)
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Token, what: &str) -> Result<(), UtilityError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(UtilityError::Syntax {
                col: self.col(),
                msg: format!("expected {what}"),
            })
        }
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Expr, UtilityError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<Expr, UtilityError> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    // factor := '-' factor | power
    fn factor(&mut self) -> Result<Expr, UtilityError> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    // power := atom ['^' positive-integer]
    fn power(&mut self) -> Result<Expr, UtilityError> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            let col = self.col();
            match self.advance() {
                Some(Token::Number(r)) if r.is_integer() && r.is_positive() => {
                    let exp = r.to_integer().to_u32().ok_or(UtilityError::Syntax {
                        col,
                        msg: "exponent too large".into(),
                    })?;
                    Ok(Expr::Pow(Box::new(base), exp))
                }
                _ => Err(UtilityError::Syntax {
                    col,
                    msg: "exponent must be a positive integer literal".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, UtilityError> {
        let col = self.col();
        match self.advance() {
            Some(Token::Number(r)) => Ok(Expr::Const(r)),
            Some(Token::Ident(name)) => {
                if let Some(rest) = name.strip_prefix('f') {
                    if let Ok(index) = rest.parse::<usize>() {
                        if index == 0 || index > self.k {
                            return Err(UtilityError::IndexOutOfRange { index, k: self.k });
                        }
                        return Ok(Expr::Var(index - 1));
                    }
                }
                match name.as_str() {
                    "exp" | "log" => {
                        self.expect(Token::LParen, "`(` after function name")?;
                        let arg = self.expr()?;
                        self.expect(Token::RParen, "`)`")?;
                        Ok(match name.as_str() {
                            "exp" => Expr::Exp(Box::new(arg)),
                            _ => Expr::Log(Box::new(arg)),
                        })
                    }
                    _ => Err(UtilityError::UnknownIdentifier { name, col }),
                }
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(UtilityError::Syntax {
                col,
                msg: "expected a value".into(),
            }),
        }
    }
}

/// Parses a utility expression over `f1..fk`.
pub fn parse_utility(text: &str, k: usize) -> Result<UtilityExpr, UtilityError> {
    let tokens = Lexer::tokenize(text)?;
    let end_col = text.chars().count() + 1;
    let mut parser = Parser {
        tokens,
        pos: 0,
        k,
        end_col,
    };
    let ast = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(UtilityError::Syntax {
            col: parser.col(),
            msg: "unexpected trailing input".into(),
        });
    }
    let polynomial = is_polynomial(&ast);
    Ok(UtilityExpr {
        ast,
        k,
        polynomial,
    })
}

fn is_polynomial(e: &Expr) -> bool {
    match e {
        Expr::Const(_) | Expr::Var(_) => true,
        Expr::Neg(a) | Expr::Pow(a, _) => is_polynomial(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            is_polynomial(a) && is_polynomial(b)
        }
        Expr::Exp(_) | Expr::Log(_) => false,
    }
}

fn eval_exact(e: &Expr, args: &[BigRational]) -> BigRational {
    match e {
        Expr::Const(r) => r.clone(),
        Expr::Var(i) => args[*i].clone(),
        Expr::Neg(a) => -eval_exact(a, args),
        Expr::Add(a, b) => eval_exact(a, args) + eval_exact(b, args),
        Expr::Sub(a, b) => eval_exact(a, args) - eval_exact(b, args),
        Expr::Mul(a, b) => eval_exact(a, args) * eval_exact(b, args),
        Expr::Pow(a, exp) => {
            let base = eval_exact(a, args);
            let mut acc = BigRational::one();
            for _ in 0..*exp {
                acc *= &base;
            }
            acc
        }
        Expr::Exp(_) | Expr::Log(_) => unreachable!("exact eval is polynomial-only"),
    }
}

fn eval_approx(e: &Expr, args: &[f64]) -> Result<f64, UtilityError> {
    Ok(match e {
        Expr::Const(r) => r.to_f64().unwrap(),
        Expr::Var(i) => args[*i],
        Expr::Neg(a) => -eval_approx(a, args)?,
        Expr::Add(a, b) => eval_approx(a, args)? + eval_approx(b, args)?,
        Expr::Sub(a, b) => eval_approx(a, args)? - eval_approx(b, args)?,
        Expr::Mul(a, b) => eval_approx(a, args)? * eval_approx(b, args)?,
        Expr::Pow(a, exp) => eval_approx(a, args)?.powi(*exp as i32),
        Expr::Exp(a) => eval_approx(a, args)?.exp(),
        Expr::Log(a) => {
            let v = eval_approx(a, args)?;
            if v <= 0.0 {
                return Err(UtilityError::Domain(format!("log of nonpositive value {v}")));
            }
            v.ln()
        }
    })
}

impl UtilityExpr {
    /// Evaluates the expression at extended-integer arguments.
    ///
    /// Because the expression is declared strictly increasing, any `-inf`
    /// argument yields `-inf` and any `+inf` argument yields `+inf`; mixing
    /// the two is an error.
    pub fn eval(&self, args: &[ExtInt]) -> Result<UtilityValue, UtilityError> {
        if args.len() != self.k {
            return Err(UtilityError::ArgumentCount {
                expected: self.k,
                actual: args.len(),
            });
        }
        let has_neg = args.contains(&ExtInt::NegInf);
        let has_pos = args.contains(&ExtInt::PosInf);
        match (has_neg, has_pos) {
            (true, true) => return Err(UtilityError::MixedInfinities),
            (true, false) => return Ok(UtilityValue::NegInf),
            (false, true) => return Ok(UtilityValue::PosInf),
            (false, false) => {}
        }
        if self.polynomial {
            let rational: Vec<BigRational> = args
                .iter()
                .map(|a| BigRational::from_i64(a.finite().unwrap()).unwrap())
                .collect();
            Ok(UtilityValue::Exact(eval_exact(&self.ast, &rational)))
        } else {
            let floats: Vec<f64> = args
                .iter()
                .map(|a| a.finite().unwrap() as f64)
                .collect();
            Ok(UtilityValue::Approx(eval_approx(&self.ast, &floats)?))
        }
    }

    fn eval_with_coord(
        &self,
        base: &[ExtInt],
        coord: usize,
        value: i64,
    ) -> Result<UtilityValue, UtilityError> {
        let mut args = base.to_vec();
        args[coord] = ExtInt::Finite(value);
        self.eval(&args)
    }
}

/// The largest integer `z` with `G(lb_1, ..., z, ..., lb_k) <= g_best`,
/// or `+inf` when every integer satisfies the inequality.
///
/// Found by exponential bracketing upward from `lb[i]` followed by integer
/// bisection; the result is verified by the two-sided check
/// `G(z) <= g_best < G(z + 1)` before being returned.
pub fn invert_bound(
    expr: &UtilityExpr,
    lb: &[ExtInt],
    i: usize,
    g_best: &UtilityValue,
) -> Result<ExtInt, UtilityError> {
    invert_bound_capped(expr, lb, i, g_best, DEFAULT_BRACKET_CAP)
}

/// [`invert_bound`] with a configurable bracket growth cap.
pub fn invert_bound_capped(
    expr: &UtilityExpr,
    lb: &[ExtInt],
    i: usize,
    g_best: &UtilityValue,
    bracket_cap: i64,
) -> Result<ExtInt, UtilityError> {
    let start = match lb.get(i) {
        Some(ExtInt::Finite(v)) => *v,
        _ => return Err(UtilityError::NonFiniteStart),
    };
    let at_lb = expr.eval(lb)?;
    if !at_lb.le_with_slack(g_best) {
        return Err(UtilityError::PreconditionViolated);
    }

    // Exponential bracket: find the first offset whose value exceeds g_best.
    let mut known_ok = start;
    let mut offset: i64 = 1;
    loop {
        let candidate = match start.checked_add(offset) {
            Some(c) => c,
            None => return Ok(ExtInt::PosInf),
        };
        if offset > bracket_cap {
            return Ok(ExtInt::PosInf);
        }
        let value = expr.eval_with_coord(lb, i, candidate)?;
        if value.le_with_slack(g_best) {
            known_ok = candidate;
            offset = match offset.checked_mul(2) {
                Some(o) => o,
                None => return Ok(ExtInt::PosInf),
            };
        } else {
            break;
        }
    }

    // Integer bisection on (known_ok, first failing candidate).
    let mut lo = known_ok;
    let mut hi = start + offset;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if expr.eval_with_coord(lb, i, mid)?.le_with_slack(g_best) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    // Defining two-sided check; only floating-point rounding could move the
    // boundary, so walk at most a few steps before asserting.
    while !expr.eval_with_coord(lb, i, lo)?.le_with_slack(g_best) {
        lo -= 1;
    }
    while expr.eval_with_coord(lb, i, lo + 1)?.le_with_slack(g_best) {
        lo += 1;
    }
    Ok(ExtInt::Finite(lo))
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneViolation {
    pub coordinate: usize,
    pub point: Vec<i64>,
    pub value: UtilityValue,
    pub perturbed: UtilityValue,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MonotoneReport {
    pub samples: usize,
    pub violations: Vec<MonotoneViolation>,
}

impl MonotoneReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Samples points in an integer box and checks that bumping each coordinate
/// by one strictly increases the value. An empty report is evidence, not a
/// proof.
pub fn check_monotone_sample(
    expr: &UtilityExpr,
    bounds: &[(i64, i64)],
    samples: usize,
    seed: u64,
) -> Result<MonotoneReport, UtilityError> {
    if bounds.len() != expr.num_objectives() {
        return Err(UtilityError::ArgumentCount {
            expected: expr.num_objectives(),
            actual: bounds.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = MonotoneReport {
        samples,
        violations: Vec::new(),
    };
    for _ in 0..samples {
        let point: Vec<i64> = bounds
            .iter()
            .map(|&(lo, hi)| rng.gen_range(lo..=hi))
            .collect();
        let args: Vec<ExtInt> = point.iter().map(|&v| ExtInt::Finite(v)).collect();
        let value = expr.eval(&args)?;
        for coord in 0..point.len() {
            let perturbed = expr.eval_with_coord(&args, coord, point[coord] + 1)?;
            if !value.lt(&perturbed) {
                report.violations.push(MonotoneViolation {
                    coordinate: coord,
                    point: point.clone(),
                    value: value.clone(),
                    perturbed,
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(values: &[i64]) -> Vec<ExtInt> {
        values.iter().map(|&v| ExtInt::Finite(v)).collect()
    }

    fn sum_of_cubes() -> UtilityExpr {
        parse_utility("f1^3 + f2^3 + f3^3", 3).unwrap()
    }

    #[test]
    fn parses_sum_of_cubes() {
        let expr = sum_of_cubes();
        assert!(expr.is_polynomial());
        assert_eq!(expr.to_string(), "f1^3 + f2^3 + f3^3");
    }

    #[test]
    fn parses_identity() {
        let expr = parse_utility("f1", 1).unwrap();
        assert_eq!(expr.eval(&fin(&[5])).unwrap(), UtilityValue::exact_int(5));
    }

    #[test]
    fn rejects_out_of_range_index() {
        assert_eq!(
            parse_utility("f3", 2),
            Err(UtilityError::IndexOutOfRange { index: 3, k: 2 })
        );
    }

    #[test]
    fn rejects_unknown_identifier() {
        assert!(matches!(
            parse_utility("g1 + f1", 2),
            Err(UtilityError::UnknownIdentifier { .. })
        ));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_utility("f1 + ", 2) {
            Err(UtilityError::Syntax { col, .. }) => assert_eq!(col, 6),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn precedence_and_unary_minus() {
        // -f1^2 parses as -(f1^2): at f1 = 3 the value is -9.
        let expr = parse_utility("-f1^2", 1).unwrap();
        assert_eq!(expr.eval(&fin(&[3])).unwrap(), UtilityValue::exact_int(-9));
        let expr = parse_utility("2 + 3 * f1", 1).unwrap();
        assert_eq!(expr.eval(&fin(&[4])).unwrap(), UtilityValue::exact_int(14));
    }

    #[test]
    fn decimal_constants_are_exact_rationals() {
        let expr = parse_utility("0.5 * f1", 1).unwrap();
        assert_eq!(expr.eval(&fin(&[3])).unwrap().to_string(), "3/2");
    }

    #[test]
    fn eval_matches_benchmark_values() {
        let expr = sum_of_cubes();
        assert_eq!(
            expr.eval(&fin(&[86, 214, 324])).unwrap(),
            UtilityValue::exact_int(44_448_624)
        );
        assert_eq!(
            expr.eval(&fin(&[96, 186, 204])).unwrap(),
            UtilityValue::exact_int(15_809_256)
        );
        assert_eq!(
            expr.eval(&fin(&[86, 128, 129])).unwrap(),
            UtilityValue::exact_int(4_879_897)
        );
    }

    #[test]
    fn eval_extends_monotonically_to_infinities() {
        let expr = sum_of_cubes();
        let mut args = fin(&[86, 128, 129]);
        args[1] = ExtInt::NegInf;
        assert_eq!(expr.eval(&args).unwrap(), UtilityValue::NegInf);
        args[1] = ExtInt::PosInf;
        assert_eq!(expr.eval(&args).unwrap(), UtilityValue::PosInf);
        args[0] = ExtInt::NegInf;
        assert_eq!(expr.eval(&args), Err(UtilityError::MixedInfinities));
    }

    #[test]
    fn log_domain_error() {
        let expr = parse_utility("log(f1)", 1).unwrap();
        assert!(matches!(expr.eval(&fin(&[0])), Err(UtilityError::Domain(_))));
        assert!(matches!(
            expr.eval(&fin(&[1])).unwrap(),
            UtilityValue::Approx(v) if v.abs() < 1e-12
        ));
    }

    #[test]
    fn invert_reproduces_first_upper_bounds() {
        let expr = sum_of_cubes();
        let lb = fin(&[86, 128, 129]);
        let g = UtilityValue::exact_int(44_448_624);
        assert_eq!(
            invert_bound(&expr, &lb, 0, &g).unwrap(),
            ExtInt::Finite(342)
        );
        assert_eq!(
            invert_bound(&expr, &lb, 1, &g).unwrap(),
            ExtInt::Finite(346)
        );
        assert_eq!(
            invert_bound(&expr, &lb, 2, &g).unwrap(),
            ExtInt::Finite(346)
        );
    }

    #[test]
    fn invert_identity_boundary() {
        let expr = parse_utility("f1", 1).unwrap();
        assert_eq!(
            invert_bound(&expr, &fin(&[5]), 0, &UtilityValue::exact_int(5)).unwrap(),
            ExtInt::Finite(5)
        );
    }

    #[test]
    fn invert_detects_precondition_violation() {
        let expr = parse_utility("f1", 1).unwrap();
        assert_eq!(
            invert_bound(&expr, &fin(&[6]), 0, &UtilityValue::exact_int(5)),
            Err(UtilityError::PreconditionViolated)
        );
    }

    #[test]
    fn invert_returns_infinity_when_no_integer_exceeds() {
        // The expression ignores f2, so no value of f2 pushes it past g_best.
        let expr = parse_utility("f1 + 0*f2", 2).unwrap();
        assert_eq!(
            invert_bound(&expr, &fin(&[1, 0]), 1, &UtilityValue::exact_int(10)).unwrap(),
            ExtInt::PosInf
        );
    }

    #[test]
    fn invert_two_sided_check_holds() {
        let expr = sum_of_cubes();
        let lb = fin(&[96, 184, 180]);
        let g = UtilityValue::exact_int(15_809_256);
        let z = invert_bound(&expr, &lb, 2, &g).unwrap();
        assert_eq!(z, ExtInt::Finite(205));
        let mut at = lb.clone();
        at[2] = z;
        assert!(expr.eval(&at).unwrap().le_with_slack(&g));
        at[2] = ExtInt::Finite(206);
        assert!(!expr.eval(&at).unwrap().le_with_slack(&g));
    }

    #[test]
    fn monotone_sampler_accepts_sum_of_cubes() {
        let expr = sum_of_cubes();
        let report =
            check_monotone_sample(&expr, &[(0, 400), (0, 400), (0, 400)], 1000, 7).unwrap();
        assert!(report.is_clean());
    }

    #[test]
    fn monotone_sampler_flags_decreasing_coordinate() {
        let expr = parse_utility("f1 - f2", 2).unwrap();
        let report = check_monotone_sample(&expr, &[(0, 10), (0, 10)], 50, 7).unwrap();
        assert!(!report.is_clean());
        assert!(report.violations.iter().all(|v| v.coordinate == 1));
    }

    #[test]
    fn monotone_sampler_accepts_product_of_positives() {
        let expr = parse_utility("f1 * f2", 2).unwrap();
        let report = check_monotone_sample(&expr, &[(1, 10), (1, 10)], 200, 7).unwrap();
        assert!(report.is_clean());
    }

    #[test]
    fn exact_eval_agrees_with_independent_arithmetic_at_scale() {
        let expr = parse_utility("f1^3 + f2^3 + f3^3", 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..10_000 {
            let point: Vec<i64> = (0..3).map(|_| rng.gen_range(-500..=500)).collect();
            let got = expr.eval(&fin(&point)).unwrap();
            let want: i128 = point.iter().map(|&v| (v as i128).pow(3)).sum();
            assert_eq!(got.to_string(), want.to_string());
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            // invert_bound is monotone in g_best.
            #[test]
            fn inversion_monotone_in_target(
                lb1 in 0i64..50,
                lb2 in 0i64..50,
                lb3 in 0i64..50,
                extra in 0i64..1_000_000,
            ) {
                let expr = sum_of_cubes();
                let lb = fin(&[lb1, lb2, lb3]);
                let base = match expr.eval(&lb).unwrap() {
                    UtilityValue::Exact(r) => r,
                    _ => unreachable!(),
                };
                let g1 = UtilityValue::Exact(base.clone());
                let g2 = UtilityValue::Exact(
                    base + num_rational::BigRational::from_integer(extra.into()),
                );
                let z1 = invert_bound(&expr, &lb, 0, &g1).unwrap();
                let z2 = invert_bound(&expr, &lb, 0, &g2).unwrap();
                prop_assert!(z1 <= z2);
            }

            // Exact eval agrees with an independent i128 Horner-free route.
            #[test]
            fn exact_eval_matches_direct_arith(
                a in 0i64..300,
                b in 0i64..300,
                c in 0i64..300,
            ) {
                let expr = sum_of_cubes();
                let got = expr.eval(&fin(&[a, b, c])).unwrap();
                let want = (a as i128).pow(3) + (b as i128).pow(3) + (c as i128).pow(3);
                prop_assert_eq!(got.to_string(), want.to_string());
            }
        }
    }
}
