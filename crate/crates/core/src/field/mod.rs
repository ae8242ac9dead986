//! Scalar fields on ℝᴺ, evaluable over any [`Scalar`] ring.

mod parser;

use std::fmt;

use thiserror::Error;

use crate::ad::Scalar;

pub use parser::{parse_expression, ParseError, ParseErrorKind};

/// Largest `n` accepted by [`ScalarField::determinant`].
pub const MAX_DET_ORDER: usize = 6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FieldError {
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("division by an element with zero real part")]
    DivisionByZero,
    #[error("determinant order {0} is outside 1..={MAX_DET_ORDER}")]
    OrderOutOfRange(usize),
}

/// Expression tree over variables `x1..xN`. Variables are stored zero-based.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn eval<S: Scalar>(&self, args: &[S]) -> Result<S, FieldError> {
        Ok(match self {
            Expr::Const(c) => S::constant(*c),
            Expr::Var(i) => args[*i],
            Expr::Neg(a) => -a.eval(args)?,
            Expr::Add(a, b) => a.eval(args)? + b.eval(args)?,
            Expr::Sub(a, b) => a.eval(args)? - b.eval(args)?,
            Expr::Mul(a, b) => a.eval(args)? * b.eval(args)?,
            Expr::Div(a, b) => a
                .eval(args)?
                .checked_div(b.eval(args)?)
                .ok_or(FieldError::DivisionByZero)?,
            Expr::Pow(a, k) => {
                let base = a.eval(args)?;
                let mut acc = S::one();
                for _ in 0..*k {
                    acc = acc * base;
                }
                acc
            }
        })
    }

    /// Largest zero-based variable index used, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Expr::Const(_) => None,
            Expr::Var(i) => Some(*i),
            Expr::Neg(a) | Expr::Pow(a, _) => a.max_var(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.max_var().max(b.max_var())
            }
        }
    }
}

/// Fully parenthesized rendering that parses back to an equal tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c:?}"),
            Expr::Var(i) => write!(f, "x{}", i + 1),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, k) => write!(f, "({a}^{k})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Body {
    /// Determinant of the row-major `n × n` argument.
    Determinant(usize),
    /// `Σ cᵢ xᵢ²`.
    Quadric(Vec<f64>),
    Expression(Expr),
}

/// A function ℝᴺ → ℝ that can be evaluated over reals, dual or hyper-dual numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    arity: usize,
    body: Body,
}

impl ScalarField {
    /// `det` on `n × n` matrices flattened row-major, by cofactor expansion.
    pub fn determinant(n: usize) -> Result<Self, FieldError> {
        if !(1..=MAX_DET_ORDER).contains(&n) {
            return Err(FieldError::OrderOutOfRange(n));
        }
        Ok(Self {
            arity: n * n,
            body: Body::Determinant(n),
        })
    }

    /// `Σ coeffs[i]·xᵢ²`.
    pub fn quadric(coeffs: Vec<f64>) -> Self {
        Self {
            arity: coeffs.len(),
            body: Body::Quadric(coeffs),
        }
    }

    /// `x₁² + … + x_N²`.
    pub fn sphere(dim: usize) -> Self {
        Self::quadric(vec![1.0; dim])
    }

    /// `x₁² + x₂²` in ℝ³.
    pub fn cylinder() -> Self {
        Self::quadric(vec![1.0, 1.0, 0.0])
    }

    pub fn from_expr(expr: Expr, arity: usize) -> Self {
        debug_assert!(expr.max_var().map_or(true, |m| m < arity));
        Self {
            arity,
            body: Body::Expression(expr),
        }
    }

    pub fn parse(text: &str, arity: usize) -> Result<Self, ParseError> {
        Ok(Self::from_expr(parse_expression(text, arity)?, arity))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Matrix order if this is a determinant field.
    pub fn determinant_order(&self) -> Option<usize> {
        match self.body {
            Body::Determinant(n) => Some(n),
            _ => None,
        }
    }

    pub fn evaluate<S: Scalar>(&self, args: &[S]) -> Result<S, FieldError> {
        if args.len() != self.arity {
            return Err(FieldError::ArityMismatch {
                expected: self.arity,
                got: args.len(),
            });
        }
        match &self.body {
            Body::Determinant(n) => {
                let mut cols: Vec<usize> = (0..*n).collect();
                Ok(cofactor_det(args, *n, 0, &mut cols))
            }
            Body::Quadric(coeffs) => Ok(coeffs
                .iter()
                .zip(args)
                .fold(S::zero(), |acc, (&c, &x)| acc + S::constant(c) * x * x)),
            Body::Expression(e) => e.eval(args),
        }
    }

    /// Evaluation over plain reals.
    pub fn value(&self, p: &[f64]) -> Result<f64, FieldError> {
        self.evaluate(p)
    }
}

/// Laplace expansion along `row` over the remaining columns `cols`.
fn cofactor_det<S: Scalar>(m: &[S], n: usize, row: usize, cols: &mut Vec<usize>) -> S {
    if cols.len() == 1 {
        return m[row * n + cols[0]];
    }
    let mut acc = S::zero();
    for pos in 0..cols.len() {
        let col = cols.remove(pos);
        let minor = cofactor_det(m, n, row + 1, cols);
        cols.insert(pos, col);
        let term = m[row * n + col] * minor;
        acc = if pos % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}
