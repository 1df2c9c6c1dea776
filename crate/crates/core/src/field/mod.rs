//! Exact arithmetic in F = Q(q,t,k)[s]/(s² − 1 − q²).

mod elem;
pub mod parse;
pub mod poly;
mod rat;
mod spoly;

pub use elem::{r_poly, FieldElem, Point};
pub use parse::{eval_expr, parse_expr, Expr};
pub use poly::{BasePoly, Exp};
pub use rat::BaseRat;
pub use spoly::SPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    EvalDenominatorZero,
    #[error("1 + q0^2 is not the square of a rational")]
    NonPythagoreanPoint,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Which arithmetic operation `arith` performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

pub fn arith(x: &FieldElem, y: &FieldElem, kind: ArithKind) -> FieldElem {
    match kind {
        ArithKind::Add => x.add_ref(y),
        ArithKind::Sub => x.sub_ref(y),
        ArithKind::Mul => x.mul_ref(y),
    }
}

pub fn invert(x: &FieldElem) -> Result<FieldElem, FieldError> {
    x.invert()
}
