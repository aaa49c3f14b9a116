//! Expression trees in the dataset grammar, radical canonical forms and
//! skeleton extraction.
//!
//! A dataset entry such as
//! `901287283/454115447307648*sqrt(5)*...*sqrt(R(1))*cos(5*FI(2) - FI(1))`
//! splits into a symbolic skeleton that is the same for every point and a
//! numeric remnant (a rational times square roots) that varies.

pub mod eval;
pub mod expr;
pub mod parse;
pub mod radical;
pub mod skeleton;

use thiserror::Error;

use crate::numeric::BigRat;

pub use eval::{evaluate, Bindings};
pub use expr::{render_expr, ExprTree, Func};
pub use parse::parse_expr;
pub use radical::{canonical_cbrt, canonicalize_radical, is_radical_monomial, AlgebraicValue};
pub use skeleton::{canonical_form, extract_skeleton, numeric_slot, Skeleton};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RemnantError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown function `{name}` at offset {pos}")]
    UnknownFunction { name: String, pos: usize },
    #[error("square root of negative number {0}")]
    NegativeRadicand(BigRat),
    #[error("not a radical monomial: {0}")]
    NotRadicalMonomial(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("sum of unlike radicals")]
    UnlikeRadicals,
    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),
    #[error("cannot evaluate exactly: {0}")]
    Unsupported(String),
    #[error("structural mismatch: {0}")]
    StructuralMismatch(String),
    #[error("skeleton extraction needs at least two points, got {0}")]
    TooFewPoints(usize),
}
