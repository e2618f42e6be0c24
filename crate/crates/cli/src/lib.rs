//! Expression language and command-line driver for the `qfine` verifier.
//!
//! ```text
//! qfine expand --expr "qbinom(4,2)"
//! 1 + q + 2*q^2 + q^3 + q^4
//! ```

pub mod app;
pub mod eval;
pub mod expr;
pub mod latex;
pub mod parse;

pub use eval::{eval, eval_expr, EvalField};
pub use expr::{Expr, Phi32Args};
pub use parse::{parse, SyntaxError};
