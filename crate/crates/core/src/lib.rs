//! Exact computer algebra for the finite Fine function
//!
//! ```text
//! F_N(a,b;t) = sum_{n=0}^{N} [N n]_q (aq)_n (t)_{N-n} (q)_n t^n / ((bq)_n (t)_N)
//! ```
//!
//! and a registry of transformation identities relating it to shifted copies of
//! itself, terminating 3phi2 series, and Fine's infinite function `F(a,b;t)`.
//! Every identity is checked by exact normalization: symbolically as rational
//! functions of `(q, a, b, t)` for concrete `N`, at exact rational sample points,
//! or as truncated power series in `q` for the infinite statements.

pub mod algebra;
mod error;
pub mod fine;
pub mod qkernel;
pub mod registry;
pub mod series;

pub use algebra::{
    Field, IntPoly, Integer, Monomial, Poly, Polynomial, Rational, RationalFunction, Var, Vars,
};
pub use error::{Error, Result};
