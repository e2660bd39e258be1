//! Exact p-adic integrality of A-hypergeometric series.
//!
//! Everything is computed in exact rational arithmetic. The Dwork constant
//! `π` (with `π^{p-1} = -p`) never appears as a number; it only contributes
//! `1/(p-1)` to valuations.

pub mod arith;
pub mod classical;
pub mod cli;
pub mod error;
pub mod lattice;
pub mod gkz;
pub mod job;
pub mod limits;
pub mod linalg;
pub mod weight;
pub mod lp;
pub mod polytope;
pub mod search;
pub mod series;

pub use arith::{Prime, Rational, Valuation};
pub use error::{GkzError, Result};
pub use gkz::{Configuration, ExponentVector, LatticeBasis};
pub use limits::Limits;
