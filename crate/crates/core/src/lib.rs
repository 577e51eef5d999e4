//! Exact computations around Diophantine triples whose pairwise products
//! plus a fixed polynomial land in a polynomial power sum.

pub mod algebra;
pub mod bounds;
pub mod degenerate;
pub mod error;
pub mod expansion;
pub mod function_field;
pub mod io;
pub mod power_sum;
pub mod sampling;
pub mod search;

pub use error::{Error, Result};
