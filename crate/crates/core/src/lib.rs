//! Construction and certification toolkit for coned-off turnover covers, right-angled
//! Coxeter groups and the hyperbolic pentagonal prism.

// `!(x < y)` style tests are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arith;
pub mod error;
pub mod complexes;
pub mod coxeter;
pub mod graphs;
pub mod hyperbolic;
pub mod pipeline;

pub use error::{Error, Result};
