// `!(x > 0.0)` is used on purpose: it rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod construct;
pub mod covering;
pub mod embed;
pub mod geom;
pub mod hexagon;
pub mod lattice;
pub mod moduli;
pub mod validate;

pub use error::{Error, Result};
