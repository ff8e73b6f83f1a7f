#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod hypergeom;
pub mod legendre;
pub mod ode;
pub mod sampling;
pub mod verify;

pub use error::{Error, Result};
