//! Exact simplicial engine for Lefschetz coincidence theory on triangulated
//! closed oriented manifolds.

pub mod algebra;
pub mod catalog;
pub mod coincidence;
pub mod complex;
pub mod duality;
pub mod error;
pub mod integer;
pub mod io;
pub mod products;

pub use error::{Error, Result};
