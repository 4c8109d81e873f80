//! Exact computation of the Ext algebra of the rank-two Nichols algebra of
//! type `A_2` at a root of unity.

pub mod cli;
pub mod error;
pub mod ext;
pub mod linalg;
pub mod qalgebra;
pub mod report;
pub mod resolution;
pub mod scalars;
pub mod suite;

pub use error::{Error, Result};
