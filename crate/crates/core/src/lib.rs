//! Operators and states of the q-deformed symmetric subspace of a qubit
//! chain, over an exact Laurent-polynomial backend and a floating-point
//! backend.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod coproduct;
pub mod decompose;
pub mod dicke;
pub mod error;
pub mod hecke;
pub mod linalg;
pub mod metric;
pub mod qscalar;
pub mod report;
pub mod sparse;
pub mod suites;
pub mod symgroup;

pub use error::{Error, Result};
