//! Exact computations in RO(C_n)-graded Bredon cohomology.

pub mod bredon;
pub mod error;
pub mod free_space;
pub mod gcw;
pub mod hom;
pub mod linalg;
pub mod mackey;
pub mod obstruction;
pub mod point;
pub mod reps;

pub use error::{Error, Result};

pub const ENGINE_VERSION: &str = concat!("bredonkit ", env!("CARGO_PKG_VERSION"));
