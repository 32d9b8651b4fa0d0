pub mod adaptation;
pub mod commands;
pub mod dsl;
pub mod error;
pub mod homogeneous;
pub mod invariants;
pub mod linalg;
pub mod pipeline;
pub mod report;
pub mod scalar;
pub mod taylor;

pub use error::{Error, Result};
