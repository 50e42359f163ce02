//! Fuzzy relations, their degree of T-transitivity under a fuzzy implication,
//! closures, aggregation and λ-cut clustering.

pub mod aggregation;
pub mod algebra;
pub mod clustering;
pub mod conditions;
pub mod error;
pub mod relation;
pub mod transitivity;

pub use error::{FuzzError, Result};
