pub mod bilim;
pub mod colim;
pub mod compact;
pub mod corpus;
pub mod error;
pub mod fincat;
pub mod lexkit;
pub mod suite;
pub mod flat;
pub mod filtered;
pub mod twocat;

pub use error::{Error, Result, Violation};
