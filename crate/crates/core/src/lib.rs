//! Exact computer algebra for Cartesian differential monads.

pub mod basis;
pub mod cdc;
pub mod cli;
pub mod dividedpower;
pub mod error;
pub mod generators;
pub mod linear;
pub mod notation;
pub mod powerseries;
pub mod scalars;
pub mod zinbiel;

pub use error::{Error, Result};
