pub mod catalog;
pub mod cli;
pub mod construct;
pub mod dps;
pub mod error;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod lll;
pub mod lp;
pub mod matrix;
pub mod search;
pub mod sospoly;

pub use error::{Error, Result};
