pub mod census;
pub mod cli;
pub mod error;
pub mod exactlin;
pub mod ground;
pub mod index;
pub mod matroid;
pub mod orient;
pub mod polytope;
pub mod represent;
pub mod selftest;

pub use error::{Error, Result};
