pub mod cli;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod oracles;
pub mod propagator;
pub mod specfun;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
