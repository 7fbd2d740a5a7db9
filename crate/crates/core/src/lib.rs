pub mod error;
pub mod linalg;
pub mod rational;
pub mod rootsys;

pub use error::{Error, Result};
pub mod charalg;
pub mod boxspline;
pub mod cli;
pub mod contraction;
pub mod mittag;
pub mod sampling;
