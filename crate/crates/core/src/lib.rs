//! Presentation matrices of pushforward modules of finite map germs, with
//! Fitting ideals, multiple-point schemes and singularity invariants.

pub mod cli;
pub mod error;
pub mod fitting;
pub mod geometry;
pub mod linalg;
pub mod presentation;
pub mod ring;
pub mod stdbasis;

pub use error::{Error, Result};
