//! Presentation matrices of `f_*O_X` by generic ansatz and exact linear
//! solving.

mod ansatz;
mod hmp;
mod problem;

pub use ansatz::{ansatz_row, AnsatzRow};
pub use hmp::{build_row_system, hmp_matrix, verify_c1, verify_c2, HmpOptions, PresentationMatrix, RowSystem};
pub use problem::{pullback_generators, GeneratorSet, MapGermProblem};
