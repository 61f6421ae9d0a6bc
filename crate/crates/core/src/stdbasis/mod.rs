//! Standard bases for global, local and mixed orderings, normal forms, and
//! quotient-ring tools.

mod buchberger;
mod ideal;
mod kbase;
mod ops;
pub(crate) mod reduce;

pub use buchberger::compute_standard_basis;
pub use ideal::Ideal;
pub use kbase::{QuotientBasis, Vdim};
pub use ops::{eliminate, equal, intersect, power, product, quotient, sum};
