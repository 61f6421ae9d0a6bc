//! Exact-rational sparse multivariate polynomials, monomial orderings and
//! ring maps.

mod context;
mod map;
mod monomial;
mod ordering;
pub mod parse;
mod polynomial;

pub use context::RingContext;
pub(crate) use context::same_context;
pub use map::RingMap;
pub use monomial::Monomial;
pub use ordering::{compare, MonomialOrdering};
pub use parse::{parse_polynomial, parse_polynomial_list};
pub use polynomial::{integer, rational, Polynomial, Rational};
