//! Exact coefficient arithmetic: rationals, sparse polynomials, rational
//! functions, weighted gradings and p-adic valuations.

pub mod gcd;
pub mod grading;
pub mod padic;
pub mod parse;
pub mod poly;
pub mod rat;
pub mod ratfn;
pub mod symbol;

pub use gcd::gcd;
pub use grading::{Grading, WeightedDegree};
pub use padic::{vp, PadicVal, Prime};
pub use poly::{Monomial, Poly};
pub use rat::{half, int, rat, Rat};
pub use ratfn::RatFn;
pub use symbol::Symbol;
