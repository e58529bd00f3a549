//! Bruhat intervals in the symmetric group: R̃-polynomials by recurrence and
//! by increasing paths, upper hypercube decompositions, shortcuts, double
//! shortcuts and double hypercubes, with drivers that sweep these checks over
//! many intervals.

pub mod appendix;
pub mod doubles;
pub mod error;
pub mod hcd;
pub mod interval;
mod memo;
pub mod multiset;
pub mod perm;
pub mod poly;
pub mod report;
pub mod rpoly;
pub mod sweep;

pub use error::{Error, Result};
pub use interval::Interval;
pub use multiset::DegreeMultiset;
pub use perm::{Permutation, Reflection};
pub use poly::QPoly;
pub use report::{CheckKind, Record, Status};
