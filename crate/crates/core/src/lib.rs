//! Solving the one-parameter icosahedral quintic resolvent
//! `v⁵ − 40Zv² − 5Zv − Z` by iterating a degree-31 icosahedrally equivariant
//! map to a superattracting five-cycle and reading the roots off the cycle.

pub mod binform;
pub mod error;
pub mod extractor;
pub mod icosa;
pub mod literal;
pub mod map31;
pub mod param;
pub mod pipeline;
pub mod scalar;

pub use binform::{BinaryForm, LinearAction, PlaneMap, ProjPoint};
pub use error::{CacheError, Error, Result};
pub use scalar::{BigComplex, GaussRational, PrecisionContext};
