#![no_std]

extern crate alloc;

pub mod bases;
pub mod checks;
pub mod generic;
pub mod grassmann;
pub mod report;
pub mod scalar;
pub mod spar;
pub mod transforms;

pub use bases::{AbstractPoly, Basis};
pub use scalar::{Rational, RatFunc, Scalar};
pub use spar::{Mark, Part, Sector, SuperPartition};
