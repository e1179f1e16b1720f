//! Exact computation with invariant differential operators on
//! multiplicity-free spaces with one-dimensional quotient.

pub mod catalog;
pub mod error;
pub mod radial;
pub mod random;
pub mod ratpoly;
pub mod smith;
pub mod torus;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use ratpoly::{parse, rat, ratio, RatPoly, Rational};
