//! Exact homological algebra over standard graded quotients of polynomial
//! rings with prime field coefficients.

pub mod algebra;
pub mod error;
pub mod groebner;
pub mod homology;
pub mod lab;
pub mod value;

pub use error::{Error, Result};
pub use value::Extended;
