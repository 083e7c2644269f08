//! Prime fields, monomials, graded polynomials and ring descriptors.

mod field;
mod monomial;
mod poly;
mod ring;

pub use field::{PrimeField, DEFAULT_CHAR};
pub use monomial::{monomial_compare, Monomial, MonomialOrder, MAX_VARS};
pub use poly::{poly_arith, PolyOp, PolyRing, Polynomial};
pub use ring::{make_ring, make_ring_with, RingDescriptor, RingOptions, RingSummary};
