//! Buchberger engine and the ideal calculus built on it.

mod engine;
mod ideal;
pub mod monomial_ideal;
mod submodule;
mod vector;

pub use engine::{GbBuilder, GroebnerBasis};
pub use ideal::{groebner, ideal_equal, ideal_ops, module_groebner, normal_form, Ideal, IdealOp, SATURATION_LIMIT};
pub use submodule::Ambient;
pub use vector::{ModuleOrder, Term, Vector};
