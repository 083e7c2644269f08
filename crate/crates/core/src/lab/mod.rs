//! Serre conditions, Burch ideals, complexity and Tor-rigidity probes.

mod burch;
mod complexity;
mod rigidity;
mod serre;

pub use burch::burch_check;
pub use complexity::{complexity_estimate, estimate_from_betti, ComplexityReport, Confidence, MIN_COMPLEXITY_BOUND};
pub use rigidity::{
    mcm_check, rigid_witness, rigidity_probe, rigidity_windows, RigidWitness, RigidityReport, RigidityViolation,
    WitnessKind,
};
pub use serre::{
    ext_over_polynomial_ring, serre_check, serre_check_strict, serre_oracle_monomial, SerreMethod, SerreReport,
    SerreWitness, Verdict,
};
