//! Graded modules, minimal resolutions, derived functors and module invariants.

mod functors;
mod invariants;
mod koszul;
mod module;
mod resolution;

pub use functors::{
    ext, ext_from_resolution, hom, tor, tor_from_resolution, EntrySummary, ExtProfile, HomologyEntry,
    TorProfile, HILBERT_WINDOW,
};
pub use invariants::{
    annihilator, find_nonzerodivisor, generator_vector, is_nonzerodivisor, module_dim_codim, rank,
    torsion_split, Rank, TorsionSplit, NZD_TRIALS,
};
pub use koszul::{depth, depth_via_ext, grade, koszul_homology};
pub use module::ModulePresentation;
pub use resolution::{resolve, syzygies, syzygy_module, BettiTable, FreeResolution, Syzygies};
