//! Corpus generation and bounded validators for the Tor vanishing statements,
//! with deterministic JSON reports.

pub mod cache;
pub mod corpus;
pub mod report;
pub mod run;
pub mod validators;

pub use cache::Cache;
pub use corpus::{generate_corpus, Corpus, CorpusSpec, Instance, LabeledModule, ModuleClass, Provenance, RingSpec};
pub use report::{Counts, HypothesisCheck, Method, ReportVerdict, Role, Status, TheoremReport};
pub use run::{
    evaluate_instance, murthy_probe, run_corpus, run_harness, HarnessConfig, MurthyRow, RunReport, DEFAULT_BOUND,
    SCHEMA, THREADS_ENV,
};
pub use validators::*;
