//! Executable checks of the laws that make asynchronous flows dynamical
//! systems: progressiveness is shift invariant, flows start at their initial
//! state (consistency), restarting a flow from an intermediate state gives
//! the same flow (composition), and the state at a time depends only on the
//! schedule up to that time (causality).
//!
//! Each law holds for every instance satisfying its hypothesis, so a single
//! failure means the flow implementation is wrong. The [`model::Mutant`]
//! implementations are deliberately wrong and must be caught.

pub mod checks;
pub mod gen;
pub mod model;
pub mod suite;

pub use checks::*;
pub use model::{FlowModel, Mutant, Reference};
pub use suite::{run_exhaustive, run_fuzz_suite, run_fuzz_suite_with, FuzzConfig, SuiteReport};
