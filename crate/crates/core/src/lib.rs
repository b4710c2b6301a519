//! Boolean asynchronous flows.
//!
//! A network `Φ : B^n → B^n` is iterated one coordinate at a time: at each
//! instant of a computation function only the selected coordinates of `Φ`
//! are computed, the others keep their value. This crate simulates such
//! flows in discrete and real (exact rational) time, builds the asynchronous
//! state diagram, and checks the consistency, composition and causality laws
//! of the resulting evolution functions with a seeded falsification harness.

pub mod analysis;
pub mod compfn;
pub mod error;
pub mod flow;
pub mod netparse;
pub mod network;
pub mod seq;
pub mod signal;
pub mod state;
pub mod theorems;
pub mod time;

pub use compfn::{DiscreteCompFn, RealCompFn};
pub use error::{Error, Result};
pub use flow::{
    discrete_flow_at, discrete_flow_signal, real_flow_at, real_flow_signal, synchronous_iterate, FlowQuery, Schedule,
};
pub use network::Network;
pub use signal::{signals_equal, DiscreteSignal, RealSignal};
pub use state::State;
pub use time::{Rational, TimeSeq};
