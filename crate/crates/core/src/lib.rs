//! Reversible arithmetic built from Toffoli gates with borrowed (dirty)
//! ancillae, up to a controlled modular multiplier on `2n + 2` qubits, plus
//! resource accounting, a small statevector simulator for period finding,
//! and fault localization.

pub mod arith;
pub mod circuit;
pub mod cli;
pub mod error;
pub mod faultlab;
pub mod modarith;
pub mod resources;
pub mod shor;
pub mod sim;
pub mod statevector;

pub use circuit::{Circuit, Gate, GateSink, Qubit, RegisterMap};
pub use error::{Error, Result};
pub use sim::BasisState;
