//! Hilbert-Schmidt speed witness of non-Markovian dephasing for qudits and
//! qubit⊗qutrit systems, with negativity and measurement-induced disturbance
//! as reference correlation measures.

pub mod decoherence;
pub mod dynamics;
pub mod error;
pub mod golden;
pub mod hilbert;
pub mod runner;
pub mod witnesses;

pub use error::{Error, Result};
