//! Entanglement dynamics of the resonant and detuned Jaynes-Cummings model
//! for an atom prepared in a diagonal mixed state and a field in a pure
//! (typically coherent) state.
//!
//! The joint state stays rank two for all times, so its partial transpose is
//! supported on at most eight dimensions and the negativity detects every
//! entangled state of the family. The crate evaluates the closed-form
//! evolution, the negativity, the von Neumann entropies and the quantum
//! mutual entropy, and ships an independent dense propagator used as an oracle.
//!
//! Modules:
//! - [`field`]: coherent-state amplitudes and Fock-space truncation
//! - [`dynamics`]: dressed-state solution and block assembly of the joint state
//! - [`linalg`]: Hermitian eigensolver, trace norm, exponential action
//! - [`measures`]: partial transpose, negativity, entropies, mutual entropy
//! - [`oracle`]: brute-force propagation of the truncated Hamiltonian
//! - [`sweep`]: time-grid sweeps, presets, config files and CSV output

pub mod dynamics;
pub mod error;
pub mod field;
pub mod linalg;
pub mod measures;
pub mod oracle;
pub mod sweep;

pub use error::{Error, Result};
