//! Stabilizer codes over the binary symplectic representation, the classical
//! binary linear codes extracted from their standard form, and tools to check
//! the correspondence on small instances: exact distances, a dense
//! statevector model of the codeword map, channel simulation and closed-form
//! capacity bounds.

pub mod bounds;
pub mod corpus;
pub mod error;
pub mod extraction;
pub mod format;
pub mod gf2;
pub mod lincode;
pub mod stabilizer;
pub mod statevec;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use extraction::{extract_classical, ExtractionResult};
pub use gf2::{BitMatrix, BitVector};
pub use lincode::{
    bsc_monte_carlo, bsc_success_exact, ChannelReport, GeneratorMatrix, WeightEnumerator,
};
pub use stabilizer::{
    ensure_positive_r, quantum_distance, standardize_unchecked, to_standard_form, ElementaryOp,
    PauliVector, QuantumDistance, StabilizerCode, StandardForm,
};
pub use statevec::{verify_phi, PhiReport, StateVector};
