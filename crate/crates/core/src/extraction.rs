//! The classical binary linear code hidden in a stabilizer code.
//!
//! For a standard form with blocks `A1` (s x k), the classical code is
//! generated by the `k x (n - r)` matrix `(A1ᵀ | I_k)`. Its parity-check
//! matrix is `(I_s | A1)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::lincode::GeneratorMatrix;
use crate::stabilizer::StandardForm;

#[derive(Debug, Clone)]
pub struct ExtractionResult {
    pub generator: GeneratorMatrix,
    /// Block length `n - r`.
    pub n_classical: usize,
    pub k: usize,
    pub r: usize,
    /// Qubit count of the source code.
    pub n_quantum: usize,
    /// `qubit_permutation[i]` is the original qubit behind classical bit `i`
    /// (the first `n - r` entries of the standard-form permutation).
    pub qubit_permutation: Vec<usize>,
    pub provenance: String,
    pub warning: Option<String>,
}

impl ExtractionResult {
    /// `(n - 1, k)` when `r >= 1`; the extracted `(n - r, k)` code can then be
    /// padded to that length without losing distance.
    pub fn padded_parameters(&self) -> Option<(usize, usize)> {
        (self.r >= 1).then(|| (self.n_quantum - 1, self.k))
    }

    /// `(I_s | A1)`.
    pub fn parity_check(&self, sf: &StandardForm) -> BitMatrix {
        BitMatrix::identity(sf.s)
            .hstack(&sf.a1)
            .expect("A1 has s rows")
    }

    pub fn summary(&self) -> ExtractionSummary {
        ExtractionSummary {
            n: self.n_classical,
            k: self.k,
            r: self.r,
            padded_form: self.padded_parameters(),
            qubit_permutation: self.qubit_permutation.iter().map(|q| q + 1).collect(),
            provenance: self.provenance.clone(),
            warning: self.warning.clone(),
            generator: self
                .generator
                .matrix()
                .rows()
                .iter()
                .map(|r| r.to_string())
                .collect(),
        }
    }
}

/// Serializable view of an [`ExtractionResult`]; permutation is 1-based.
#[derive(Debug, Clone, Serialize)]
pub struct ExtractionSummary {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub padded_form: Option<(usize, usize)>,
    pub qubit_permutation: Vec<usize>,
    pub provenance: String,
    pub warning: Option<String>,
    pub generator: Vec<String>,
}

/// Builds `(A1ᵀ | I_k)` from a standard form.
pub fn extract_classical(sf: &StandardForm, provenance: &str) -> Result<ExtractionResult> {
    if sf.k == 0 {
        return Err(Error::NoEncodedQubits);
    }
    let matrix = sf.a1.transpose().hstack(&BitMatrix::identity(sf.k))?;
    let generator = GeneratorMatrix::new(matrix)?;
    let n_quantum = sf.n();
    let warning = (sf.r == 0).then(|| {
        format!(
            "r = 0: extracted a ({n_quantum}, {}) code; use ensure-r for an (n-1, k) code",
            sf.k
        )
    });
    Ok(ExtractionResult {
        generator,
        n_classical: sf.s + sf.k,
        k: sf.k,
        r: sf.r,
        n_quantum,
        qubit_permutation: sf.qubit_permutation[..sf.s + sf.k].to_vec(),
        provenance: provenance.to_string(),
        warning,
    })
}
