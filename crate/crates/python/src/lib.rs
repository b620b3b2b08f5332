//! Python module `stabcode`.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use stabcode_core::bounds::{self, Channel};
use stabcode_core::format::parse_stabilizer;
use stabcode_core::stabilizer::{self, QuantumDistance};
use stabcode_core::{lincode, statevec, BitMatrix, BitVector, Error};

create_exception!(stabcode, StabcodeError, PyException);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Parse { .. } | Error::DimensionMismatch { .. } | Error::Domain { .. } => {
            PyValueError::new_err(e.to_string())
        }
        _ => StabcodeError::new_err(e.to_string()),
    }
}

fn bits(text: &str) -> PyResult<BitVector> {
    text.parse().map_err(to_py)
}

#[pyclass(name = "StabilizerCode", module = "stabcode")]
struct PyStabilizerCode {
    inner: stabilizer::StabilizerCode,
}

#[pymethods]
impl PyStabilizerCode {
    /// Generators as Pauli strings such as `"XZZXI"`.
    #[new]
    fn new(paulis: Vec<String>) -> PyResult<Self> {
        let refs: Vec<&str> = paulis.iter().map(String::as_str).collect();
        let inner = stabilizer::StabilizerCode::from_paulis(&refs).map_err(to_py)?;
        Ok(Self { inner })
    }

    /// Parses the stabilizer file format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: parse_stabilizer(text).map_err(to_py)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn paulis(&self) -> Vec<String> {
        self.inner.rows().iter().map(|p| p.to_string()).collect()
    }

    fn is_valid(&self) -> bool {
        self.inner.validate().is_valid()
    }

    /// Zero-based generator pairs that anticommute.
    fn anticommuting_pairs(&self) -> Vec<(usize, usize)> {
        self.inner.validate().anticommuting_pairs
    }

    fn standard_form(&self) -> PyResult<PyStandardForm> {
        Ok(PyStandardForm {
            inner: stabilizer::to_standard_form(&self.inner).map_err(to_py)?,
        })
    }

    /// Minimum weight of a logical error, or `None` if it exceeds `cap`.
    #[pyo3(signature = (cap=None))]
    fn quantum_distance(&self, cap: Option<usize>) -> PyResult<Option<usize>> {
        let cap = cap.unwrap_or(self.inner.n());
        match stabilizer::quantum_distance(&self.inner, cap).map_err(to_py)? {
            QuantumDistance::Exact(d) => Ok(Some(d)),
            QuantumDistance::ExceedsCap(_) => Ok(None),
        }
    }

    /// An equivalent code with `r >= 1`, found by single-qubit column operations.
    #[pyo3(signature = (depth=stabilizer::DEFAULT_ENSURE_R_DEPTH))]
    fn ensure_positive_r(&self, depth: usize) -> PyResult<Self> {
        let found = stabilizer::ensure_positive_r(&self.inner, depth).map_err(to_py)?;
        Ok(Self { inner: found.code })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("StabilizerCode({:?})", self.paulis())
    }
}

#[pyclass(name = "StandardForm", module = "stabcode")]
struct PyStandardForm {
    inner: stabilizer::StandardForm,
}

#[pymethods]
impl PyStandardForm {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn s(&self) -> usize {
        self.inner.s
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.r
    }

    /// `qubit_permutation[i]` is the original zero-based qubit at position `i`.
    #[getter]
    fn qubit_permutation(&self) -> Vec<usize> {
        self.inner.qubit_permutation.clone()
    }

    #[getter]
    fn ops(&self) -> Vec<String> {
        self.inner
            .op_trace
            .iter()
            .map(|op| op.to_string())
            .collect()
    }

    fn generators(&self) -> PyStabilizerCode {
        PyStabilizerCode {
            inner: self.inner.generators(),
        }
    }

    /// The classical code with generator matrix `(A1ᵀ | I_k)`.
    fn extract(&self) -> PyResult<PyLinearCode> {
        let ex = stabcode_core::extract_classical(&self.inner, "python").map_err(to_py)?;
        Ok(PyLinearCode {
            inner: ex.generator,
        })
    }

    #[pyo3(signature = (cap=statevec::DEFAULT_QUBIT_CAP))]
    fn verify_phi<'py>(&self, py: Python<'py>, cap: usize) -> PyResult<Bound<'py, PyDict>> {
        let rep = statevec::verify_phi(&self.inner, cap).map_err(to_py)?;
        let d = PyDict::new(py);
        d.set_item("passed", rep.passed())?;
        d.set_item("images", rep.images)?;
        d.set_item("bijectivity_ok", rep.bijectivity_ok)?;
        d.set_item("eigen_signature_ok", rep.eigen_signature_ok)?;
        d.set_item("codeword_property_ok", rep.codeword_property_ok)?;
        d.set_item("error_property_ok", rep.error_property_ok)?;
        d.set_item("error_property_exact_ok", rep.error_property_exact_ok)?;
        d.set_item("error_pairs_checked", rep.error_pairs_checked)?;
        d.set_item("sampled", rep.sampled)?;
        d.set_item("max_deviation", rep.max_deviation)?;
        d.set_item("counterexamples", rep.counterexamples)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!(
            "StandardForm(n={}, s={}, k={}, r={})",
            self.inner.n(),
            self.inner.s,
            self.inner.k,
            self.inner.r
        )
    }
}

#[pyclass(name = "LinearCode", module = "stabcode")]
struct PyLinearCode {
    inner: lincode::GeneratorMatrix,
}

#[pymethods]
impl PyLinearCode {
    /// Generator matrix rows as 0/1 strings.
    #[new]
    fn new(rows: Vec<String>) -> PyResult<Self> {
        let rows = rows.iter().map(|r| bits(r)).collect::<PyResult<Vec<_>>>()?;
        let cols = rows.first().map_or(0, |r| r.len());
        let matrix = BitMatrix::from_rows(rows, cols).map_err(to_py)?;
        Ok(Self {
            inner: lincode::GeneratorMatrix::new(matrix).map_err(to_py)?,
        })
    }

    /// Parses the generator file format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: lincode::GeneratorMatrix::parse(text).map_err(to_py)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn rows(&self) -> Vec<String> {
        self.inner
            .matrix()
            .rows()
            .iter()
            .map(|r| r.to_string())
            .collect()
    }

    fn parity_check(&self) -> Vec<String> {
        self.inner
            .parity_check()
            .rows()
            .iter()
            .map(|r| r.to_string())
            .collect()
    }

    /// Map from weight to number of codewords of that weight.
    fn weight_enumerator(&self) -> PyResult<std::collections::BTreeMap<usize, u64>> {
        Ok(self.inner.weight_enumerator().map_err(to_py)?.to_map())
    }

    fn min_distance(&self) -> PyResult<usize> {
        self.inner.min_distance().map_err(to_py)
    }

    fn encode(&self, message: &str) -> PyResult<String> {
        Ok(self
            .inner
            .encode(&bits(message)?)
            .map_err(to_py)?
            .to_string())
    }

    /// Nearest codeword and its message.
    fn decode(&self, word: &str) -> PyResult<(String, String)> {
        let d = self.inner.decode_nearest(&bits(word)?).map_err(to_py)?;
        Ok((d.codeword.to_string(), d.message.to_string()))
    }

    fn bsc_success_exact(&self, delta: f64) -> PyResult<f64> {
        Ok(lincode::bsc_success_exact(&self.inner, delta)
            .map_err(to_py)?
            .success_probability)
    }

    /// Estimated success probability and its standard error.
    #[pyo3(signature = (delta, trials=100_000, seed=0))]
    fn bsc_monte_carlo(
        &self,
        py: Python<'_>,
        delta: f64,
        trials: u64,
        seed: u64,
    ) -> PyResult<(f64, f64)> {
        let rep = py
            .detach(|| lincode::bsc_monte_carlo(&self.inner, delta, trials, seed))
            .map_err(to_py)?;
        Ok((rep.success_probability, rep.standard_error.unwrap_or(0.0)))
    }

    fn __repr__(&self) -> String {
        format!("LinearCode({:?})", self.rows())
    }
}

#[pyfunction]
fn binary_entropy(p: f64) -> PyResult<f64> {
    bounds::binary_entropy(p).map_err(to_py)
}

/// Rows `(delta, curve, raw, clamped)` for `"adversarial"` or `"depolarizing"`.
#[pyfunction]
#[pyo3(signature = (channel, start=0.0, stop=0.5, step=0.01))]
fn bound_curves(
    channel: &str,
    start: f64,
    stop: f64,
    step: f64,
) -> PyResult<Vec<(f64, String, f64, f64)>> {
    let channel: Channel = channel.parse().map_err(PyValueError::new_err)?;
    let rows = bounds::curve_rows(channel, start, stop, step).map_err(to_py)?;
    Ok(rows
        .into_iter()
        .map(|r| (r.delta, r.curve.to_string(), r.raw, r.clamped))
        .collect())
}

#[pymodule]
fn stabcode(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("StabcodeError", m.py().get_type::<StabcodeError>())?;
    m.add_class::<PyStabilizerCode>()?;
    m.add_class::<PyStandardForm>()?;
    m.add_class::<PyLinearCode>()?;
    m.add_function(wrap_pyfunction!(binary_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(bound_curves, m)?)?;
    Ok(())
}
