//! Dense statevectors for exhaustive checks on small codes.
//!
//! Qubit `q` of an `n`-qubit register is bit `n - 1 - q` of the basis index,
//! so `|x_1 … x_n⟩` has index `x_1 … x_n` read as a binary number.
//!
//! The binary vector `(a|b)` acts as `i^{a·b} X^a Z^b`: Z factors first, then
//! X factors, with the phase that makes the operator Hermitian (σy = iXZ).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::lincode::GeneratorMatrix;
use crate::stabilizer::{logical_bit_ops, logical_phase_ops, PauliVector, StandardForm};

pub const DEFAULT_QUBIT_CAP: usize = 12;
pub const TOLERANCE: f64 = 1e-9;
/// Above this many (codeword, error) pairs or images, checks are sampled.
pub const MAX_EXHAUSTIVE_CHECKS: usize = 1 << 16;
/// Largest `images x amplitudes` product for which the full Gram matrix is formed.
const MAX_GRAM_ELEMENTS: usize = 1 << 20;
const MAX_COUNTEREXAMPLES: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

fn mask_of(v: &BitVector) -> usize {
    v.to_msb_u64() as usize
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero_state(n: usize) -> Self {
        Self::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { n, amps }
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                context: "amplitude count",
                expected: 1 << n,
                found: amps.len(),
            });
        }
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps
            .iter()
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.n, other.n);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&self, factor: Complex64) -> StateVector {
        StateVector {
            n: self.n,
            amps: self.amps.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn add(&self, other: &StateVector) -> StateVector {
        assert_eq!(self.n, other.n);
        StateVector {
            n: self.n,
            amps: self
                .amps
                .iter()
                .zip(&other.amps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Largest amplitude-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn apply_pauli(&self, p: &PauliVector) -> Result<StateVector> {
        if p.n() != self.n {
            return Err(Error::DimensionMismatch {
                context: "pauli on state",
                expected: self.n,
                found: p.n(),
            });
        }
        let xmask = mask_of(p.x());
        let zmask = mask_of(p.z());
        let phase = match (xmask & zmask).count_ones() % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (j, &a) in self.amps.iter().enumerate() {
            let sign = if (j & zmask).count_ones() % 2 == 1 {
                -phase
            } else {
                phase
            };
            out[j ^ xmask] = sign * a;
        }
        Ok(StateVector {
            n: self.n,
            amps: out,
        })
    }

    /// Applies σz to every qubit `q < y.len()` with `y_q = 1`.
    pub fn apply_z_pattern(&self, y: &BitVector) -> StateVector {
        assert!(y.len() <= self.n);
        let mut mask = 0usize;
        for q in y.ones() {
            mask |= 1 << (self.n - 1 - q);
        }
        StateVector {
            n: self.n,
            amps: self
                .amps
                .iter()
                .enumerate()
                .map(|(j, &a)| {
                    if (j & mask).count_ones() % 2 == 1 {
                        -a
                    } else {
                        a
                    }
                })
                .collect(),
        }
    }

    /// `‖P ψ - λ ψ‖` for eigenvalue `λ = ±1`.
    pub fn eigen_deviation(&self, p: &PauliVector, eigenvalue: f64) -> f64 {
        let moved = self.apply_pauli(p).expect("same qubit count");
        moved
            .amps
            .iter()
            .zip(&self.amps)
            .map(|(a, b)| (a - b * eigenvalue).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Amplitude-wise comparison of `actual` with `expected` after removing the
/// best single global phase. Returns the deviation and the phase.
fn deviation_up_to_phase(actual: &StateVector, expected: &StateVector) -> (f64, Complex64) {
    let overlap = expected.inner(actual);
    let phase = if overlap.norm() > TOLERANCE {
        overlap / overlap.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    (actual.max_abs_diff(&expected.scale(phase)), phase)
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::TooLarge {
            what: "n (statevector qubit cap)",
            value: n,
            limit: cap,
        });
    }
    Ok(())
}

/// The codeword basis `|C_x⟩` of a standard-form code and the map φ.
#[derive(Debug, Clone)]
pub struct CodeStates {
    sf: StandardForm,
    generators: Vec<PauliVector>,
    phase_ops: Vec<PauliVector>,
    bit_ops: Vec<PauliVector>,
    c0: StateVector,
    /// Norm of `(I+G_1)…(I+G_s)(I+L_1)…(I+L_k)|0⟩ / √2^{s+k}` before
    /// renormalization; 1 when the operators have the expected algebra.
    prefactor_norm: f64,
}

impl CodeStates {
    pub fn new(sf: &StandardForm, cap: usize) -> Result<Self> {
        Self::with_operators(sf, cap, &logical_phase_ops(sf), &logical_bit_ops(sf))
    }

    /// Uses caller-supplied `L` (phase) and `N` (bit) operator matrices.
    pub fn with_operators(
        sf: &StandardForm,
        cap: usize,
        phase_ops: &BitMatrix,
        bit_ops: &BitMatrix,
    ) -> Result<Self> {
        let n = sf.n();
        check_cap(n, cap)?;
        let generators = sf.generators().rows().to_vec();
        let phase_ops: Vec<PauliVector> = phase_ops
            .rows()
            .iter()
            .map(PauliVector::from_symplectic)
            .collect();
        let bit_ops: Vec<PauliVector> = bit_ops
            .rows()
            .iter()
            .map(PauliVector::from_symplectic)
            .collect();

        let mut state = StateVector::zero_state(n);
        for p in phase_ops
            .iter()
            .rev()
            .chain(generators[..sf.s].iter().rev())
        {
            state = state.add(&state.apply_pauli(p)?);
        }
        let raw_norm = state.norm();
        let prefactor_norm = raw_norm / 2f64.powf((sf.s + phase_ops.len()) as f64 / 2.0);
        if raw_norm < TOLERANCE {
            return Err(Error::ZeroState);
        }
        let c0 = state.scale(Complex64::new(1.0 / raw_norm, 0.0));
        Ok(Self {
            sf: sf.clone(),
            generators,
            phase_ops,
            bit_ops,
            c0,
            prefactor_norm,
        })
    }

    pub fn standard_form(&self) -> &StandardForm {
        &self.sf
    }

    pub fn c0(&self) -> &StateVector {
        &self.c0
    }

    pub fn prefactor_norm(&self) -> f64 {
        self.prefactor_norm
    }

    /// `N_1^{x_1} … N_k^{x_k} |C_0⟩`.
    pub fn cx(&self, x: &BitVector) -> Result<StateVector> {
        if x.len() != self.bit_ops.len() {
            return Err(Error::DimensionMismatch {
                context: "message length",
                expected: self.bit_ops.len(),
                found: x.len(),
            });
        }
        let mut state = self.c0.clone();
        for j in x.ones().collect::<Vec<_>>().into_iter().rev() {
            state = state.apply_pauli(&self.bit_ops[j])?;
        }
        Ok(state)
    }

    /// `σz^{y_1} ⊗ … ⊗ σz^{y_{n-r}} ⊗ I^{⊗r} |C_0⟩`.
    pub fn phi(&self, y: &BitVector) -> Result<StateVector> {
        let len = self.sf.s + self.sf.k;
        if y.len() != len {
            return Err(Error::DimensionMismatch {
                context: "phi argument length",
                expected: len,
                found: y.len(),
            });
        }
        Ok(self.c0.apply_z_pattern(y))
    }

    /// Worst eigen-equation residual of φ(y). With `H = (I_s | A1)`, φ(y) has
    /// eigenvalue `(-1)^{(Hy)_i}` on `G_i` (i ≤ s), `(-1)^{y_{s+j}}` on `L_j`,
    /// and +1 on the Z-only generators.
    fn eigen_residual(&self, y: &BitVector, state: &StateVector) -> (f64, Option<String>) {
        let s = self.sf.s;
        let syndrome = BitMatrix::identity(s)
            .hstack(&self.sf.a1)
            .expect("A1 has s rows")
            .transpose()
            .left_mul_vec(y)
            .expect("y has s + k bits");
        let expected = (0..s)
            .map(|i| (&self.generators[i], syndrome.get(i)))
            .chain(
                self.phase_ops
                    .iter()
                    .enumerate()
                    .map(|(j, l)| (l, y.get(s + j))),
            )
            .chain(self.generators[s..].iter().map(|g| (g, false)));
        let mut worst = 0.0f64;
        let mut first_bad = None;
        for (p, flipped) in expected {
            let lambda = if flipped { -1.0 } else { 1.0 };
            let d = state.eigen_deviation(p, lambda);
            if d > TOLERANCE && first_bad.is_none() {
                first_bad = Some(format!("phi({y}) not in the {lambda:+} eigenspace of {p}"));
            }
            worst = worst.max(d);
        }
        (worst, first_bad)
    }
}

pub fn build_c0(sf: &StandardForm, cap: usize) -> Result<StateVector> {
    Ok(CodeStates::new(sf, cap)?.c0)
}

pub fn build_cx(sf: &StandardForm, x: &BitVector, cap: usize) -> Result<StateVector> {
    CodeStates::new(sf, cap)?.cx(x)
}

pub fn phi(sf: &StandardForm, y: &BitVector, cap: usize) -> Result<StateVector> {
    CodeStates::new(sf, cap)?.phi(y)
}

#[derive(Debug, Clone, Serialize)]
pub struct PhiReport {
    pub n: usize,
    pub s: usize,
    pub k: usize,
    pub r: usize,
    /// Number of images `2^{n-r}`.
    pub images: usize,
    /// All images pairwise orthogonal.
    pub bijectivity_ok: bool,
    /// Each image carries its eigenvalue signature on G_1…G_s, L_1…L_k.
    pub eigen_signature_ok: bool,
    /// Classical codewords map to |C_x⟩, which are stabilized by every generator.
    pub codeword_property_ok: bool,
    /// φ(y ⊕ e) equals Z^e φ(y) up to one global phase per e.
    pub error_property_ok: bool,
    /// As above with no phase freedom.
    pub error_property_exact_ok: bool,
    pub error_pairs_checked: usize,
    pub sampled: bool,
    pub max_deviation: f64,
    pub counterexamples: Vec<String>,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        self.bijectivity_ok
            && self.eigen_signature_ok
            && self.codeword_property_ok
            && self.error_property_ok
    }
}

pub fn verify_phi(sf: &StandardForm, cap: usize) -> Result<PhiReport> {
    verify_phi_with_operators(sf, cap, &logical_phase_ops(sf), &logical_bit_ops(sf))
}

/// Exhaustive check (sampled beyond [`MAX_EXHAUSTIVE_CHECKS`]) of the three
/// properties of φ, plus the eigenvalue signature that underlies the first.
pub fn verify_phi_with_operators(
    sf: &StandardForm,
    cap: usize,
    phase_ops: &BitMatrix,
    bit_ops: &BitMatrix,
) -> Result<PhiReport> {
    let n = sf.n();
    check_cap(n, cap)?;
    let len = sf.s + sf.k;
    let images = 1usize << len;
    let mut report = PhiReport {
        n,
        s: sf.s,
        k: sf.k,
        r: sf.r,
        images,
        bijectivity_ok: true,
        eigen_signature_ok: true,
        codeword_property_ok: true,
        error_property_ok: true,
        error_property_exact_ok: true,
        error_pairs_checked: 0,
        sampled: false,
        max_deviation: 0.0,
        counterexamples: Vec::new(),
    };
    let note = |report: &mut PhiReport, msg: String| {
        if report.counterexamples.len() < MAX_COUNTEREXAMPLES {
            report.counterexamples.push(msg);
        }
    };

    let states = match CodeStates::with_operators(sf, cap, phase_ops, bit_ops) {
        Ok(s) => s,
        Err(Error::ZeroState) => {
            report.bijectivity_ok = false;
            report.eigen_signature_ok = false;
            report.codeword_property_ok = false;
            report.error_property_ok = false;
            report.error_property_exact_ok = false;
            report.max_deviation = 1.0;
            note(
                &mut report,
                "|C_0> construction collapsed to the zero vector".into(),
            );
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let prefactor_dev = (states.prefactor_norm() - 1.0).abs();
    report.max_deviation = report.max_deviation.max(prefactor_dev);
    if prefactor_dev > TOLERANCE {
        report.codeword_property_ok = false;
        note(
            &mut report,
            format!(
                "|C_0> prefactor norm {} instead of 1",
                states.prefactor_norm()
            ),
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let sampled_images: Vec<u64> = if images <= MAX_EXHAUSTIVE_CHECKS {
        (0..images as u64).collect()
    } else {
        report.sampled = true;
        (0..MAX_EXHAUSTIVE_CHECKS)
            .map(|_| rng.gen_range(0..images as u64))
            .collect()
    };

    // Property 1: pairwise orthogonality of all images.
    let amps = 1usize << n;
    let orth_dev = if images.saturating_mul(amps) <= MAX_GRAM_ELEMENTS {
        let all: Vec<StateVector> = (0..images as u64)
            .map(|y| states.phi(&BitVector::from_msb_u64(y, len)))
            .collect::<Result<_>>()?;
        let worst: Vec<(f64, Option<String>)> = (0..images)
            .into_par_iter()
            .map(|i| {
                let mut worst = (all[i].norm() - 1.0).abs();
                let mut bad = None;
                for j in i + 1..images {
                    let d = all[i].inner(&all[j]).norm();
                    if d > TOLERANCE && bad.is_none() {
                        bad = Some(format!("phi images {i} and {j} overlap by {d:.3e}"));
                    }
                    worst = worst.max(d);
                }
                (worst, bad)
            })
            .collect();
        for (_, bad) in &worst {
            if let Some(msg) = bad {
                note(&mut report, msg.clone());
            }
        }
        worst.iter().map(|w| w.0).fold(0.0, f64::max)
    } else {
        // ⟨φ(y)|φ(y')⟩ = ⟨C_0|Z^{y⊕y'}|C_0⟩, so one sweep over differences suffices.
        let c0 = states.c0();
        let mut worst = (c0.norm() - 1.0).abs();
        for e in 1..images as u64 {
            let d = c0
                .inner(&c0.apply_z_pattern(&BitVector::from_msb_u64(e, len)))
                .norm();
            if d > TOLERANCE {
                note(
                    &mut report,
                    format!("phi images differing by {e:0len$b} overlap by {d:.3e}"),
                );
            }
            worst = worst.max(d);
        }
        worst
    };
    report.max_deviation = report.max_deviation.max(orth_dev);
    report.bijectivity_ok = orth_dev <= TOLERANCE;

    // Eigenvalue signature of every image.
    for &y in &sampled_images {
        let yv = BitVector::from_msb_u64(y, len);
        let (dev, bad) = states.eigen_residual(&yv, &states.phi(&yv)?);
        report.max_deviation = report.max_deviation.max(dev);
        if let Some(msg) = bad {
            report.eigen_signature_ok = false;
            note(&mut report, msg);
        }
    }

    // Property 2: φ(xM) = |C_x⟩ and |C_x⟩ is stabilized by every generator.
    let classical: Option<GeneratorMatrix> = if sf.k > 0 {
        Some(GeneratorMatrix::new(
            sf.a1.transpose().hstack(&BitMatrix::identity(sf.k))?,
        )?)
    } else {
        None
    };
    let codewords: Vec<(BitVector, BitVector)> = match &classical {
        Some(g) => (0..1u64 << sf.k)
            .map(|x| {
                let xv = BitVector::from_msb_u64(x, sf.k);
                let y = g.encode(&xv).expect("k bits");
                (xv, y)
            })
            .collect(),
        None => vec![(BitVector::zeros(0), BitVector::zeros(len))],
    };
    for (x, y) in &codewords {
        let image = states.phi(y)?;
        let cx = states.cx(x)?;
        let d = image.max_abs_diff(&cx);
        report.max_deviation = report.max_deviation.max(d);
        if d > TOLERANCE {
            report.codeword_property_ok = false;
            note(
                &mut report,
                format!("phi({y}) differs from |C_{x}> by {d:.3e}"),
            );
        }
        for g in &states.generators {
            let d = cx.eigen_deviation(g, 1.0);
            report.max_deviation = report.max_deviation.max(d);
            if d > TOLERANCE {
                report.codeword_property_ok = false;
                note(
                    &mut report,
                    format!("|C_{x}> not stabilized by generator {g}"),
                );
                break;
            }
        }
    }

    // Property 3: φ(y ⊕ e) = Z^e φ(y), one global phase per e shared by all y.
    let pairs = codewords.len() * images;
    let errors: Vec<u64> = if pairs <= MAX_EXHAUSTIVE_CHECKS {
        (0..images as u64).collect()
    } else {
        report.sampled = true;
        let per = (MAX_EXHAUSTIVE_CHECKS / codewords.len()).max(1);
        (0..per).map(|_| rng.gen_range(0..images as u64)).collect()
    };
    let base: Vec<StateVector> = codewords
        .iter()
        .map(|(_, y)| states.phi(y))
        .collect::<Result<_>>()?;
    for &e in &errors {
        let ev = BitVector::from_msb_u64(e, len);
        let mut phase: Option<Complex64> = None;
        for ((_, y), image) in codewords.iter().zip(&base) {
            let lhs = states.phi(&y.xor(&ev))?;
            let rhs = image.apply_z_pattern(&ev);
            report.error_pairs_checked += 1;
            let exact = lhs.max_abs_diff(&rhs);
            if exact > TOLERANCE {
                report.error_property_exact_ok = false;
            }
            let ph = *phase.get_or_insert_with(|| deviation_up_to_phase(&lhs, &rhs).1);
            let d = lhs.max_abs_diff(&rhs.scale(ph));
            report.max_deviation = report.max_deviation.max(d);
            if d > TOLERANCE {
                report.error_property_ok = false;
                note(
                    &mut report,
                    format!("phi({y} + {ev}) != Z^{ev} phi({y}) (deviation {d:.3e})"),
                );
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::stabilizer::{to_standard_form, StabilizerCode};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pauli(s: &str) -> PauliVector {
        s.parse().unwrap()
    }

    #[test]
    fn pauli_conventions() {
        let zero = StateVector::zero_state(1);
        assert_eq!(zero.apply_pauli(&pauli("I")).unwrap(), zero);
        let y0 = zero.apply_pauli(&pauli("Y")).unwrap();
        assert_eq!(y0.amplitudes(), &[c(0.0, 0.0), c(0.0, 1.0)]);
        let one = StateVector::basis(1, 1);
        assert_eq!(
            one.apply_pauli(&pauli("Y")).unwrap().amplitudes(),
            &[c(0.0, -1.0), c(0.0, 0.0)]
        );
        assert_eq!(
            one.apply_pauli(&pauli("Z")).unwrap().amplitudes(),
            &[c(0.0, 0.0), c(-1.0, 0.0)]
        );
        assert_eq!(zero.apply_pauli(&pauli("X")).unwrap(), one);
        // qubit 0 is the most significant index bit
        assert_eq!(
            StateVector::zero_state(2)
                .apply_pauli(&pauli("XI"))
                .unwrap(),
            StateVector::basis(2, 2)
        );
        assert!(zero.apply_pauli(&pauli("XX")).is_err());
    }

    #[test]
    fn pauli_squares_to_plus_minus_identity() {
        // exhaustive over all Paulis on up to three qubits, on a generic state
        for n in 1..=3 {
            let amps: Vec<Complex64> = (0..1 << n)
                .map(|j| c(j as f64 + 1.0, 0.5 - j as f64))
                .collect();
            let psi = StateVector::from_amplitudes(n, amps).unwrap();
            for bits in 0u64..(1 << (2 * n)) {
                let p = PauliVector::from_symplectic(&BitVector::from_msb_u64(bits, 2 * n));
                let twice = psi.apply_pauli(&p).unwrap().apply_pauli(&p).unwrap();
                // Hermitian convention: the square is exactly +I
                assert!(twice.max_abs_diff(&psi) < 1e-12);
                assert!((psi.apply_pauli(&p).unwrap().norm() - psi.norm()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn c0_examples() {
        let sf = to_standard_form(&corpus::eight_three()).unwrap();
        let states = CodeStates::new(&sf, DEFAULT_QUBIT_CAP).unwrap();
        assert_eq!(states.c0().amplitudes().len(), 256);
        assert!((states.prefactor_norm() - 1.0).abs() < 1e-12);
        for g in sf.generators().rows() {
            assert!(states.c0().eigen_deviation(g, 1.0) < 1e-12);
        }

        let sf = to_standard_form(&StabilizerCode::from_paulis(&["Z"]).unwrap()).unwrap();
        assert_eq!(build_c0(&sf, 12).unwrap(), StateVector::zero_state(1));

        let sf = to_standard_form(&StabilizerCode::from_paulis(&["X"]).unwrap()).unwrap();
        let plus = build_c0(&sf, 12).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(
            plus.max_abs_diff(
                &StateVector::from_amplitudes(1, vec![c(h, 0.0), c(h, 0.0)]).unwrap()
            ) < 1e-12
        );
    }

    #[test]
    fn cx_examples() {
        let sf = to_standard_form(&corpus::eight_three()).unwrap();
        let states = CodeStates::new(&sf, 12).unwrap();
        assert_eq!(&states.cx(&BitVector::zeros(3)).unwrap(), states.c0());
        let basis: Vec<StateVector> = (0..8u64)
            .map(|x| states.cx(&BitVector::from_msb_u64(x, 3)).unwrap())
            .collect();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((a.inner(b).norm() - expected).abs() < 1e-9);
            }
        }
        let l = logical_phase_ops(&sf);
        let c100 = &basis[0b100];
        let eig: Vec<f64> = l
            .rows()
            .iter()
            .map(|row| {
                let p = PauliVector::from_symplectic(row);
                if c100.eigen_deviation(&p, 1.0) < 1e-9 {
                    1.0
                } else if c100.eigen_deviation(&p, -1.0) < 1e-9 {
                    -1.0
                } else {
                    0.0
                }
            })
            .collect();
        assert_eq!(eig, vec![-1.0, 1.0, 1.0]);
    }

    #[test]
    fn phi_examples() {
        let sf = to_standard_form(&corpus::eight_three()).unwrap();
        let states = CodeStates::new(&sf, 12).unwrap();
        assert_eq!(&states.phi(&BitVector::zeros(7)).unwrap(), states.c0());
        let y: BitVector = "1010011".parse().unwrap();
        let (dev, bad) = states.eigen_residual(&y, &states.phi(&y).unwrap());
        assert!(dev < 1e-9, "{bad:?}");
        assert!(states.phi(&BitVector::zeros(8)).is_err());
    }

    #[test]
    fn verify_phi_on_eight_three() {
        let sf = to_standard_form(&corpus::eight_three()).unwrap();
        let report = verify_phi(&sf, 12).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(report.error_property_exact_ok);
        assert_eq!(report.images, 128);
        assert_eq!(report.error_pairs_checked, 8 * 128);
        assert!(!report.sampled);
        assert!(report.max_deviation < 1e-9);
    }

    #[test]
    fn verify_phi_trivial_code() {
        let sf = to_standard_form(&StabilizerCode::from_paulis(&["ZII", "IZI", "IIZ"]).unwrap())
            .unwrap();
        assert_eq!(sf.k, 0);
        assert!(verify_phi(&sf, 12).unwrap().passed());
    }

    #[test]
    fn cap_is_enforced() {
        let sf = to_standard_form(&corpus::eight_three()).unwrap();
        assert!(matches!(verify_phi(&sf, 7), Err(Error::TooLarge { .. })));
        assert!(matches!(build_c0(&sf, 7), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn corrupted_phase_operators_are_detected() {
        let sf = to_standard_form(&corpus::eight_three()).unwrap();
        let l = logical_phase_ops(&sf);
        let nn = logical_bit_ops(&sf);
        for i in 0..l.nrows() {
            for j in 0..l.ncols() {
                let mut bad = l.clone();
                bad.set(i, j, !bad.get(i, j));
                let report = verify_phi_with_operators(&sf, 12, &bad, &nn).unwrap();
                assert!(!report.passed(), "flip L[{i}][{j}] undetected");
                assert!(!report.counterexamples.is_empty());
            }
        }
    }
}
