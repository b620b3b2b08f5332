//! Stabilizer codes in the binary symplectic representation.
//!
//! A generator `U_1 ⊗ … ⊗ U_n` is stored as the pair `(a|b)` with `a_i = 1`
//! for σx or σy and `b_i = 1` for σz or σy. Phases are dropped; every
//! generator is taken with phase +1.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, SpanBasis};

/// An n-qubit Pauli operator modulo phase.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliVector {
    x: BitVector,
    z: BitVector,
}

impl PauliVector {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
        }
    }

    pub fn from_parts(x: BitVector, z: BitVector) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                context: "pauli halves",
                expected: x.len(),
                found: z.len(),
            });
        }
        Ok(Self { x, z })
    }

    /// Splits a `2n`-bit vector `(a|b)`.
    pub fn from_symplectic(v: &BitVector) -> Self {
        assert!(v.len().is_multiple_of(2));
        let n = v.len() / 2;
        Self {
            x: v.slice(0, n),
            z: v.slice(n, 2 * n),
        }
    }

    /// Parses a string over `{I,X,Y,Z}`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: "empty Pauli string".into(),
            });
        }
        let n = text.chars().count();
        let mut p = Self::identity(n);
        for (i, ch) in text.chars().enumerate() {
            let (a, b) = match ch {
                'I' => (false, false),
                'X' => (true, false),
                'Y' => (true, true),
                'Z' => (false, true),
                other => {
                    return Err(Error::Parse {
                        line: 1,
                        column: i + 1,
                        message: format!("invalid Pauli symbol {other:?}"),
                    })
                }
            };
            p.x.set(i, a);
            p.z.set(i, b);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// X component `a`.
    pub fn x(&self) -> &BitVector {
        &self.x
    }

    /// Z component `b`.
    pub fn z(&self) -> &BitVector {
        &self.z
    }

    /// The `2n`-bit vector `(a|b)`.
    pub fn to_symplectic(&self) -> BitVector {
        self.x.concat(&self.z)
    }

    /// `(a·b') ⊕ (a'·b)`: false when the operators commute.
    ///
    /// # Panics
    /// If the qubit counts differ.
    pub fn symplectic_product(&self, other: &PauliVector) -> bool {
        self.x.dot(&other.z) ^ other.x.dot(&self.z)
    }

    pub fn try_symplectic_product(&self, other: &PauliVector) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                context: "symplectic product",
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(self.symplectic_product(other))
    }

    pub fn commutes_with(&self, other: &PauliVector) -> bool {
        !self.symplectic_product(other)
    }

    /// Product modulo phase.
    pub fn mul(&self, other: &PauliVector) -> PauliVector {
        PauliVector {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
        }
    }

    /// Number of non-identity tensor factors.
    pub fn weight(&self) -> usize {
        self.x
            .words()
            .iter()
            .zip(self.z.words())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    pub fn symbol(&self, qubit: usize) -> char {
        match (self.x.get(qubit), self.z.get(qubit)) {
            (false, false) => 'I',
            (true, false) => 'X',
            (true, true) => 'Y',
            (false, true) => 'Z',
        }
    }
}

impl FromStr for PauliVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for PauliVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n() {
            write!(f, "{}", self.symbol(q))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self} = {}|{})", self.x, self.z)
    }
}

/// Operations that leave the error-correcting behaviour of a code unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ElementaryOp {
    /// Generator `src` is multiplied into generator `dst`.
    RowAddition { src: usize, dst: usize },
    /// Qubit positions `a` and `b` are exchanged in both halves.
    ColumnTransposition { a: usize, b: usize },
    /// X and Z columns of one qubit are exchanged (σx ↔ σz).
    ColumnSwitch { qubit: usize },
    /// The Z column of one qubit is added into its X column (σy ↔ σz).
    ColumnAddition { qubit: usize },
}

impl fmt::Display for ElementaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ElementaryOp::RowAddition { src, dst } => write!(f, "row-add {src}->{dst}"),
            ElementaryOp::ColumnTransposition { a, b } => write!(f, "col-transpose {a}<->{b}"),
            ElementaryOp::ColumnSwitch { qubit } => write!(f, "col-switch {qubit}"),
            ElementaryOp::ColumnAddition { qubit } => write!(f, "col-add {qubit}"),
        }
    }
}

/// Outcome of [`StabilizerCode::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub n: usize,
    pub m: usize,
    pub rank: usize,
    /// Every anticommuting generator pair `(i, j)` with `i < j`, zero-based.
    pub anticommuting_pairs: Vec<(usize, usize)>,
    /// Generators that lie in the span of the ones before them.
    pub dependent_rows: Vec<usize>,
}

impl ValidationReport {
    pub fn independent(&self) -> bool {
        self.dependent_rows.is_empty()
    }

    pub fn commuting(&self) -> bool {
        self.anticommuting_pairs.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.independent() && self.commuting()
    }

    fn summary(&self) -> String {
        let mut parts = Vec::new();
        if !self.commuting() {
            parts.push(format!(
                "anticommuting pairs {:?}",
                self.anticommuting_pairs
            ));
        }
        if !self.independent() {
            parts.push(format!("dependent rows {:?}", self.dependent_rows));
        }
        parts.join("; ")
    }
}

/// An `m x 2n` generator matrix. Constructed values only guarantee uniform
/// dimensions; commutativity and independence are reported by `validate`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StabilizerCode {
    n: usize,
    rows: Vec<PauliVector>,
}

impl StabilizerCode {
    pub fn new(n: usize, rows: Vec<PauliVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.n() != n) {
            return Err(Error::DimensionMismatch {
                context: "generator length",
                expected: n,
                found: bad.n(),
            });
        }
        Ok(Self { n, rows })
    }

    pub fn from_paulis(texts: &[&str]) -> Result<Self> {
        let rows = texts
            .iter()
            .map(|t| PauliVector::parse(t))
            .collect::<Result<Vec<_>>>()?;
        let n = rows.first().map_or(0, PauliVector::n);
        Self::new(n, rows)
    }

    /// From an `m x 2n` matrix `(X|Z)`.
    pub fn from_check_matrix(matrix: &BitMatrix) -> Result<Self> {
        if !matrix.ncols().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                context: "check matrix width (must be even)",
                expected: matrix.ncols() + 1,
                found: matrix.ncols(),
            });
        }
        let rows = matrix
            .rows()
            .iter()
            .map(PauliVector::from_symplectic)
            .collect();
        Self::new(matrix.ncols() / 2, rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    /// Encoded qubits `n - m`; zero when there are more generators than qubits.
    pub fn k(&self) -> usize {
        self.n.saturating_sub(self.m())
    }

    pub fn rows(&self) -> &[PauliVector] {
        &self.rows
    }

    pub fn check_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(
            self.rows.iter().map(PauliVector::to_symplectic).collect(),
            2 * self.n,
        )
        .expect("uniform rows")
    }

    pub fn x_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(self.rows.iter().map(|r| r.x.clone()).collect(), self.n)
            .expect("uniform rows")
    }

    pub fn z_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(self.rows.iter().map(|r| r.z.clone()).collect(), self.n)
            .expect("uniform rows")
    }

    pub fn validate(&self) -> ValidationReport {
        let mut anticommuting_pairs = Vec::new();
        for i in 0..self.m() {
            for j in i + 1..self.m() {
                if self.rows[i].symplectic_product(&self.rows[j]) {
                    anticommuting_pairs.push((i, j));
                }
            }
        }
        let mut basis = SpanBasis::new(2 * self.n);
        let dependent_rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !basis.insert(&r.to_symplectic()))
            .map(|(i, _)| i)
            .collect();
        ValidationReport {
            n: self.n,
            m: self.m(),
            rank: basis.dim(),
            anticommuting_pairs,
            dependent_rows,
        }
    }

    /// Applies one elementary operation, returning the transformed code.
    pub fn apply(&self, op: ElementaryOp) -> Result<StabilizerCode> {
        let mut out = self.clone();
        out.apply_in_place(op)?;
        Ok(out)
    }

    pub fn apply_all(&self, ops: &[ElementaryOp]) -> Result<StabilizerCode> {
        let mut out = self.clone();
        for &op in ops {
            out.apply_in_place(op)?;
        }
        Ok(out)
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::DimensionMismatch {
                context: "qubit index",
                expected: self.n,
                found: q,
            });
        }
        Ok(())
    }

    fn apply_in_place(&mut self, op: ElementaryOp) -> Result<()> {
        match op {
            ElementaryOp::RowAddition { src, dst } => {
                let m = self.m();
                if src >= m || dst >= m || src == dst {
                    return Err(Error::DimensionMismatch {
                        context: "row addition indices",
                        expected: m,
                        found: src.max(dst),
                    });
                }
                let s = self.rows[src].clone();
                self.rows[dst] = self.rows[dst].mul(&s);
            }
            ElementaryOp::ColumnTransposition { a, b } => {
                self.check_qubit(a)?;
                self.check_qubit(b)?;
                for row in &mut self.rows {
                    for half in [&mut row.x, &mut row.z] {
                        let (va, vb) = (half.get(a), half.get(b));
                        half.set(a, vb);
                        half.set(b, va);
                    }
                }
            }
            ElementaryOp::ColumnSwitch { qubit } => {
                self.check_qubit(qubit)?;
                for row in &mut self.rows {
                    let (xa, zb) = (row.x.get(qubit), row.z.get(qubit));
                    row.x.set(qubit, zb);
                    row.z.set(qubit, xa);
                }
            }
            ElementaryOp::ColumnAddition { qubit } => {
                self.check_qubit(qubit)?;
                for row in &mut self.rows {
                    if row.z.get(qubit) {
                        row.x.flip(qubit);
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for StabilizerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for StabilizerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StabilizerCode")
            .field("n", &self.n)
            .field(
                "rows",
                &self.rows.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// A generator matrix in the block form
///
/// ```text
///        s    k    r        s    k    r
///   s ( I    A1   A2   |   B1   B2   B3 )
///   r ( 0    0    0    |   C1   C2   I  )
/// ```
///
/// together with the permutation and operation trace that produced it. The
/// blocks are the source of truth: [`StandardForm::generators`] rebuilds the
/// code from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardForm {
    pub s: usize,
    pub k: usize,
    pub r: usize,
    pub a1: BitMatrix,
    pub a2: BitMatrix,
    pub b1: BitMatrix,
    pub b2: BitMatrix,
    pub b3: BitMatrix,
    pub c1: BitMatrix,
    pub c2: BitMatrix,
    /// `qubit_permutation[i]` is the original (zero-based) qubit now at position `i`.
    pub qubit_permutation: Vec<usize>,
    pub op_trace: Vec<ElementaryOp>,
}

impl StandardForm {
    pub fn n(&self) -> usize {
        self.s + self.k + self.r
    }

    pub fn m(&self) -> usize {
        self.s + self.r
    }

    /// Reassembles the standardized generators from the blocks.
    pub fn generators(&self) -> StabilizerCode {
        let (s, k, r, n) = (self.s, self.k, self.r, self.n());
        let mut x = BitMatrix::zeros(s + r, n);
        let mut z = BitMatrix::zeros(s + r, n);
        for i in 0..s {
            x.set(i, i, true);
            for j in 0..k {
                x.set(i, s + j, self.a1.get(i, j));
                z.set(i, s + j, self.b2.get(i, j));
            }
            for j in 0..r {
                x.set(i, s + k + j, self.a2.get(i, j));
                z.set(i, s + k + j, self.b3.get(i, j));
            }
            for j in 0..s {
                z.set(i, j, self.b1.get(i, j));
            }
        }
        for i in 0..r {
            for j in 0..s {
                z.set(s + i, j, self.c1.get(i, j));
            }
            for j in 0..k {
                z.set(s + i, s + j, self.c2.get(i, j));
            }
            z.set(s + i, s + k + i, true);
        }
        let rows = x
            .into_rows()
            .into_iter()
            .zip(z.into_rows())
            .map(|(a, b)| PauliVector::from_parts(a, b).expect("equal halves"))
            .collect();
        StabilizerCode::new(n, rows).expect("uniform rows")
    }

    /// Reads the blocks off a code already in standard form with the given
    /// parameters. Returns `None` when the identity and zero blocks are not
    /// where they should be.
    pub fn from_standardized(code: &StabilizerCode, s: usize, r: usize) -> Option<StandardForm> {
        let n = code.n();
        if s + r != code.m() || s + r > n {
            return None;
        }
        let k = n - s - r;
        let x = code.x_matrix();
        let z = code.z_matrix();
        let expect_x =
            x.block(0, s, 0, s) == BitMatrix::identity(s) && x.block(s, s + r, 0, n).is_zero();
        let expect_z = z.block(s, s + r, s + k, n) == BitMatrix::identity(r);
        if !(expect_x && expect_z) {
            return None;
        }
        Some(StandardForm {
            s,
            k,
            r,
            a1: x.block(0, s, s, s + k),
            a2: x.block(0, s, s + k, n),
            b1: z.block(0, s, 0, s),
            b2: z.block(0, s, s, s + k),
            b3: z.block(0, s, s + k, n),
            c1: z.block(s, s + r, 0, s),
            c2: z.block(s, s + r, s, s + k),
            qubit_permutation: (0..n).collect(),
            op_trace: Vec::new(),
        })
    }
}

struct Reducer {
    code: StabilizerCode,
    perm: Vec<usize>,
    trace: Vec<ElementaryOp>,
}

impl Reducer {
    fn op(&mut self, op: ElementaryOp) {
        self.code.apply_in_place(op).expect("indices in range");
        if let ElementaryOp::ColumnTransposition { a, b } = op {
            self.perm.swap(a, b);
        }
        self.trace.push(op);
    }

    /// Row exchange expressed as three row additions.
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.op(ElementaryOp::RowAddition { src: j, dst: i });
            self.op(ElementaryOp::RowAddition { src: i, dst: j });
            self.op(ElementaryOp::RowAddition { src: j, dst: i });
        }
    }

    fn transpose(&mut self, a: usize, b: usize) {
        if a != b {
            self.op(ElementaryOp::ColumnTransposition { a, b });
        }
    }
}

/// Brings a valid code into standard form using row additions and column
/// transpositions.
///
/// Pivot rules: in the X half the pivot column is the leftmost one with a
/// one at or below the pivot row (lowest such row). In the Z half of the
/// X-free generators, pivot `q` goes to column `s + k + q`; that column is
/// used if eligible, otherwise the smallest eligible unused column is
/// transposed into place. Codes already in standard form come back unchanged.
pub fn to_standard_form(code: &StabilizerCode) -> Result<StandardForm> {
    let report = code.validate();
    if !report.is_valid() {
        return Err(Error::InvalidCode(report.summary()));
    }
    standardize_unchecked(code)
}

/// [`to_standard_form`] without the validity check. The block structure is
/// still produced when the elimination succeeds, so failure-analysis tools
/// can inspect codes that violate commutativity.
pub fn standardize_unchecked(code: &StabilizerCode) -> Result<StandardForm> {
    let n = code.n();
    let m = code.m();
    let mut red = Reducer {
        code: code.clone(),
        perm: (0..n).collect(),
        trace: Vec::new(),
    };

    // Gaussian elimination on the X half.
    let mut s = 0;
    while s < m {
        let pivot =
            (s..n).find_map(|c| (s..m).find(|&r| red.code.rows[r].x.get(c)).map(|r| (r, c)));
        let Some((row, col)) = pivot else { break };
        red.swap_rows(s, row);
        red.transpose(s, col);
        for i in 0..m {
            if i != s && red.code.rows[i].x.get(s) {
                red.op(ElementaryOp::RowAddition { src: s, dst: i });
            }
        }
        s += 1;
    }

    // Elimination on the Z half of the remaining X-free rows, restricted to
    // qubits s..n and to row additions among those rows.
    let r = m - s;
    if m > n {
        return Err(Error::InvalidCode(format!("{m} generators on {n} qubits")));
    }
    let k = n - m;
    for q in 0..r {
        let row_idx = s + q;
        let target = s + k + q;
        let eligible = |red: &Reducer, c: usize| (row_idx..m).find(|&i| red.code.rows[i].z.get(c));
        let choice = eligible(&red, target).map(|i| (i, target)).or_else(|| {
            (s..n)
                .filter(|&c| c < s + k || c > target)
                .find_map(|c| eligible(&red, c).map(|i| (i, c)))
        });
        let Some((row, col)) = choice else {
            return Err(Error::StandardFormObstruction {
                s,
                remaining: r - q,
            });
        };
        red.swap_rows(row_idx, row);
        red.transpose(target, col);
        for i in s..m {
            if i != row_idx && red.code.rows[i].z.get(target) {
                red.op(ElementaryOp::RowAddition {
                    src: row_idx,
                    dst: i,
                });
            }
        }
    }

    let mut sf = StandardForm::from_standardized(&red.code, s, r)
        .expect("elimination produced the standard block shape");
    sf.qubit_permutation = red.perm;
    sf.op_trace = red.trace;
    Ok(sf)
}

/// Result of [`ensure_positive_r`].
#[derive(Debug, Clone)]
pub struct EnsureR {
    pub code: StabilizerCode,
    pub ops: Vec<ElementaryOp>,
    pub already_positive: bool,
}

/// Default number of column operations tried by [`ensure_positive_r`].
pub const DEFAULT_ENSURE_R_DEPTH: usize = 2;

/// The `r` parameter of a code: generators minus the rank of the X half.
pub fn r_parameter(code: &StabilizerCode) -> usize {
    code.m() - code.x_matrix().rank()
}

/// Searches, breadth first, for a sequence of at most `max_depth` column
/// switches and column additions after which the standard form has `r >= 1`.
/// Sequences are tried in order of length, then lexicographically over
/// `switch 0, add 0, switch 1, add 1, …`.
pub fn ensure_positive_r(code: &StabilizerCode, max_depth: usize) -> Result<EnsureR> {
    let report = code.validate();
    if !report.is_valid() {
        return Err(Error::InvalidCode(report.summary()));
    }
    if r_parameter(code) >= 1 {
        return Ok(EnsureR {
            code: code.clone(),
            ops: Vec::new(),
            already_positive: true,
        });
    }
    let moves: Vec<ElementaryOp> = (0..code.n())
        .flat_map(|q| {
            [
                ElementaryOp::ColumnSwitch { qubit: q },
                ElementaryOp::ColumnAddition { qubit: q },
            ]
        })
        .collect();
    let mut frontier: VecDeque<(StabilizerCode, Vec<ElementaryOp>)> = VecDeque::new();
    frontier.push_back((code.clone(), Vec::new()));
    while let Some((current, ops)) = frontier.pop_front() {
        if ops.len() == max_depth {
            continue;
        }
        for &mv in &moves {
            let next = current.apply(mv)?;
            let mut seq = ops.clone();
            seq.push(mv);
            if r_parameter(&next) >= 1 {
                return Ok(EnsureR {
                    code: next,
                    ops: seq,
                    already_positive: false,
                });
            }
            frontier.push_back((next, seq));
        }
    }
    Err(Error::SearchExhausted { depth: max_depth })
}

fn stack_rows(n: usize, rows: impl IntoIterator<Item = BitVector>) -> BitMatrix {
    BitMatrix::from_rows(rows.into_iter().collect(), 2 * n).expect("uniform rows")
}

/// The `k x 2n` matrix `(0 | I | C2ᵀ ‖ D | 0 | 0)` with `D = B2ᵀ + C2ᵀ B3ᵀ`.
pub fn logical_phase_ops(sf: &StandardForm) -> BitMatrix {
    let (s, k, r, n) = (sf.s, sf.k, sf.r, sf.n());
    let c2t = sf.c2.transpose();
    let d = sf
        .b2
        .transpose()
        .add(
            &c2t.mul(&sf.b3.transpose())
                .expect("C2ᵀ is k x r, B3ᵀ is r x s"),
        )
        .expect("both k x s");
    stack_rows(
        n,
        (0..k).map(|i| {
            let mut v = BitVector::zeros(2 * n);
            v.set(s + i, true);
            for j in 0..r {
                v.set(s + k + j, c2t.get(i, j));
            }
            for j in 0..s {
                v.set(n + j, d.get(i, j));
            }
            v
        }),
    )
}

/// The `k x 2n` matrix `(0 | 0 | 0 ‖ A1ᵀ | I | 0)`.
pub fn logical_bit_ops(sf: &StandardForm) -> BitMatrix {
    let (s, k, n) = (sf.s, sf.k, sf.n());
    let a1t = sf.a1.transpose();
    stack_rows(
        n,
        (0..k).map(|i| {
            let mut v = BitVector::zeros(2 * n);
            for j in 0..s {
                v.set(n + j, a1t.get(i, j));
            }
            v.set(n + s + i, true);
            v
        }),
    )
}

/// Outcome of [`verify_logical_algebra`].
#[derive(Debug, Clone, Serialize)]
pub struct LogicalAlgebraReport {
    /// G_1…G_m, L_1…L_k are n independent commuting operators.
    pub phase_set_ok: bool,
    /// G_1…G_m, N_1…N_k are n independent commuting operators.
    pub bit_set_ok: bool,
    /// N_i and L_j anticommute exactly when i = j.
    pub pairing_ok: bool,
    pub failures: Vec<String>,
}

impl LogicalAlgebraReport {
    pub fn passed(&self) -> bool {
        self.phase_set_ok && self.bit_set_ok && self.pairing_ok
    }
}

fn check_commuting_basis(
    label: &str,
    ops: &[PauliVector],
    n: usize,
    failures: &mut Vec<String>,
) -> bool {
    let mut ok = true;
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            if ops[i].symplectic_product(&ops[j]) {
                failures.push(format!("{label}: operators {i} and {j} anticommute"));
                ok = false;
            }
        }
    }
    let rank = SpanBasis::from_rows(
        2 * n,
        ops.iter()
            .map(PauliVector::to_symplectic)
            .collect::<Vec<_>>()
            .iter(),
    )
    .dim();
    if ops.len() != n || rank != n {
        failures.push(format!(
            "{label}: {} operators of rank {rank}, expected {n}",
            ops.len()
        ));
        ok = false;
    }
    ok
}

/// Checks the commutation algebra of the generators with the logical
/// operators of [`logical_phase_ops`] and [`logical_bit_ops`].
pub fn verify_logical_algebra(sf: &StandardForm) -> LogicalAlgebraReport {
    verify_logical_algebra_with(sf, &logical_phase_ops(sf), &logical_bit_ops(sf))
}

/// As [`verify_logical_algebra`] with caller-supplied L and N matrices.
pub fn verify_logical_algebra_with(
    sf: &StandardForm,
    phase_ops: &BitMatrix,
    bit_ops: &BitMatrix,
) -> LogicalAlgebraReport {
    let n = sf.n();
    let gens = sf.generators();
    let l: Vec<PauliVector> = phase_ops
        .rows()
        .iter()
        .map(PauliVector::from_symplectic)
        .collect();
    let nn: Vec<PauliVector> = bit_ops
        .rows()
        .iter()
        .map(PauliVector::from_symplectic)
        .collect();
    let mut failures = Vec::new();

    let with_l: Vec<PauliVector> = gens
        .rows()
        .iter()
        .cloned()
        .chain(l.iter().cloned())
        .collect();
    let phase_set_ok = check_commuting_basis("G+L", &with_l, n, &mut failures);
    let with_n: Vec<PauliVector> = gens
        .rows()
        .iter()
        .cloned()
        .chain(nn.iter().cloned())
        .collect();
    let bit_set_ok = check_commuting_basis("G+N", &with_n, n, &mut failures);

    let mut pairing_ok = l.len() == nn.len();
    for (i, ni) in nn.iter().enumerate() {
        for (j, lj) in l.iter().enumerate() {
            if ni.symplectic_product(lj) != (i == j) {
                failures.push(format!("N{i} vs L{j}: wrong commutation"));
                pairing_ok = false;
            }
        }
    }
    LogicalAlgebraReport {
        phase_set_ok,
        bit_set_ok,
        pairing_ok,
        failures,
    }
}

/// Result of [`quantum_distance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum QuantumDistance {
    Exact(usize),
    /// No logical operator of weight at most the cap exists.
    ExceedsCap(usize),
}

impl QuantumDistance {
    /// Correctable errors `⌊(d-1)/2⌋`, when the distance is known.
    pub fn correctable(&self) -> Option<usize> {
        match *self {
            QuantumDistance::Exact(d) => Some((d - 1) / 2),
            QuantumDistance::ExceedsCap(_) => None,
        }
    }
}

impl fmt::Display for QuantumDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantumDistance::Exact(d) => write!(f, "{d}"),
            QuantumDistance::ExceedsCap(c) => write!(f, "> {c}"),
        }
    }
}

struct DistanceSearch<'a> {
    n: usize,
    /// Syndrome contributed by X, Y, Z on each qubit.
    syndromes: Vec<[BitVector; 3]>,
    span: &'a SpanBasis,
}

impl DistanceSearch<'_> {
    /// Depth-first over supports `q_1 < … < q_w` and the three Paulis on each.
    fn search(
        &self,
        start: usize,
        remaining: usize,
        syndrome: &BitVector,
        support: &mut Vec<(usize, usize)>,
    ) -> bool {
        if remaining == 0 {
            if !syndrome.is_zero() {
                return false;
            }
            let mut e = BitVector::zeros(2 * self.n);
            for &(q, p) in support.iter() {
                if p != 2 {
                    e.set(q, true);
                }
                if p != 0 {
                    e.set(self.n + q, true);
                }
            }
            return !self.span.contains(&e);
        }
        for q in start..=self.n - remaining {
            for p in 0..3 {
                let next = syndrome.xor(&self.syndromes[q][p]);
                support.push((q, p));
                let hit = self.search(q + 1, remaining - 1, &next, support);
                support.pop();
                if hit {
                    return true;
                }
            }
        }
        false
    }
}

/// Minimum weight of a Pauli operator that commutes with every generator but
/// is not in the generator span, searched by increasing weight up to
/// `weight_cap`.
pub fn quantum_distance(code: &StabilizerCode, weight_cap: usize) -> Result<QuantumDistance> {
    let n = code.n();
    let span = SpanBasis::from_rows(
        2 * n,
        code.rows()
            .iter()
            .map(PauliVector::to_symplectic)
            .collect::<Vec<_>>()
            .iter(),
    );
    if span.dim() >= n {
        return Err(Error::NoEncodedQubits);
    }
    let m = code.m();
    let syndromes = (0..n)
        .map(|q| {
            let mut sx = BitVector::zeros(m);
            let mut sz = BitVector::zeros(m);
            for (i, g) in code.rows().iter().enumerate() {
                // X_q anticommutes with generators having Z support on q, and vice versa.
                sx.set(i, g.z().get(q));
                sz.set(i, g.x().get(q));
            }
            let sy = sx.xor(&sz);
            [sx, sy, sz]
        })
        .collect();
    let search = DistanceSearch {
        n,
        syndromes,
        span: &span,
    };
    let zero = BitVector::zeros(m);
    for w in 1..=weight_cap.min(n) {
        if search.search(0, w, &zero, &mut Vec::with_capacity(w)) {
            return Ok(QuantumDistance::Exact(w));
        }
    }
    Ok(QuantumDistance::ExceedsCap(weight_cap))
}
