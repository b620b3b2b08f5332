//! Dense linear algebra over GF(2).
//!
//! Vectors are packed 64 bits per word, bit `i` living in word `i / 64` at
//! position `i % 64`. Row operations are word-parallel XORs. Unused high bits
//! of the last word are always zero, so word-level equality, popcount and
//! XOR never see stray bits.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; words_for(len)],
            len,
        }
    }

    /// The vector with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Builds a vector whose bit `i` is bit `len - 1 - i` of `value`, so the
    /// first position is the most significant bit. With this encoding integer
    /// order equals lexicographic order of the bit strings.
    pub fn from_msb_u64(value: u64, len: usize) -> Self {
        assert!(len <= WORD);
        let mut v = Self::zeros(len);
        for i in 0..len {
            if (value >> (len - 1 - i)) & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    /// Inverse of [`BitVector::from_msb_u64`].
    pub fn to_msb_u64(&self) -> u64 {
        assert!(self.len <= WORD);
        self.ones()
            .fold(0u64, |acc, i| acc | 1 << (self.len - 1 - i))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        assert!(
            index < self.len,
            "bit index {index} out of range {}",
            self.len
        );
        (self.words[index / WORD] >> (index % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        assert!(
            index < self.len,
            "bit index {index} out of range {}",
            self.len
        );
        let mask = 1u64 << (index % WORD);
        if value {
            self.words[index / WORD] |= mask;
        } else {
            self.words[index / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, index: usize) {
        assert!(
            index < self.len,
            "bit index {index} out of range {}",
            self.len
        );
        self.words[index / WORD] ^= 1u64 << (index % WORD);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product modulo two.
    ///
    /// # Panics
    /// If the lengths differ; mixing dimensions is a caller bug.
    #[inline]
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(
            self.len, other.len,
            "dot product of vectors with different lengths"
        );
        let parity = self
            .words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
        parity & 1 == 1
    }

    /// Fallible variant of [`BitVector::dot`].
    pub fn try_dot(&self, other: &BitVector) -> Result<bool> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch {
                context: "dot",
                expected: self.len,
                found: other.len,
            });
        }
        Ok(self.dot(other))
    }

    /// Indices of set bits in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Copy of positions `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> BitVector {
        assert!(start <= end && end <= self.len);
        let mut out = BitVector::zeros(end - start);
        for i in self.ones().filter(|&i| i >= start && i < end) {
            out.set(i - start, true);
        }
        out
    }

    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Lexicographic comparison of the bit strings, position 0 first.
    pub fn lex_cmp(&self, other: &BitVector) -> Ordering {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let first = diff.trailing_zeros();
                return if (a >> first) & 1 == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }

    /// Index of the lowest set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, w)| wi * WORD + w.trailing_zeros() as usize)
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    /// Parses a string over `{0,1}`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (col, ch) in s.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::Parse {
                        line: 1,
                        column: col + 1,
                        message: format!("unexpected character {c:?} in binary string"),
                    })
                }
            }
        }
        Ok(BitVector::from_bools(&bits))
    }
}

/// One step of a row-reduction trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum RowOp {
    Swap(usize, usize),
    /// Row `src` is added into row `dst`.
    Add {
        src: usize,
        dst: usize,
    },
}

impl RowOp {
    pub fn apply(&self, rows: &mut [BitVector]) {
        match *self {
            RowOp::Swap(a, b) => rows.swap(a, b),
            RowOp::Add { src, dst } => {
                assert_ne!(src, dst);
                let src_row = rows[src].clone();
                rows[dst].xor_assign(&src_row);
            }
        }
    }
}

/// Output of [`BitMatrix::rref`].
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: BitMatrix,
    pub pivots: Vec<usize>,
    pub trace: Vec<RowOp>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// A `rows x cols` matrix over GF(2), stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<BitVector>,
    cols: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![BitVector::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
            cols: n,
        }
    }

    /// Builds a matrix from rows of equal length. `cols` is needed when
    /// `rows` is empty.
    pub fn from_rows(rows: Vec<BitVector>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                context: "matrix row",
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { rows, cols })
    }

    /// Parses whitespace- or newline-separated binary rows such as `"101 011"`.
    pub fn parse_rows(text: &str) -> Result<Self> {
        let rows = text
            .split([';', '\n', ',', ' '])
            .filter(|s| !s.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<BitVector>>>()?;
        let cols = rows.first().map_or(0, BitVector::len);
        Self::from_rows(rows, cols)
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn row(&self, r: usize) -> &BitVector {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                out.rows[c].set(r, true);
            }
        }
        out
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != rhs.nrows() {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                found: rhs.nrows(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BitVector::zeros(rhs.cols);
                for j in row.ones() {
                    acc.xor_assign(&rhs.rows[j]);
                }
                acc
            })
            .collect();
        Ok(BitMatrix {
            rows,
            cols: rhs.cols,
        })
    }

    /// Entrywise sum (XOR).
    pub fn add(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        if self.nrows() != rhs.nrows() || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix sum",
                expected: self.nrows() * self.cols,
                found: rhs.nrows() * rhs.cols,
            });
        }
        let rows = self
            .rows
            .iter()
            .zip(&rhs.rows)
            .map(|(a, b)| a.xor(b))
            .collect();
        Ok(BitMatrix {
            rows,
            cols: self.cols,
        })
    }

    /// Product of a row vector with this matrix: `v * M`.
    pub fn left_mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.nrows() {
            return Err(Error::DimensionMismatch {
                context: "vector-matrix product",
                expected: self.nrows(),
                found: v.len(),
            });
        }
        let mut acc = BitVector::zeros(self.cols);
        for i in v.ones() {
            acc.xor_assign(&self.rows[i]);
        }
        Ok(acc)
    }

    /// Copy of the block `rows r0..r1`, `cols c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> BitMatrix {
        BitMatrix {
            rows: self.rows[r0..r1].iter().map(|r| r.slice(c0, c1)).collect(),
            cols: c1 - c0,
        }
    }

    pub fn hstack(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        if self.nrows() != rhs.nrows() {
            return Err(Error::DimensionMismatch {
                context: "hstack",
                expected: self.nrows(),
                found: rhs.nrows(),
            });
        }
        Ok(BitMatrix {
            rows: self
                .rows
                .iter()
                .zip(&rhs.rows)
                .map(|(a, b)| a.concat(b))
                .collect(),
            cols: self.cols + rhs.cols,
        })
    }

    pub fn vstack(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                context: "vstack",
                expected: self.cols,
                found: rhs.cols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(rhs.rows.iter().cloned());
        Ok(BitMatrix {
            rows,
            cols: self.cols,
        })
    }

    /// Reduced row-echelon form with its pivot columns and a replayable
    /// trace. Pivot rule: leftmost column that still has a one at or below
    /// the current pivot row, and within it the lowest-indexed such row.
    pub fn rref(&self) -> Rref {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut trace = Vec::new();
        let mut pr = 0;
        for c in 0..self.cols {
            if pr == rows.len() {
                break;
            }
            let Some(found) = (pr..rows.len()).find(|&r| rows[r].get(c)) else {
                continue;
            };
            if found != pr {
                let op = RowOp::Swap(found, pr);
                op.apply(&mut rows);
                trace.push(op);
            }
            for r in 0..rows.len() {
                if r != pr && rows[r].get(c) {
                    let op = RowOp::Add { src: pr, dst: r };
                    op.apply(&mut rows);
                    trace.push(op);
                }
            }
            pivots.push(c);
            pr += 1;
        }
        Rref {
            matrix: BitMatrix {
                rows,
                cols: self.cols,
            },
            pivots,
            trace,
        }
    }

    /// Replays a row-operation trace.
    pub fn apply_row_ops(&self, ops: &[RowOp]) -> BitMatrix {
        let mut rows = self.rows.clone();
        for op in ops {
            op.apply(&mut rows);
        }
        BitMatrix {
            rows,
            cols: self.cols,
        }
    }

    pub fn rank(&self) -> usize {
        let mut basis = SpanBasis::new(self.cols);
        self.rows.iter().filter(|r| basis.insert(r)).count()
    }

    /// Basis of the right null space `{ v : M v = 0 }`, one vector per row.
    pub fn kernel(&self) -> BitMatrix {
        let rref = self.rref();
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &p in &rref.pivots {
                s[p] = true;
            }
            s
        };
        let rows = (0..self.cols)
            .filter(|&c| !pivot_set[c])
            .map(|free| {
                let mut v = BitVector::unit(self.cols, free);
                for (i, &p) in rref.pivots.iter().enumerate() {
                    if rref.matrix.get(i, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        BitMatrix {
            rows,
            cols: self.cols,
        }
    }

    /// Swaps columns `a` and `b`.
    pub fn swap_cols(&self, a: usize, b: usize) -> BitMatrix {
        let mut out = self.clone();
        if a != b {
            for row in &mut out.rows {
                let (x, y) = (row.get(a), row.get(b));
                row.set(a, y);
                row.set(b, x);
            }
        }
        out
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.nrows(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

/// Incrementally maintained echelon basis for span membership tests.
///
/// Each stored vector has a distinct leading (lowest-index) one, and no other
/// stored vector has a one at that position.
#[derive(Debug, Clone)]
pub struct SpanBasis {
    len: usize,
    basis: Vec<(usize, BitVector)>,
}

impl SpanBasis {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            basis: Vec::new(),
        }
    }

    pub fn from_rows<'a>(len: usize, rows: impl IntoIterator<Item = &'a BitVector>) -> Self {
        let mut b = Self::new(len);
        for r in rows {
            b.insert(r);
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Remainder of `v` after eliminating every stored pivot.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut v = v.clone();
        self.reduce_in_place(&mut v);
        v
    }

    #[inline]
    pub fn reduce_in_place(&self, v: &mut BitVector) {
        assert_eq!(v.len(), self.len);
        for (p, b) in &self.basis {
            if v.get(*p) {
                v.xor_assign(b);
            }
        }
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the basis; returns false when it was already in the span.
    pub fn insert(&mut self, v: &BitVector) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.first_one() else {
            return false;
        };
        for (_, b) in &mut self.basis {
            if b.get(p) {
                b.xor_assign(&r);
            }
        }
        self.basis.push((p, r));
        true
    }
}
