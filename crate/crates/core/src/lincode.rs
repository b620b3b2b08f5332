//! Classical binary linear codes: encoding, exhaustive distance, complete
//! nearest-codeword decoding and binary-symmetric-channel performance.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Largest `k` for which all `2^k` codewords are enumerated.
pub const MAX_ENUMERATION_K: usize = 28;
/// Largest block length for the exact channel computation.
pub const MAX_EXACT_N: usize = 24;
/// Largest redundancy `n - k` for which a coset-leader table is built.
pub const MAX_SYNDROME_BITS: usize = 20;

/// A `k x n` generator matrix with independent rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    matrix: BitMatrix,
}

impl GeneratorMatrix {
    pub fn new(matrix: BitMatrix) -> Result<Self> {
        if matrix.nrows() == 0 {
            return Err(Error::NoEncodedQubits);
        }
        let rank = matrix.rank();
        if rank != matrix.nrows() {
            return Err(Error::RankDeficient {
                rank,
                rows: matrix.nrows(),
            });
        }
        Ok(Self { matrix })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(BitMatrix::parse_rows(text)?)
    }

    pub fn k(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn n(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    /// `x_1 M_1 ⊕ … ⊕ x_k M_k`.
    pub fn encode(&self, message: &BitVector) -> Result<BitVector> {
        self.matrix.left_mul_vec(message)
    }

    /// A full-rank `(n-k) x n` matrix `H` with `G Hᵀ = 0`.
    pub fn parity_check(&self) -> BitMatrix {
        self.matrix.kernel()
    }

    fn check_enumerable(&self) -> Result<()> {
        if self.k() > MAX_ENUMERATION_K {
            return Err(Error::TooLarge {
                what: "k",
                value: self.k(),
                limit: MAX_ENUMERATION_K,
            });
        }
        Ok(())
    }

    /// Histogram of codeword weights over all `2^k` codewords.
    pub fn weight_enumerator(&self) -> Result<WeightEnumerator> {
        self.check_enumerable()?;
        let k = self.k();
        let total: u64 = 1 << k;
        let chunk: u64 = 1 << 14;
        let rows = self.matrix.rows();
        let counts = (0..total.div_ceil(chunk))
            .into_par_iter()
            .map(|c| {
                let start = c * chunk;
                let end = (start + chunk).min(total);
                let mut counts = vec![0u64; self.n() + 1];
                // Gray-code walk: codeword for gray(i) differs from gray(i-1) in one row
                let gray = |i: u64| i ^ (i >> 1);
                let mut word = BitVector::zeros(self.n());
                let g0 = gray(start);
                for (j, row) in rows.iter().enumerate() {
                    if (g0 >> j) & 1 == 1 {
                        word.xor_assign(row);
                    }
                }
                counts[word.weight()] += 1;
                for i in start + 1..end {
                    word.xor_assign(&rows[i.trailing_zeros() as usize]);
                    counts[word.weight()] += 1;
                }
                counts
            })
            .reduce(
                || vec![0u64; self.n() + 1],
                |mut a, b| {
                    a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        Ok(WeightEnumerator { counts })
    }

    /// Minimum weight over nonzero codewords.
    pub fn min_distance(&self) -> Result<usize> {
        Ok(self.weight_enumerator()?.min_distance())
    }

    /// `⌊(d - 1) / 2⌋`.
    pub fn max_correctable(&self) -> Result<usize> {
        Ok((self.min_distance()? - 1) / 2)
    }

    pub fn decoder(&self) -> Result<NearestCodewordDecoder> {
        NearestCodewordDecoder::new(self)
    }

    /// Complete minimum-distance decoding of a single word. Build a
    /// [`NearestCodewordDecoder`] once when decoding many words.
    pub fn decode_nearest(&self, word: &BitVector) -> Result<Decoded> {
        self.decoder()?.decode(word)
    }
}

impl fmt::Display for GeneratorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

/// Codeword weight histogram, indexed by weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightEnumerator {
    counts: Vec<u64>,
}

impl WeightEnumerator {
    pub fn count(&self, weight: usize) -> u64 {
        self.counts.get(weight).copied().unwrap_or(0)
    }

    pub fn min_distance(&self) -> usize {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &c)| c > 0)
            .map(|(w, _)| w)
            .expect("k >= 1 gives a nonzero codeword")
    }

    /// Nonzero entries only.
    pub fn to_map(&self) -> BTreeMap<usize, u64> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(w, &c)| (w, c))
            .collect()
    }
}

impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .to_map()
            .iter()
            .map(|(w, c)| format!("{w}:{c}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl Serialize for WeightEnumerator {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, u64> = self
            .to_map()
            .into_iter()
            .map(|(w, c)| (w.to_string(), c))
            .collect();
        map.serialize(serializer)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub message: BitVector,
    pub codeword: BitVector,
}

enum Strategy {
    /// Coset-leader table indexed by syndrome; patterns in MSB-first encoding.
    Syndrome {
        columns: Vec<BitVector>,
        leaders: Vec<u64>,
    },
    Enumerate,
}

/// Complete nearest-codeword decoder.
///
/// Among all codewords at minimum distance from the received word, the one
/// whose error pattern (received ⊕ codeword) is lexicographically smallest is
/// chosen. The rule depends only on the coset of the received word, so
/// whether an error pattern is corrected does not depend on the codeword it
/// hit.
pub struct NearestCodewordDecoder {
    generator: GeneratorMatrix,
    pivots: Vec<usize>,
    recovery: BitMatrix,
    strategy: Strategy,
}

fn syndrome_of(columns: &[BitVector], word: &BitVector) -> usize {
    let mut s = 0usize;
    for i in word.ones() {
        s ^= columns[i].to_msb_u64() as usize;
    }
    s
}

/// Next integer with the same popcount.
fn next_same_popcount(v: u64) -> u64 {
    let t = v | (v - 1);
    (t + 1) | (((!t & (!t).wrapping_neg()) - 1) >> (v.trailing_zeros() + 1))
}

impl NearestCodewordDecoder {
    pub fn new(g: &GeneratorMatrix) -> Result<Self> {
        let (k, n) = (g.k(), g.n());
        let augmented = g.matrix.hstack(&BitMatrix::identity(k))?;
        let rref = augmented.rref();
        let pivots: Vec<usize> = rref.pivots.iter().copied().filter(|&p| p < n).collect();
        debug_assert_eq!(pivots.len(), k);
        let recovery = rref.matrix.block(0, k, n, n + k);

        let redundancy = n - k;
        let strategy = if redundancy <= MAX_SYNDROME_BITS && n <= 62 {
            let h = g.parity_check();
            let columns: Vec<BitVector> = h.transpose().into_rows();
            let mut leaders = vec![u64::MAX; 1 << redundancy];
            let mut remaining = leaders.len();
            'weights: for w in 0..=n {
                let mut v: u64 = if w == 0 { 0 } else { (1u64 << w) - 1 };
                loop {
                    let e = BitVector::from_msb_u64(v, n);
                    let s = syndrome_of(&columns, &e);
                    if leaders[s] == u64::MAX {
                        leaders[s] = v;
                        remaining -= 1;
                        if remaining == 0 {
                            break 'weights;
                        }
                    }
                    if w == 0 {
                        break;
                    }
                    let next = next_same_popcount(v);
                    if next >= 1u64 << n || next <= v {
                        break;
                    }
                    v = next;
                }
            }
            Strategy::Syndrome { columns, leaders }
        } else if k <= MAX_ENUMERATION_K {
            Strategy::Enumerate
        } else {
            return Err(Error::TooLarge {
                what: "k",
                value: k,
                limit: MAX_ENUMERATION_K,
            });
        };
        Ok(Self {
            generator: g.clone(),
            pivots,
            recovery,
            strategy,
        })
    }

    /// Generator rows and parity-check columns as MSB-first words, plus the
    /// coset-leader table, when the syndrome strategy is in use.
    fn packed_tables(&self) -> Option<(Vec<u64>, Vec<usize>, &[u64])> {
        match &self.strategy {
            Strategy::Syndrome { columns, leaders } => Some((
                self.generator
                    .matrix
                    .rows()
                    .iter()
                    .map(BitVector::to_msb_u64)
                    .collect(),
                columns.iter().map(|c| c.to_msb_u64() as usize).collect(),
                leaders,
            )),
            Strategy::Enumerate => None,
        }
    }

    /// Message whose encoding is `codeword`.
    pub fn message_of(&self, codeword: &BitVector) -> BitVector {
        let restricted = BitVector::from_bools(
            &self
                .pivots
                .iter()
                .map(|&p| codeword.get(p))
                .collect::<Vec<_>>(),
        );
        self.recovery.left_mul_vec(&restricted).expect("k bits")
    }

    pub fn decode(&self, word: &BitVector) -> Result<Decoded> {
        let n = self.generator.n();
        if word.len() != n {
            return Err(Error::DimensionMismatch {
                context: "received word",
                expected: n,
                found: word.len(),
            });
        }
        let codeword = match &self.strategy {
            Strategy::Syndrome { columns, leaders } => {
                let leader = BitVector::from_msb_u64(leaders[syndrome_of(columns, word)], n);
                word.xor(&leader)
            }
            Strategy::Enumerate => {
                let k = self.generator.k();
                let rows = self.generator.matrix.rows();
                let mut c = BitVector::zeros(n);
                let mut best = word.clone();
                let mut best_cw = c.clone();
                for i in 1u64..(1 << k) {
                    c.xor_assign(&rows[i.trailing_zeros() as usize]);
                    let e = word.xor(&c);
                    let better = match e.weight().cmp(&best.weight()) {
                        std::cmp::Ordering::Less => true,
                        std::cmp::Ordering::Equal => e.lex_cmp(&best).is_lt(),
                        std::cmp::Ordering::Greater => false,
                    };
                    if better {
                        best = e;
                        best_cw = c.clone();
                    }
                }
                best_cw
            }
        };
        Ok(Decoded {
            message: self.message_of(&codeword),
            codeword,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelMethod {
    ExactEnumeration,
    MonteCarlo,
}

/// Block success probability on a binary symmetric channel.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelReport {
    pub n: usize,
    pub k: usize,
    pub delta: f64,
    pub success_probability: f64,
    pub method: ChannelMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub standard_error: Option<f64>,
}

fn check_delta(delta: f64) -> Result<()> {
    if !(0.0..=0.5).contains(&delta) {
        return Err(Error::Domain {
            what: "delta",
            value: delta,
            domain: "[0, 1/2]",
        });
    }
    Ok(())
}

/// Number of correctable error patterns of each weight, i.e. the weight
/// distribution of the coset leaders.
pub fn leader_weight_distribution(g: &GeneratorMatrix) -> Result<Vec<u64>> {
    let n = g.n();
    if n > MAX_EXACT_N {
        return Err(Error::TooLarge {
            what: "n (use Monte Carlo)",
            value: n,
            limit: MAX_EXACT_N,
        });
    }
    let h = g.parity_check();
    let columns: Vec<usize> = h
        .transpose()
        .rows()
        .iter()
        .map(|c| c.to_msb_u64() as usize)
        .collect();
    let mut min_weight = vec![u8::MAX; 1 << (n - g.k())];
    // Gray-code sweep over all 2^n patterns, tracking syndrome and weight
    let mut syndrome = 0usize;
    let mut weight = 0u32;
    let mut pattern = 0u64;
    min_weight[0] = 0;
    for i in 1u64..(1 << n) {
        let bit = i.trailing_zeros() as usize;
        pattern ^= 1 << bit;
        syndrome ^= columns[bit];
        weight = if (pattern >> bit) & 1 == 1 {
            weight + 1
        } else {
            weight - 1
        };
        let slot = &mut min_weight[syndrome];
        if (weight as u8) < *slot {
            *slot = weight as u8;
        }
    }
    let mut dist = vec![0u64; n + 1];
    for w in min_weight {
        dist[w as usize] += 1;
    }
    Ok(dist)
}

/// Exact probability that the nearest-codeword decoder recovers the message
/// when each bit flips independently with probability `delta`.
pub fn bsc_success_exact(g: &GeneratorMatrix, delta: f64) -> Result<ChannelReport> {
    check_delta(delta)?;
    let n = g.n();
    let dist = leader_weight_distribution(g)?;
    let p: f64 = dist
        .iter()
        .enumerate()
        .map(|(w, &count)| count as f64 * delta.powi(w as i32) * (1.0 - delta).powi((n - w) as i32))
        .sum();
    Ok(ChannelReport {
        n,
        k: g.k(),
        delta,
        success_probability: p.clamp(0.0, 1.0),
        method: ChannelMethod::ExactEnumeration,
        trials: None,
        seed: None,
        standard_error: None,
    })
}

/// Trial `index` of a Monte-Carlo run: its randomness depends only on
/// `(seed, index)`.
fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Monte-Carlo estimate of the block success probability. Each trial sends a
/// uniformly random message through the channel; the result is identical for
/// a given seed regardless of thread count.
pub fn bsc_monte_carlo(
    g: &GeneratorMatrix,
    delta: f64,
    trials: u64,
    seed: u64,
) -> Result<ChannelReport> {
    check_delta(delta)?;
    if trials == 0 {
        return Err(Error::Domain {
            what: "trials",
            value: 0.0,
            domain: ">= 1",
        });
    }
    let decoder = g.decoder()?;
    let (k, n) = (g.k(), g.n());
    let successes = match decoder.packed_tables() {
        // Same random draws as the general path, on packed words.
        Some((rows, columns, leaders)) => (0..trials)
            .into_par_iter()
            .filter(|&t| {
                let mut rng = trial_rng(seed, t);
                let mut codeword = 0u64;
                for row in &rows {
                    if rng.gen::<bool>() {
                        codeword ^= row;
                    }
                }
                let mut word = codeword;
                let mut syndrome = 0usize;
                for (i, column) in columns.iter().enumerate() {
                    if rng.gen_bool(delta) {
                        word ^= 1 << (n - 1 - i);
                        syndrome ^= column;
                    }
                }
                let mut received = 0usize;
                for (i, column) in columns.iter().enumerate() {
                    if (codeword >> (n - 1 - i)) & 1 == 1 {
                        received ^= column;
                    }
                }
                word ^ leaders[syndrome ^ received] == codeword
            })
            .count() as u64,
        None => (0..trials)
            .into_par_iter()
            .filter(|&t| {
                let mut rng = trial_rng(seed, t);
                let message =
                    BitVector::from_bools(&(0..k).map(|_| rng.gen::<bool>()).collect::<Vec<_>>());
                let mut word = g.encode(&message).expect("k bits");
                for i in 0..n {
                    if rng.gen_bool(delta) {
                        word.flip(i);
                    }
                }
                decoder.decode(&word).expect("n bits").message == message
            })
            .count() as u64,
    };
    let p = successes as f64 / trials as f64;
    Ok(ChannelReport {
        n,
        k,
        delta,
        success_probability: p,
        method: ChannelMethod::MonteCarlo,
        trials: Some(trials),
        seed: Some(seed),
        standard_error: Some((p * (1.0 - p) / trials as f64).sqrt()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use proptest::prelude::*;
    use rand::Rng;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    /// Independent oracle: nearest codeword by scanning every message, with
    /// the same lexicographic rule on error patterns.
    fn brute_decode(g: &GeneratorMatrix, word: &BitVector) -> BitVector {
        let k = g.k();
        let mut best: Option<(usize, BitVector, BitVector)> = None;
        for x in 0u64..(1 << k) {
            let msg = BitVector::from_msb_u64(x, k);
            let c = g.encode(&msg).unwrap();
            let e = word.xor(&c);
            let replace = match &best {
                None => true,
                Some((w, be, _)) => e.weight() < *w || (e.weight() == *w && e.lex_cmp(be).is_lt()),
            };
            if replace {
                best = Some((e.weight(), e, msg));
            }
        }
        best.unwrap().2
    }

    /// Independent oracle: average success over every (message, error) pair.
    fn brute_success(g: &GeneratorMatrix, delta: f64) -> f64 {
        let (k, n) = (g.k(), g.n());
        let mut total = 0.0;
        for x in 0u64..(1 << k) {
            let msg = BitVector::from_msb_u64(x, k);
            let c = g.encode(&msg).unwrap();
            for e in 0u64..(1 << n) {
                let ev = BitVector::from_msb_u64(e, n);
                if brute_decode(g, &c.xor(&ev)) == msg {
                    let w = ev.weight() as i32;
                    total += delta.powi(w) * (1.0 - delta).powi(n as i32 - w);
                }
            }
        }
        total / (1u64 << k) as f64
    }

    #[test]
    fn encode_examples() {
        let g = corpus::five_two();
        assert_eq!(g.encode(&bv("10")).unwrap(), bv("10110"));
        assert_eq!(g.encode(&bv("00")).unwrap(), bv("00000"));
        assert_eq!(g.encode(&bv("11")).unwrap(), bv("11101"));
        assert!(g.encode(&bv("101")).is_err());
    }

    #[test]
    fn distance_examples() {
        let g = corpus::seven_three();
        let we = g.weight_enumerator().unwrap();
        assert_eq!(we.to_map(), BTreeMap::from([(0, 1), (4, 7)]));
        assert_eq!(we.to_string(), "{0:1, 4:7}");
        assert_eq!(g.min_distance().unwrap(), 4);
        assert_eq!(g.max_correctable().unwrap(), 1);

        let g = corpus::five_two();
        assert_eq!(g.min_distance().unwrap(), 3);
        assert_eq!(g.max_correctable().unwrap(), 1);

        let id = GeneratorMatrix::new(BitMatrix::identity(4)).unwrap();
        assert_eq!(id.min_distance().unwrap(), 1);
        assert_eq!(id.max_correctable().unwrap(), 0);
    }

    #[test]
    fn distance_matches_pairwise_oracle() {
        for g in [
            corpus::five_two(),
            corpus::seven_three(),
            corpus::repetition3(),
        ] {
            let words: Vec<BitVector> = (0u64..(1 << g.k()))
                .map(|x| g.encode(&BitVector::from_msb_u64(x, g.k())).unwrap())
                .collect();
            let mut d = usize::MAX;
            for i in 0..words.len() {
                for j in i + 1..words.len() {
                    d = d.min(words[i].xor(&words[j]).weight());
                }
            }
            assert_eq!(g.min_distance().unwrap(), d);
        }
    }

    #[test]
    fn rejects_large_k() {
        let g = GeneratorMatrix::new(BitMatrix::identity(30)).unwrap();
        assert!(matches!(g.weight_enumerator(), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn decode_examples() {
        let g = corpus::five_two();
        assert_eq!(g.decode_nearest(&bv("10110")).unwrap().message, bv("10"));
        assert_eq!(g.decode_nearest(&bv("10111")).unwrap().message, bv("10"));
        assert!(g.decode_nearest(&bv("1011")).is_err());

        let g = corpus::seven_three();
        let dec = g.decoder().unwrap();
        for x in 0u64..8 {
            let msg = BitVector::from_msb_u64(x, 3);
            let c = g.encode(&msg).unwrap();
            for i in 0..7 {
                let mut w = c.clone();
                w.flip(i);
                let out = dec.decode(&w).unwrap();
                assert_eq!(out.message, msg);
                assert_eq!(out.codeword, c);
            }
        }
    }

    #[test]
    fn syndrome_and_enumeration_strategies_agree() {
        for g in [
            corpus::five_two(),
            corpus::seven_three(),
            corpus::repetition3(),
        ] {
            let dec = g.decoder().unwrap();
            assert!(matches!(dec.strategy, super::Strategy::Syndrome { .. }));
            let enumerating = NearestCodewordDecoder {
                strategy: super::Strategy::Enumerate,
                ..g.decoder().unwrap()
            };
            for w in 0u64..(1 << g.n()) {
                let word = BitVector::from_msb_u64(w, g.n());
                assert_eq!(
                    dec.decode(&word).unwrap(),
                    enumerating.decode(&word).unwrap()
                );
                assert_eq!(dec.decode(&word).unwrap().message, brute_decode(&g, &word));
            }
        }
    }

    #[test]
    fn exact_channel_examples() {
        let g = corpus::five_two();
        assert_eq!(bsc_success_exact(&g, 0.0).unwrap().success_probability, 1.0);

        let exact = bsc_success_exact(&g, 0.1).unwrap().success_probability;
        assert!(exact >= 0.918_54);
        // frozen from the brute-force oracle: 0.9^5 + 5(0.1)(0.9^4) + 2(0.01)(0.9^3)
        assert!((exact - 0.933_12).abs() < 1e-12);
        assert!((exact - brute_success(&g, 0.1)).abs() < 1e-12);

        let rep = corpus::repetition3();
        assert!((bsc_success_exact(&rep, 0.1).unwrap().success_probability - 0.972).abs() < 1e-12);

        for delta in [0.01, 0.05, 0.2, 0.5] {
            let g = corpus::seven_three();
            let e = bsc_success_exact(&g, delta).unwrap().success_probability;
            assert!((e - brute_success(&g, delta)).abs() < 1e-12);
        }
        assert!(bsc_success_exact(&g, 0.6).is_err());
        assert!(bsc_success_exact(&g, -0.1).is_err());
    }

    #[test]
    fn exact_refuses_long_codes() {
        let g = GeneratorMatrix::new(BitMatrix::identity(25)).unwrap();
        assert!(matches!(
            bsc_success_exact(&g, 0.1),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn exact_is_monotone_in_delta() {
        for g in [corpus::five_two(), corpus::seven_three()] {
            let mut prev = 1.0;
            for i in 0..=50 {
                let p = bsc_success_exact(&g, i as f64 / 100.0)
                    .unwrap()
                    .success_probability;
                assert!(p <= prev + 1e-15);
                prev = p;
            }
        }
    }

    #[test]
    fn monte_carlo_examples() {
        let g = corpus::five_two();
        let mc = bsc_monte_carlo(&g, 0.0, 1000, 1).unwrap();
        assert_eq!(mc.success_probability, 1.0);

        for (g, delta) in [(corpus::five_two(), 0.1), (corpus::seven_three(), 0.05)] {
            let exact = bsc_success_exact(&g, delta).unwrap().success_probability;
            let mc = bsc_monte_carlo(&g, delta, 100_000, 42).unwrap();
            let se = mc.standard_error.unwrap();
            assert!(
                (mc.success_probability - exact).abs() <= 3.0 * se,
                "{mc:?} vs {exact}"
            );
        }
    }

    #[test]
    fn monte_carlo_is_deterministic_across_thread_counts() {
        let g = corpus::seven_three();
        let a = bsc_monte_carlo(&g, 0.1, 5000, 9).unwrap();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let b = pool.install(|| bsc_monte_carlo(&g, 0.1, 5000, 9).unwrap());
        assert_eq!(a, b);
        assert!(bsc_monte_carlo(&g, 0.1, 0, 9).is_err());
    }

    #[test]
    fn packed_monte_carlo_matches_bitvector_simulation() {
        for g in [
            corpus::five_two(),
            corpus::seven_three(),
            corpus::repetition3(),
        ] {
            let decoder = g.decoder().unwrap();
            let trials = 3000;
            let successes = (0..trials)
                .filter(|&t| {
                    let mut rng = trial_rng(17, t);
                    let message = BitVector::from_bools(
                        &(0..g.k()).map(|_| rng.gen::<bool>()).collect::<Vec<_>>(),
                    );
                    let mut word = g.encode(&message).unwrap();
                    for i in 0..g.n() {
                        if rng.gen_bool(0.2) {
                            word.flip(i);
                        }
                    }
                    decoder.decode(&word).unwrap().message == message
                })
                .count();
            let mc = bsc_monte_carlo(&g, 0.2, trials, 17).unwrap();
            assert_eq!(mc.success_probability, successes as f64 / trials as f64);
        }
    }

    proptest! {
        #![proptest_config(crate::testutil::fixed_config(1000))]

        #[test]
        fn encode_is_linear(x in 0u64..4, y in 0u64..4) {
            let g = corpus::five_two();
            let (a, b) = (BitVector::from_msb_u64(x, 2), BitVector::from_msb_u64(y, 2));
            prop_assert_eq!(
                g.encode(&a.xor(&b)).unwrap(),
                g.encode(&a).unwrap().xor(&g.encode(&b).unwrap())
            );
        }

        #[test]
        fn correctability_is_codeword_independent(e in 0u64..128, x in 0u64..8, y in 0u64..8) {
            let g = corpus::seven_three();
            let dec = g.decoder().unwrap();
            let ev = BitVector::from_msb_u64(e, 7);
            let ok = |m: u64| {
                let msg = BitVector::from_msb_u64(m, 3);
                dec.decode(&g.encode(&msg).unwrap().xor(&ev)).unwrap().message == msg
            };
            prop_assert_eq!(ok(x), ok(y));
        }
    }
}
