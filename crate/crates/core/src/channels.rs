//! Channel simulators and the soft information they produce.
//!
//! Every observation is carried as per-bit log-likelihood ratios
//! `L = ln P(c = 0 | y) / P(c = 1 | y)`. Ternary outputs map onto the same
//! representation: a known 0 is `+inf`, a known 1 is `-inf` and an erasure is
//! exactly `0.0`.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::Error;
use crate::rscode::{CodeSpec, Codeword};

/// Which channel produced an observation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChannelMeta {
    Bec { epsilon: f64 },
    Bsc { p: f64 },
    /// 2^u-ary erasure channel.
    Qec { u: usize, epsilon: f64 },
    Awgn { n0: f64 },
    Synthetic,
}

/// Per-bit soft channel output for one frame.
#[derive(Clone, Debug, PartialEq)]
pub struct SoftObservation {
    llr: Vec<f64>,
    pub meta: ChannelMeta,
}

impl SoftObservation {
    pub fn from_llrs(llr: Vec<f64>) -> Self {
        debug_assert!(llr.iter().all(|l| !l.is_nan()));
        SoftObservation {
            llr,
            meta: ChannelMeta::Synthetic,
        }
    }

    /// `Some(bit)` is a perfectly known bit, `None` an erasure.
    pub fn from_ternary(bits: &[Option<u8>]) -> Self {
        Self::from_llrs(bits.iter().map(|b| ternary_llr(*b)).collect())
    }

    /// Noiseless observation of `bits`.
    pub fn noiseless(bits: &[u8]) -> Self {
        Self::from_llrs(bits.iter().map(|&b| known_llr(b)).collect())
    }

    pub fn llr(&self) -> &[f64] {
        &self.llr
    }

    pub fn len(&self) -> usize {
        self.llr.len()
    }

    pub fn is_empty(&self) -> bool {
        self.llr.is_empty()
    }

    #[inline]
    pub fn is_erased(&self, bit: usize) -> bool {
        self.llr[bit] == 0.0
    }

    /// Bitwise hard decision: 0 when `L > 0`, 1 otherwise.
    pub fn hard_bits(&self) -> Vec<u8> {
        self.llr.iter().map(|&l| hard_bit(l)).collect()
    }

    pub fn erased_count(&self) -> usize {
        self.llr.iter().filter(|&&l| l == 0.0).count()
    }
}

#[inline]
pub fn hard_bit(llr: f64) -> u8 {
    u8::from(llr <= 0.0)
}

#[inline]
fn known_llr(bit: u8) -> f64 {
    if bit == 0 {
        f64::INFINITY
    } else {
        f64::NEG_INFINITY
    }
}

#[inline]
fn ternary_llr(bit: Option<u8>) -> f64 {
    bit.map_or(0.0, known_llr)
}

/// Posterior `(P(c = 0), P(c = 1))` of one bit from its LLR.
#[inline]
pub fn bit_posteriors(llr: f64) -> (f64, f64) {
    if llr == f64::INFINITY {
        return (1.0, 0.0);
    }
    if llr == f64::NEG_INFINITY {
        return (0.0, 1.0);
    }
    (
        1.0 / (1.0 + libm::exp(-llr)),
        1.0 / (1.0 + libm::exp(llr)),
    )
}

/// Binary erasure channel: each bit erased independently with probability
/// `epsilon`.
pub fn bec_transmit<R: Rng + ?Sized>(bits: &[u8], epsilon: f64, rng: &mut R) -> SoftObservation {
    let llr = bits
        .iter()
        .map(|&b| {
            if rng.random::<f64>() < epsilon {
                0.0
            } else {
                known_llr(b)
            }
        })
        .collect();
    SoftObservation {
        llr,
        meta: ChannelMeta::Bec { epsilon },
    }
}

/// Binary symmetric channel with crossover `p`. LLR magnitudes are the
/// channel reliability `ln((1 - p) / p)`.
pub fn bsc_transmit<R: Rng + ?Sized>(bits: &[u8], p: f64, rng: &mut R) -> SoftObservation {
    let mag = libm::log((1.0 - p) / p);
    let llr = bits
        .iter()
        .map(|&b| {
            let rx = if rng.random::<f64>() < p { b ^ 1 } else { b };
            if rx == 0 {
                mag
            } else {
                -mag
            }
        })
        .collect();
    SoftObservation {
        llr,
        meta: ChannelMeta::Bsc { p },
    }
}

/// 2^u-ary erasure channel: consecutive `u`-bit groups are erased together.
/// `u` must divide `m` so that groups never straddle symbols.
pub fn qec_transmit<R: Rng + ?Sized>(
    bits: &[u8],
    m: usize,
    u: usize,
    epsilon: f64,
    rng: &mut R,
) -> Result<SoftObservation, Error> {
    if u == 0 || !m.is_multiple_of(u) {
        return Err(Error::InvalidCode("u must divide m"));
    }
    let mut llr = Vec::with_capacity(bits.len());
    for group in bits.chunks(u) {
        let erased = rng.random::<f64>() < epsilon;
        llr.extend(group.iter().map(|&b| if erased { 0.0 } else { known_llr(b) }));
    }
    Ok(SoftObservation {
        llr,
        meta: ChannelMeta::Qec { u, epsilon },
    })
}

/// BPSK over AWGN: bit 0 -> +1, bit 1 -> -1, noise variance `n0 / 2`,
/// LLR `4 r / n0`.
pub fn awgn_bpsk_transmit<R: Rng + ?Sized>(bits: &[u8], n0: f64, rng: &mut R) -> SoftObservation {
    let sigma = libm::sqrt(n0 / 2.0);
    let llr = bits
        .iter()
        .map(|&b| {
            let s = if b == 0 { 1.0 } else { -1.0 };
            let noise: f64 = rng.sample(StandardNormal);
            4.0 * (s + sigma * noise) / n0
        })
        .collect();
    SoftObservation {
        llr,
        meta: ChannelMeta::Awgn { n0 },
    }
}

/// Eb/N0 in dB to N0 for unit-energy BPSK at code rate `rate`.
pub fn n0_from_ebn0_db(ebn0_db: f64, rate: f64) -> f64 {
    1.0 / (rate * libm::pow(10.0, ebn0_db / 10.0))
}

/// The q x N matrix of symbol posteriors, column-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ReliabilityMatrix {
    q: usize,
    n: usize,
    data: Vec<f64>,
}

impl ReliabilityMatrix {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// pi_{i,j}: posterior that symbol `j` equals the element with value `i`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[j * self.q + i]
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.data[j * self.q..(j + 1) * self.q]
    }

    /// Builds a matrix from explicit columns (each of length q).
    pub fn from_columns(q: usize, columns: &[Vec<f64>]) -> Self {
        let mut data = Vec::with_capacity(q * columns.len());
        for c in columns {
            assert_eq!(c.len(), q);
            data.extend_from_slice(c);
        }
        ReliabilityMatrix {
            q,
            n: columns.len(),
            data,
        }
    }
}

/// Symbol-wise APPs from bit LLRs, assuming independent bits.
pub fn reliability_matrix(obs: &SoftObservation, spec: &CodeSpec) -> Result<ReliabilityMatrix, Error> {
    if obs.len() != spec.n_bits() {
        return Err(Error::LengthMismatch {
            expected: spec.n_bits(),
            got: obs.len(),
        });
    }
    let (m, q, n) = (spec.m(), spec.field().q(), spec.n_sym());
    let mut data = vec![0.0; q * n];
    for (j, col) in data.chunks_mut(q).enumerate() {
        col[0] = 1.0;
        for b in 0..m {
            let (p0, p1) = bit_posteriors(obs.llr()[j * m + b]);
            let half = 1 << b;
            for v in (0..half).rev() {
                let base = col[v];
                col[v + half] = base * p1;
                col[v] = base * p0;
            }
        }
    }
    Ok(ReliabilityMatrix { q, n, data })
}

/// Counts `a_i` of symbols of type `i = 0..=m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeHistogram {
    pub counts: Vec<usize>,
}

impl TypeHistogram {
    pub fn new(counts: Vec<usize>) -> Self {
        TypeHistogram { counts }
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// `sum_i i a_i`: total erased (or flipped) bits.
    pub fn weighted_total(&self) -> usize {
        self.counts.iter().enumerate().map(|(i, a)| i * a).sum()
    }
}

/// Erasure-channel types: the number of erased bits in each symbol.
pub fn erasure_histogram(obs: &SoftObservation, spec: &CodeSpec) -> TypeHistogram {
    let m = spec.m();
    let mut counts = vec![0; m + 1];
    for j in 0..spec.n_sym() {
        let t = (0..m).filter(|&b| obs.is_erased(j * m + b)).count();
        counts[t] += 1;
    }
    TypeHistogram { counts }
}

/// Symmetric-channel types: bit distance between the hard decision and the
/// transmitted symbol.
pub fn error_histogram(obs: &SoftObservation, spec: &CodeSpec, truth: &Codeword) -> TypeHistogram {
    let m = spec.m();
    let mut counts = vec![0; m + 1];
    let hard = obs.hard_bits();
    let tx = spec.binary_image(&truth.symbols);
    for j in 0..spec.n_sym() {
        let t = (0..m).filter(|&b| hard[j * m + b] != tx[j * m + b]).count();
        counts[t] += 1;
    }
    TypeHistogram { counts }
}

/// A worst-case mixed error/erasure pattern together with what was sent.
#[derive(Clone, Debug)]
pub struct WorstCasePattern {
    pub observation: SoftObservation,
    pub truth: Codeword,
    /// Number of erased bits in each symbol.
    pub erasures_per_symbol: Vec<usize>,
    /// Symbols carrying a single bit error.
    pub error_symbols: Vec<usize>,
}

/// Places `e` single-bit errors in the first `e` symbols and spreads `f` bit
/// erasures as evenly as possible over the remaining erasure-free symbols.
///
/// Observed bits are perfectly known (`+-inf`), flipped bits are known with the
/// wrong sign, erased bits have LLR 0.
pub fn worst_case_pattern(
    spec: &CodeSpec,
    truth: &Codeword,
    e: usize,
    f: usize,
) -> Result<WorstCasePattern, Error> {
    let (n, m) = (spec.n_sym(), spec.m());
    if e > n || f > m * (n - e) {
        return Err(Error::PatternNotPlaceable {
            errors: e,
            erasures: f,
        });
    }
    let mut per_symbol = vec![0usize; n];
    let free = n - e;
    if let Some(base) = f.checked_div(free) {
        let extra = f % free;
        for (idx, slot) in per_symbol[e..].iter_mut().enumerate() {
            *slot = base + usize::from(idx < extra);
        }
    }
    let tx = spec.binary_image(&truth.symbols);
    let mut ternary: Vec<Option<u8>> = tx.iter().map(|&b| Some(b)).collect();
    for j in 0..e {
        ternary[j * m] = Some(tx[j * m] ^ 1);
    }
    for (j, &cnt) in per_symbol.iter().enumerate() {
        for b in 0..cnt {
            ternary[j * m + b] = None;
        }
    }
    Ok(WorstCasePattern {
        observation: SoftObservation::from_ternary(&ternary),
        truth: truth.clone(),
        erasures_per_symbol: per_symbol,
        error_symbols: (0..e).collect(),
    })
}
