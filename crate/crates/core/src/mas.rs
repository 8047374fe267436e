//! Multiplicity assignment strategies.
//!
//! Matrix-producing rules: proportional assignment ([`pmas`]) and the
//! bit-erasure rule ([`proposed_mas`]). Closed-form optimal coefficients for
//! the 1-bit-flipped channel ([`bsc_optimal`]) and the 1-bit flipped-or-erased
//! channel ([`flip_or_erase_optimal`]). Asymptotic score/cost per strategy
//! ([`strategy_score_cost`]).

use alloc::vec::Vec;

use crate::asd::{AsymptoticScoreCost, MultiplicityMatrix};
use crate::channels::{ReliabilityMatrix, SoftObservation, TypeHistogram};
use crate::error::Error;
use crate::galois::Gf;
use crate::rscode::{CodeSpec, Codeword};

/// Slack absorbing rounding in `pi * M` before flooring, so that e.g.
/// `0.7 * 10` floors to 7.
const FLOOR_SLACK: f64 = 1e-9;

/// A multiplicity assignment rule together with its coefficients.
#[derive(Clone, Debug, PartialEq)]
pub enum MasParams {
    /// Multiplicity proportional to the symbol posterior.
    Pmas,
    /// `M` on erasure-free symbols, `M/2` on both candidates of 1-bit-erased
    /// symbols, nothing elsewhere.
    Proposed,
    /// `M` on the hard decision and `t M` on each of its `m` 1-bit
    /// neighbours.
    BscOptimal { t: f64 },
    /// `M` / `t1 M` as for [`MasParams::BscOptimal`] on erasure-free symbols,
    /// `t2 M` on both candidates of 1-bit-erased symbols.
    FlipOrErase { t1: f64, t2: f64 },
    /// Per-candidate coefficient by erasure type: every candidate of a type-`i`
    /// symbol gets `coeffs[i] M`.
    Coefficients(Vec<f64>),
}

/// Entrywise `floor(pi * M)`.
pub fn pmas(pi: &ReliabilityMatrix, mult: f64) -> MultiplicityMatrix {
    assert!(mult > 0.0, "multiplicity parameter must be positive");
    let (q, n) = (pi.q(), pi.n());
    let mut mm = MultiplicityMatrix::zeros(q, n);
    for j in 0..n {
        for (dst, &p) in mm.column_mut(j).iter_mut().zip(pi.column(j)) {
            *dst = libm::floor(p * mult + FLOOR_SLACK) as u32;
        }
    }
    mm
}

/// Bit-erasure assignment from bitwise hard decisions and an erasure mask.
///
/// `mult` must be even and at least 2.
pub fn proposed_mas(spec: &CodeSpec, hard: &[u8], erased: &[bool], mult: u32) -> Result<MultiplicityMatrix, Error> {
    if mult < 2 || !mult.is_multiple_of(2) {
        return Err(Error::InvalidMultiplicity(mult));
    }
    let n_bits = spec.n_bits();
    for len in [hard.len(), erased.len()] {
        if len != n_bits {
            return Err(Error::LengthMismatch {
                expected: n_bits,
                got: len,
            });
        }
    }
    let m = spec.m();
    let mut mm = MultiplicityMatrix::zeros(spec.field().q(), spec.n_sym());
    for j in 0..spec.n_sym() {
        let bits = j * m..(j + 1) * m;
        let mut value = 0usize;
        let mut erased_at = None;
        let mut erased_count = 0;
        for (b, idx) in bits.enumerate() {
            if erased[idx] {
                erased_count += 1;
                erased_at = Some(b);
            } else {
                value |= usize::from(hard[idx] & 1) << b;
            }
        }
        match (erased_count, erased_at) {
            (0, _) => mm.set(value, j, mult),
            (1, Some(b)) => {
                mm.set(value, j, mult / 2);
                mm.set(value | (1 << b), j, mult / 2);
            }
            _ => {}
        }
    }
    Ok(mm)
}

/// [`proposed_mas`] with hard decisions and erasures (LLR exactly 0) read from
/// an observation.
pub fn proposed_mas_from_obs(spec: &CodeSpec, obs: &SoftObservation, mult: u32) -> Result<MultiplicityMatrix, Error> {
    let erased: Vec<bool> = (0..obs.len()).map(|i| obs.is_erased(i)).collect();
    proposed_mas(spec, &obs.hard_bits(), &erased, mult)
}

/// Optimal coefficient for the 1-bit-flipped symmetric channel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BscOptimal {
    /// `(K - 1)(1 + m) < N`: with `t = 1` the transmitted codeword is always
    /// on the list.
    AllCorrectable,
    Radius {
        /// Optimal neighbour coefficient `t`.
        x0: f64,
        /// Largest number of bit errors in distinct symbols that is always
        /// list-decoded.
        e_max: usize,
        /// `e_max <= N` and `t <= 1/2`: errors spread over distinct symbols are
        /// then the worst case for any BSC pattern, so `e_max` is the
        /// bit-level radius over the full BSC.
        spread_is_worst: bool,
    },
}

/// Tangent point of the line through `(1, B)` and the hyperbola
/// `y^2 - m x^2 = 1`, written without the removable singularity at `B^2 = m`.
fn tangent_coefficient(m: f64, b2: f64) -> f64 {
    (b2 - 1.0) / (m + libm::sqrt(m * m + m * (m - b2) * (b2 - 1.0)))
}

/// Largest integer strictly below `x` (for `x > 0`), or `None` when `x <= 0`.
fn largest_below(x: f64) -> Option<usize> {
    if x <= 0.0 {
        return None;
    }
    let c = libm::ceil(x);
    Some(c as usize - 1)
}

/// Optimal `(t, e_max)` for the 1-bit-flipped BSC in the infinite-cost limit.
pub fn bsc_optimal(n: usize, k: usize, m: usize) -> BscOptimal {
    assert!(k >= 2 && k <= n, "needs 2 <= K <= N");
    let w = (k - 1) as f64;
    let (nf, mf) = (n as f64, m as f64);
    if w * (1.0 + mf) < nf {
        return BscOptimal::AllCorrectable;
    }
    let x0 = tangent_coefficient(mf, nf / w);
    let bound = nf * mf * x0 / (mf * x0 + 1.0);
    let e_max = largest_below(bound).unwrap_or(0);
    BscOptimal::Radius {
        x0,
        e_max,
        spread_is_worst: e_max <= n && x0 <= 0.5,
    }
}

/// Optimal coefficients on the 1-bit flipped-or-erased channel with `f`
/// 1-bit-erased symbols.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlipOrErase {
    /// Coefficient on 1-bit neighbours of erasure-free symbols.
    pub t1: f64,
    /// Coefficient on both candidates of 1-bit-erased symbols; infinite when
    /// erased symbols alone carry the decision.
    pub t2: f64,
    /// Largest error count always list-decoded, or `None` when no `e >= 0`
    /// qualifies.
    pub e_max: Option<usize>,
    /// Every pattern with `e + f <= N` is decodable.
    pub all_correctable: bool,
}

/// Optimal `(t1, t2, e_max)` for `f` erasures, infinite cost.
pub fn flip_or_erase_optimal(n: usize, k: usize, m: usize, f: usize) -> FlipOrErase {
    assert!(k >= 2 && k <= n && f <= n, "needs 2 <= K <= N and f <= N");
    let w = (k - 1) as f64;
    let (nf, mf, ff) = (n as f64, m as f64, f as f64);
    if f >= 2 * (k - 1) {
        return FlipOrErase {
            t1: 1.0,
            t2: f64::INFINITY,
            e_max: Some(n - f),
            all_correctable: true,
        };
    }
    let denom = w - ff / 2.0;
    let b2 = (nf - ff) / denom;
    let t2_of = |t1: f64| libm::sqrt((nf - ff) * (1.0 + mf * t1 * t1) / (4.0 * w - 2.0 * ff));
    if b2 <= 1.0 {
        // Even e = 0 needs B^2 > 1 once t2 is optimized out.
        return FlipOrErase {
            t1: 0.0,
            t2: t2_of(0.0),
            e_max: None,
            all_correctable: false,
        };
    }
    if b2 > 1.0 + mf {
        return FlipOrErase {
            t1: 1.0,
            t2: t2_of(1.0),
            e_max: Some(n - f),
            all_correctable: true,
        };
    }
    let t1 = tangent_coefficient(mf, b2);
    let j = (nf - ff) * mf * t1 / (mf * t1 + 1.0);
    FlipOrErase {
        t1,
        t2: t2_of(t1),
        e_max: largest_below(j),
        all_correctable: false,
    }
}

/// Score/cost coefficients of a strategy given a type histogram.
///
/// For [`MasParams::Pmas`], [`MasParams::Proposed`] and
/// [`MasParams::Coefficients`] the histogram counts erased bits per symbol;
/// for [`MasParams::BscOptimal`] it counts flipped bits per symbol.
/// [`MasParams::FlipOrErase`] needs a joint error/erasure split and is served
/// by [`flip_or_erase_score_cost`].
pub fn strategy_score_cost(hist: &TypeHistogram, params: &MasParams) -> Result<AsymptoticScoreCost, Error> {
    let per_type = |coeff: &dyn Fn(usize) -> f64| {
        let mut s = 0.0;
        let mut c = 0.0;
        for (i, &a) in hist.counts.iter().enumerate() {
            let mi = coeff(i);
            s += a as f64 * mi;
            c += a as f64 * libm::ldexp(1.0, i as i32) * mi * mi / 2.0;
        }
        AsymptoticScoreCost { s, c }
    };
    match params {
        MasParams::Pmas => Ok(per_type(&|i| libm::ldexp(1.0, -(i as i32)))),
        MasParams::Proposed => Ok(per_type(&|i| match i {
            0 => 1.0,
            1 => 0.5,
            _ => 0.0,
        })),
        MasParams::Coefficients(v) => Ok(per_type(&|i| v.get(i).copied().unwrap_or(0.0))),
        MasParams::BscOptimal { t } => {
            let n = hist.total() as f64;
            let m = (hist.counts.len() - 1) as f64;
            let a0 = hist.counts.first().copied().unwrap_or(0) as f64;
            let a1 = hist.counts.get(1).copied().unwrap_or(0) as f64;
            Ok(AsymptoticScoreCost {
                s: a0 + a1 * t,
                c: n * (1.0 + m * t * t) / 2.0,
            })
        }
        MasParams::FlipOrErase { .. } => Err(Error::Inapplicable(
            "flip-or-erase coefficients need separate error and erasure counts",
        )),
    }
}

/// Score/cost coefficients on the 1-bit flipped-or-erased channel with `e`
/// flipped symbols and `f` 1-bit-erased symbols.
pub fn flip_or_erase_score_cost(n: usize, m: usize, e: usize, f: usize, t1: f64, t2: f64) -> AsymptoticScoreCost {
    let (nf, mf, ef, ff) = (n as f64, m as f64, e as f64, f as f64);
    AsymptoticScoreCost {
        s: (nf - ef - ff) + ef * t1 + ff * t2,
        c: ((nf - ff) * (1.0 + mf * t1 * t1) + 2.0 * ff * t2 * t2) / 2.0,
    }
}

/// Proportional-assignment coefficients taken straight from the posteriors:
/// `s = sum_j pi(x_j, j)` and `c = sum pi^2 / 2`.
pub fn pmas_score_cost(pi: &ReliabilityMatrix, truth: &Codeword) -> AsymptoticScoreCost {
    let mut s = 0.0;
    let mut c = 0.0;
    for j in 0..pi.n() {
        let Gf(x) = truth.symbols[j];
        s += pi.get(x as usize, j);
        c += pi.column(j).iter().map(|p| p * p).sum::<f64>() / 2.0;
    }
    AsymptoticScoreCost { s, c }
}
