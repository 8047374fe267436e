//! FER bounds for BPSK over AWGN.

use alloc::vec::Vec;

use super::order_stats::order_stat_event;
use super::{binomial_tail, ln_binomial_pmf, q_tail};
use crate::error::Error;
use crate::regions::{DecodingRegion, RegionKind};

/// Bounded-distance FER: `P(Bin(N, p_s) > radius)` with symbol error
/// probability `p_s`.
pub fn bounded_distance_fer(n_sym: usize, radius: usize, symbol_error: f64) -> f64 {
    binomial_tail(n_sym, radius + 1, symbol_error)
}

/// FER of BM on hard decisions, `p_s = 1 - (1 - Q(1, N0))^m`.
pub fn bm_awgn_fer(n: usize, k: usize, m: usize, n0: f64) -> f64 {
    let pb = q_tail(1.0, n0);
    let ps = -libm::expm1(m as f64 * libm::log1p(-pb));
    bounded_distance_fer(n, (n - k) / 2, ps)
}

/// Contributions to [`bgmd_awgn_upper`], exposed for inspection.
#[derive(Clone, Debug, PartialEq)]
pub struct BgmdBoundTerms {
    /// `(i, weight(i), min over corners of the failure event)` for bit-error
    /// counts `i` between the error-only radius and the erasure radius.
    pub rows: Vec<(usize, f64, f64)>,
    /// Weight of all error counts beyond the erasure radius.
    pub tail: f64,
    pub total: f64,
}

/// Order-statistics upper bound on BGMD's list-error probability.
///
/// With `i` bit errors, BGMD is at least as good as the best errors-and-
/// erasures decoder that erases the `f` least reliable bits and corrects `e`
/// errors for a corner `(e, f)` of the region; that decoder fails iff at
/// least `e + 1` errors sit among the `n - f` most reliable bits, i.e.
/// `beta_{e+1}(i) >= gamma_{n-e-f}(n-i)`. Error counts up to the error-only
/// radius always decode; those beyond the erasure radius count as failures.
///
/// `binomial_weights` selects `C(n, i) P_b^i (1 - P_b)^(n-i)` as the weight of
/// `i` errors; `false` drops the coefficient, evaluating the single-pattern
/// probability instead (not a bound on its own; kept for comparison).
pub fn bgmd_awgn_upper(
    n: usize,
    k: usize,
    m: usize,
    kind: RegionKind,
    n0: f64,
    binomial_weights: bool,
) -> Result<BgmdBoundTerms, Error> {
    let bits = n * m;
    let region = DecodingRegion::compute(kind, n, k, m);
    let pb = q_tail(1.0, n0);
    let Some(f_max) = region.f_max() else {
        return Ok(BgmdBoundTerms {
            rows: Vec::new(),
            tail: 1.0,
            total: 1.0,
        });
    };
    if pb <= 0.0 {
        return Ok(BgmdBoundTerms {
            rows: Vec::new(),
            tail: 0.0,
            total: 0.0,
        });
    }
    let f_max = f_max.min(bits);
    let e0 = region.at(0) as usize;

    // Outer corners: raising f would lower e_max.
    let corners: Vec<(usize, usize)> = (0..=f_max)
        .filter(|&f| f == f_max || region.at(f + 1) < region.at(f))
        .map(|f| (region.at(f) as usize, f))
        .collect();

    let weight = |i: usize| {
        let lw = if binomial_weights {
            ln_binomial_pmf(bits, i, pb)
        } else {
            i as f64 * libm::log(pb) + (bits - i) as f64 * libm::log1p(-pb)
        };
        libm::exp(lw)
    };

    let mut rows = Vec::new();
    let mut total = 0.0;
    for i in e0 + 1..=f_max {
        let w = weight(i);
        let mut best = 1.0f64;
        for &(e, f) in &corners {
            if i <= e {
                best = 0.0;
                break;
            }
            if i > e + f {
                // Fewer correct bits than unerased slots: e + 1 errors survive.
                continue;
            }
            let p = order_stat_event(bits, i, e + 1, bits - e - f, n0)?;
            best = best.min(p);
        }
        total += w * best;
        rows.push((i, w, best));
    }
    let tail = if binomial_weights {
        binomial_tail(bits, f_max + 1, pb)
    } else {
        (f_max + 1..=bits).map(weight).sum()
    };
    total += tail;
    Ok(BgmdBoundTerms {
        rows,
        tail,
        total: total.min(1.0),
    })
}
