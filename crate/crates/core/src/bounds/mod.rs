//! Analytic frame-error-rate bounds.
//!
//! Over the BEC: the exact failure probability of the infinite-cost
//! proportional-assignment predicate, bracketed by the radius upper bound and
//! the touched-symbol lower bound. Over AWGN: an order-statistics upper bound
//! for BGMD and the bounded-distance FER of BM.

mod awgn;
mod bec;
mod order_stats;
pub mod quadrature;

use alloc::vec::Vec;

pub use awgn::{bgmd_awgn_upper, bm_awgn_fer, bounded_distance_fer, BgmdBoundTerms};
pub use bec::{bec_fer, pmas_bec_failure_exact, BecFer};
pub use order_stats::{order_stat_event, MagnitudeLaw};

/// Gaussian upper tail `P(n > x)` for `n ~ N(0, N0/2)`.
pub fn q_tail(x: f64, n0: f64) -> f64 {
    0.5 * libm::erfc(x / libm::sqrt(n0))
}

/// `ln C(n, k)`.
pub fn ln_choose(n: usize, k: usize) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    if k == 0 || k == n {
        return 0.0;
    }
    libm::lgamma(n as f64 + 1.0) - libm::lgamma(k as f64 + 1.0) - libm::lgamma((n - k) as f64 + 1.0)
}

/// `x ln y` with `0 ln 0 = 0`.
pub(crate) fn xlny(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * libm::log(y)
    }
}

/// `ln P(Bin(n, p) = k)`.
pub fn ln_binomial_pmf(n: usize, k: usize, p: f64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_choose(n, k) + xlny(k as f64, p) + if n == k { 0.0 } else { (n - k) as f64 * libm::log1p(-p) }
}

/// `P(Bin(n, p) >= t)`.
///
/// Sums whichever side of the mean does not contain the mode, so small tails
/// keep full relative precision.
pub fn binomial_tail(n: usize, t: usize, p: f64) -> f64 {
    if t == 0 || p >= 1.0 {
        return if t <= n { 1.0 } else { 0.0 };
    }
    if t > n || p <= 0.0 {
        return 0.0;
    }
    let ratio = p / (1.0 - p);
    if t as f64 > n as f64 * p {
        // Terms decrease away from t.
        let mut term = libm::exp(ln_binomial_pmf(n, t, p));
        let mut acc = term;
        for k in t..n {
            term *= (n - k) as f64 / (k + 1) as f64 * ratio;
            acc += term;
            if term < acc * 1e-18 {
                break;
            }
        }
        acc.min(1.0)
    } else {
        // Lower tail P(X <= t - 1), summed downward from t - 1.
        let mut term = libm::exp(ln_binomial_pmf(n, t - 1, p));
        let mut acc = term;
        for k in (1..t).rev() {
            term *= k as f64 / (n - k + 1) as f64 / ratio;
            acc += term;
            if term < acc * 1e-18 {
                break;
            }
        }
        (1.0 - acc).clamp(0.0, 1.0)
    }
}

/// What a [`BoundCurve`] asserts about the true FER.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Upper,
    Lower,
    /// Exact failure probability of a decodability predicate.
    Exact,
}

impl BoundKind {
    pub fn label(&self) -> &'static str {
        match self {
            BoundKind::Upper => "upper",
            BoundKind::Lower => "lower",
            BoundKind::Exact => "exact-predicate",
        }
    }
}

/// FER values over a grid of channel parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundCurve {
    pub kind: BoundKind,
    pub strategy: &'static str,
    pub mult: Option<u32>,
    pub n: usize,
    pub k: usize,
    pub m: usize,
    /// `(channel parameter, FER)` pairs in grid order.
    pub points: Vec<(f64, f64)>,
}

impl BoundCurve {
    /// Every FER value lies in `[0, 1]`.
    pub fn is_probability(&self) -> bool {
        self.points.iter().all(|&(_, v)| (0.0..=1.0).contains(&v))
    }

    /// FER never increases as the parameter increases, up to `rel` slack.
    pub fn is_nonincreasing(&self, rel: f64) -> bool {
        self.points
            .windows(2)
            .all(|w| w[1].0 < w[0].0 || w[1].1 <= w[0].1 * (1.0 + rel))
    }

    /// FER never decreases as the parameter increases, up to `rel` slack.
    pub fn is_nondecreasing(&self, rel: f64) -> bool {
        self.points
            .windows(2)
            .all(|w| w[1].0 < w[0].0 || w[1].1 >= w[0].1 * (1.0 - rel))
    }
}
