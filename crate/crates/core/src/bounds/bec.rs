//! Proportional assignment over the BEC at infinite cost.
//!
//! A word is certainly decodable iff `eta = sum_j 2^(-b_j) > K - 1`, where
//! `b_j ~ Bin(m, eps)` counts the erased bits of symbol `j`.

use alloc::vec;
use alloc::vec::Vec;

use super::binomial_tail;
use crate::regions::{bec_nondecodable_threshold, bec_radius, ErasureRadius};

/// Failure probabilities at one erasure probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BecFer {
    /// `P(eta <= K - 1)`.
    pub exact: f64,
    /// Probability of more bit erasures than the worst-case radius.
    pub upper: f64,
    /// Probability of more touched symbols than can ever be decoded; `None`
    /// when the rate is too low for that threshold to exist.
    pub lower: Option<f64>,
}

/// Exact `P(eta <= K - 1)` by convolving per-symbol deficits on the
/// `2^(-m)` lattice.
///
/// Symbol `j` contributes the deficit `2^m - 2^(m - b_j)` units; failure is a
/// total deficit of at least `(N - K + 1) 2^m`, so states saturate there.
pub fn pmas_bec_failure_exact(n: usize, k: usize, m: usize, epsilon: f64) -> f64 {
    assert!(k >= 1 && k <= n, "needs 1 <= K <= N");
    assert!((0.0..=1.0).contains(&epsilon), "erasure probability outside [0, 1]");
    let unit = 1usize << m;
    let cap = (n - k + 1) * unit;
    // K = 1 never fails: N symbols leave a deficit below N 2^m.
    let per_symbol: Vec<(usize, f64)> = (0..=m)
        .map(|b| {
            let p = libm::exp(super::ln_binomial_pmf(m, b, epsilon));
            (unit - (unit >> b), p)
        })
        .filter(|&(_, p)| p > 0.0)
        .collect();
    let mut dist = vec![0.0f64; cap + 1];
    dist[0] = 1.0;
    let mut next = vec![0.0f64; cap + 1];
    let mut reach = 0usize;
    for _ in 0..n {
        next[..=cap].fill(0.0);
        for (s, &mass) in dist[..=reach].iter().enumerate() {
            if mass == 0.0 {
                continue;
            }
            if s == cap {
                next[cap] += mass;
                continue;
            }
            for &(d, p) in &per_symbol {
                next[(s + d).min(cap)] += mass * p;
            }
        }
        reach = (reach + unit - 1).min(cap);
        core::mem::swap(&mut dist, &mut next);
    }
    dist[cap].min(1.0)
}

/// Exact predicate failure probability with its two closed-form brackets.
pub fn bec_fer(n: usize, k: usize, m: usize, epsilon: f64) -> BecFer {
    let exact = pmas_bec_failure_exact(n, k, m, epsilon);
    let upper = match bec_radius(n, k, m) {
        ErasureRadius::All => 0.0,
        ErasureRadius::Max(f) => binomial_tail(n * m, f + 1, epsilon),
    };
    let lower = bec_nondecodable_threshold(n, k).ok().map(|t| {
        // P(symbol touched) = 1 - (1 - eps)^m, without cancellation.
        let touched = -libm::expm1(m as f64 * libm::log1p(-epsilon));
        binomial_tail(n, t + 1, touched)
    });
    BecFer { exact, upper, lower }
}
