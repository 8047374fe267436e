//! Order statistics of BPSK reliabilities over AWGN.
//!
//! A bit sent as `+1` is received as `r = 1 + n` with `n ~ N(0, N0/2)`.
//! Conditioned on the hard decision being wrong (`r <= 0`) or right
//! (`r > 0`), `|r|` has the densities `f(x + 1)/P_b` and `f(x - 1)/(1 - P_b)`
//! on `x >= 0`.

use super::quadrature::{integrate, Tolerance};
use super::{ln_choose, q_tail, xlny};
use crate::error::Error;

/// Conditional laws of `|r|` for erroneous and correct bits at one noise
/// level.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MagnitudeLaw {
    n0: f64,
    pb: f64,
    ln_gauss_norm: f64,
}

impl MagnitudeLaw {
    pub fn new(n0: f64) -> Self {
        assert!(n0 > 0.0, "noise level must be positive");
        MagnitudeLaw {
            n0,
            pb: q_tail(1.0, n0),
            ln_gauss_norm: -0.5 * libm::log(core::f64::consts::PI * n0),
        }
    }

    pub fn n0(&self) -> f64 {
        self.n0
    }

    /// Raw bit error probability `Q(1, N0)`.
    pub fn bit_error_probability(&self) -> f64 {
        self.pb
    }

    /// Point beyond which every density here is below `exp(-800)` relative to
    /// its peak.
    pub fn upper_limit(&self) -> f64 {
        1.0 + 40.0 * libm::sqrt(self.n0 / 2.0)
    }

    fn ln_gauss(&self, y: f64) -> f64 {
        -y * y / self.n0 + self.ln_gauss_norm
    }

    pub fn error_pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        libm::exp(self.ln_gauss(x + 1.0)) / self.pb
    }

    /// `P(|r| > x | wrong)`.
    pub fn error_sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 1.0;
        }
        (q_tail(x + 1.0, self.n0) / self.pb).min(1.0)
    }

    pub fn error_cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        ((self.pb - q_tail(x + 1.0, self.n0)) / self.pb).clamp(0.0, 1.0)
    }

    pub fn correct_pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        libm::exp(self.ln_gauss(x - 1.0)) / (1.0 - self.pb)
    }

    /// `P(|r| > x | right)`.
    pub fn correct_sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 1.0;
        }
        (q_tail(x - 1.0, self.n0) / (1.0 - self.pb)).min(1.0)
    }

    pub fn correct_cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        // P(0 < r <= x) = Q(1 - x) - Q(1); below 1 this avoids cancelling
        // against Q(-1) = 1 - P_b.
        let mass = if x < 1.0 {
            q_tail(1.0 - x, self.n0) - self.pb
        } else {
            1.0 - self.pb - q_tail(x - 1.0, self.n0)
        };
        (mass / (1.0 - self.pb)).clamp(0.0, 1.0)
    }

    /// Density of the `rank`-th largest `|r|` among `count` erroneous bits.
    pub fn error_order_density(&self, count: usize, rank: usize, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let ln_pdf = self.ln_gauss(x + 1.0) - libm::log(self.pb);
        order_density(count, rank, self.error_sf(x), ln_pdf, self.error_cdf(x))
    }

    /// Density of the `rank`-th largest `|r|` among `count` correct bits.
    pub fn correct_order_density(&self, count: usize, rank: usize, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let ln_pdf = self.ln_gauss(x - 1.0) - libm::log1p(-self.pb);
        order_density(count, rank, self.correct_sf(x), ln_pdf, self.correct_cdf(x))
    }

    /// `P(beta > x)` for the `rank`-th largest of `count` erroneous
    /// magnitudes: at least `rank` of them exceed `x`.
    pub fn error_order_sf(&self, count: usize, rank: usize, x: f64) -> f64 {
        binomial_upper(count, rank, self.error_sf(x), self.error_cdf(x))
    }
}

/// `count! / ((rank-1)! (count-rank)!) sf^(rank-1) pdf cdf^(count-rank)`,
/// assembled in the log domain.
fn order_density(count: usize, rank: usize, sf: f64, ln_pdf: f64, cdf: f64) -> f64 {
    debug_assert!(rank >= 1 && rank <= count);
    let ln_coef = libm::log(count as f64) + ln_choose(count - 1, rank - 1);
    let ln = ln_coef + xlny((rank - 1) as f64, sf) + ln_pdf + xlny((count - rank) as f64, cdf);
    libm::exp(ln)
}

/// `P(Bin(n, p) >= t)` with `q = 1 - p` supplied separately, since each side
/// is computed without cancellation. Direct summation; `n` is small here.
fn binomial_upper(n: usize, t: usize, p: f64, q: f64) -> f64 {
    if t == 0 || q <= 0.0 {
        return if t <= n { 1.0 } else { 0.0 };
    }
    if t > n || p <= 0.0 {
        return 0.0;
    }
    let (lp, lq) = (libm::log(p), libm::log(q));
    let mut acc = 0.0;
    for k in t..=n {
        acc += libm::exp(ln_choose(n, k) + k as f64 * lp + (n - k) as f64 * lq);
    }
    acc.min(1.0)
}

/// `P(beta_j(i) >= gamma_l(n - i))`: the `j`-th largest reliability among `i`
/// erroneous bits is at least the `l`-th largest among the `n - i` correct
/// bits, integrated as `int f_gamma(x) P(beta > x) dx`.
pub fn order_stat_event(n: usize, i: usize, j: usize, l: usize, n0: f64) -> Result<f64, Error> {
    if !(1 <= j && j <= i && i <= n && 1 <= l && l <= n - i) {
        return Err(Error::Inapplicable("order statistic ranks out of range"));
    }
    let law = MagnitudeLaw::new(n0);
    if law.bit_error_probability() <= 0.0 {
        return Ok(0.0);
    }
    let v = integrate(
        |x| law.correct_order_density(n - i, l, x) * law.error_order_sf(i, j, x),
        0.0,
        law.upper_limit(),
        Tolerance::default(),
    )?;
    Ok(v.clamp(0.0, 1.0))
}
