//! Worst-case decoding regions.
//!
//! Every boundary is the largest integer satisfying a strict inequality and is
//! evaluated in exact integer arithmetic; square-root conditions are compared
//! after squaring. Error counts use `-1` for "no error count qualifies".
//!
//! Regions describe the worst-case placement (errors in distinct erasure-free
//! symbols, erasures spread evenly over the rest). Patterns where errors and
//! erasures share symbols may decode outside them.

use alloc::vec::Vec;

use crate::error::Error;
use crate::mas::flip_or_erase_optimal;

/// Bit-erasure radius under proportional assignment over the BEC.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErasureRadius {
    /// Every bit may be erased (`K = 1`).
    All,
    /// Largest `f` such that every pattern of `f` bit erasures is decodable.
    Max(usize),
}

/// Worst-case BEC radius of proportional assignment, infinite cost.
///
/// The rate band `i` is the one with
/// `2N + 2^(i+1) - 1 <= 2^(i+1) K < 4N + 2^(i+1) - 2`; there the radius is
/// the largest `f < (i + 1) N - 2^i (K - 1)`.
pub fn bec_radius(n: usize, k: usize, m: usize) -> ErasureRadius {
    assert!(k >= 1 && k <= n, "needs 1 <= K <= N");
    if k == 1 {
        return ErasureRadius::All;
    }
    let (n_, k_) = (n as u128, k as u128);
    for i in 1..=m as u32 {
        let p = 1u128 << (i + 1);
        if 2 * n_ + p - 1 <= p * k_ && p * k_ < 4 * n_ + p - 2 {
            let f = (u128::from(i) + 1) * n_ - (1u128 << i) * (k_ - 1) - 1;
            return ErasureRadius::Max(f as usize);
        }
    }
    // Only reachable for N > 2^m, where every band is skipped.
    ErasureRadius::Max(worst_case_erasure_radius(n, k, m))
}

/// Largest `f` for which `f` bit erasures spread as evenly as possible still
/// leave `sum_j 2^(-type_j) > K - 1`.
fn worst_case_erasure_radius(n: usize, k: usize, m: usize) -> usize {
    let decodable = |f: usize| {
        let (base, extra) = (f / n, f % n);
        let unit = |t: usize| 1u128 << (m - t.min(m));
        let eta = (n - extra) as u128 * unit(base) + extra as u128 * unit(base + 1);
        eta > ((k - 1) as u128) << m
    };
    let mut f = 0;
    while f < n * m && decodable(f + 1) {
        f += 1;
    }
    f
}

/// Number of touched symbols beyond which proportional assignment over the
/// BEC can never be certainly decodable: `2(N - K) + 1`.
///
/// Requires `R >= 1/2 + 3/(4N)`.
pub fn bec_nondecodable_threshold(n: usize, k: usize) -> Result<usize, Error> {
    if 4 * k < 2 * n + 3 {
        return Err(Error::Inapplicable("rate below 1/2 + 3/(4N)"));
    }
    Ok(2 * (n - k) + 1)
}

/// Radius, in `2^u`-ary symbol erasures, of proportional assignment over the
/// `2^u`-ary erasure channel: the largest `f < (N - K + 1) / (1 - 2^-u)`.
///
/// Requires `R >= 2^-u + (1 + 2^-2u - 2^-u) / N`.
pub fn qec_radius(n: usize, k: usize, u: u32) -> Result<usize, Error> {
    assert!((1..32).contains(&u), "needs 1 <= u < 32");
    let (n_, k_) = (n as u128, k as u128);
    let p = 1u128 << u;
    if p * p * k_ < p * n_ + p * p + 1 - p {
        return Err(Error::Inapplicable("rate below the 2^u-ary worst-case threshold"));
    }
    let num = (n_ + 1 - k_) * p;
    let den = p - 1;
    Ok((num.div_ceil(den) - 1) as usize)
}

/// Infinite-cost region of the bit-erasure assignment:
/// the largest `e < N - f/2 - sqrt((K - 1)(N - f/2))`.
pub fn mixed_region_infinite(n: usize, k: usize, f: usize) -> i64 {
    let y = 2 * n as i128 - f as i128;
    let w = k as i128 - 1;
    // 2e < y - sqrt(2 w y)  <=>  y - 2e > 0  and  (y - 2e)^2 > 2 w y
    let ok = |e: i128| {
        let d = y - 2 * e;
        d > 0 && d * d > 2 * w * y
    };
    largest_satisfying(ok, y.max(0) / 2 + 1)
}

/// Cost of the worst-case pattern with `f` bit erasures under the
/// bit-erasure assignment: `(2N - f) M^2/4 + N M/2`.
///
/// For `f <= N` this is `(N - f) M(M+1)/2 + f (M/2)(M/2 + 1)`; beyond that it
/// upper-bounds the cost of any pattern.
pub fn worst_case_cost(n: usize, mult: u32, f: usize) -> i128 {
    let (n, m, f) = (n as i128, i128::from(mult), f as i128);
    (2 * n - f) * m * m / 4 + n * m / 2
}

/// Finite-cost region of the bit-erasure assignment with even multiplicity
/// parameter `mult`: the largest `e` with `T((N - e - f/2) M) > C`, clamped at
/// `-1`.
pub fn mixed_region_finite(n: usize, k: usize, mult: u32, f: usize) -> i64 {
    assert!(mult >= 2 && mult.is_multiple_of(2), "multiplicity parameter must be even and >= 2");
    if f > 2 * n {
        return -1;
    }
    let (n_, f_, m) = (n as i128, f as i128, i128::from(mult));
    if k == 1 {
        // Any positive score: 2e < 2N - f.
        return largest_satisfying(|e| 2 * e < 2 * n_ - f_, n_ + 1);
    }
    let w = k as i128 - 1;
    let c = worst_case_cost(n, mult, f);
    let a = largest_segment(c, w);
    // 2M(a+1) e < 2M(a+1)N - M(a+1) f - a(a+1) w - 2C
    let lhs_unit = 2 * m * (a + 1);
    let rhs = 2 * m * (a + 1) * n_ - m * (a + 1) * f_ - a * (a + 1) * w - 2 * c;
    if rhs <= 0 {
        return -1;
    }
    ((rhs - 1) / lhs_unit) as i64
}

/// Largest `a >= 0` with `a (a + 1) w <= 2 c`.
fn largest_segment(c: i128, w: i128) -> i128 {
    let target = 2 * c;
    let mut a = libm::floor((-1.0 + libm::sqrt(1.0 + 4.0 * target as f64 / w as f64)) / 2.0) as i128;
    a = a.max(0);
    while a > 0 && a * (a + 1) * w > target {
        a -= 1;
    }
    while (a + 1) * (a + 2) * w <= target {
        a += 1;
    }
    a
}

/// Closed-form region at `M = 2`: the largest `e < (N - K + 1)/2 - f/3`.
pub fn m2_region(n: usize, k: usize, f: usize) -> i64 {
    let rhs = 3 * (n as i64 - k as i64 + 1) - 2 * f as i64;
    if rhs <= 0 {
        return -1;
    }
    (rhs - 1) / 6
}

/// `true` when `(e, f)` provably fails under the bit-erasure assignment:
/// `f >= 2(N - (K - 1) - e)`.
pub fn nondecodable_outer(n: usize, k: usize, e: usize, f: usize) -> bool {
    f as i64 >= 2 * (n as i64 - (k as i64 - 1) - e as i64)
}

/// Outer bound on any assignment's infinite-cost region at `f` erasures,
/// valid for `e + f <= N`: the optimum on the 1-bit flipped-or-erased channel.
pub fn optimal_outer_region(n: usize, k: usize, m: usize, f: usize) -> i64 {
    let fe = flip_or_erase_optimal(n, k, m, f);
    fe.e_max.map_or(-1, |e| e as i64)
}

/// Largest `e` in `0..limit` with `ok(e)`, assuming `ok` is downward closed;
/// `-1` if `ok(0)` fails.
fn largest_satisfying(ok: impl Fn(i128) -> bool, limit: i128) -> i64 {
    if !ok(0) {
        return -1;
    }
    let (mut lo, mut hi) = (0i128, limit.max(1));
    while ok(hi) {
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo as i64
}

/// Which boundary a [`DecodingRegion`] tabulates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionKind {
    /// Bit-erasure assignment with an even multiplicity parameter.
    Finite { mult: u32 },
    /// Bit-erasure assignment as the multiplicity grows.
    Infinite,
    /// Closed form for `M = 2`.
    M2Closed,
    /// Optimal-assignment outer bound (valid for `e + f <= N`).
    OptimalOuter,
}

impl RegionKind {
    pub fn label(&self) -> &'static str {
        match self {
            RegionKind::Finite { .. } => "proposed",
            RegionKind::Infinite => "proposed-inf",
            RegionKind::M2Closed => "proposed-m2-closed",
            RegionKind::OptimalOuter => "optimal-outer",
        }
    }

    /// Multiplicity parameter, `None` for infinite-cost kinds.
    pub fn mult(&self) -> Option<u32> {
        match self {
            RegionKind::Finite { mult } => Some(*mult),
            RegionKind::M2Closed => Some(2),
            _ => None,
        }
    }
}

/// Boundary table `e_max(f)` for `f = 0..=f_max`, stopping at the first empty
/// row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodingRegion {
    pub kind: RegionKind,
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub e_max: Vec<i64>,
}

impl DecodingRegion {
    pub fn compute(kind: RegionKind, n: usize, k: usize, m: usize) -> Self {
        let ceiling = match kind {
            RegionKind::OptimalOuter => n,
            _ => 2 * n,
        };
        let mut e_max = Vec::new();
        for f in 0..=ceiling {
            let e = Self::boundary(kind, n, k, m, f);
            if e < 0 {
                break;
            }
            e_max.push(e);
        }
        DecodingRegion { kind, n, k, m, e_max }
    }

    fn boundary(kind: RegionKind, n: usize, k: usize, m: usize, f: usize) -> i64 {
        match kind {
            RegionKind::Finite { mult } => mixed_region_finite(n, k, mult, f),
            RegionKind::Infinite => mixed_region_infinite(n, k, f),
            RegionKind::M2Closed => m2_region(n, k, f),
            RegionKind::OptimalOuter => optimal_outer_region(n, k, m, f),
        }
    }

    /// `e_max(f)`, `-1` outside the table.
    pub fn at(&self, f: usize) -> i64 {
        self.e_max.get(f).copied().unwrap_or(-1)
    }

    /// Largest erasure count with a nonempty row.
    pub fn f_max(&self) -> Option<usize> {
        self.e_max.len().checked_sub(1)
    }

    pub fn contains(&self, e: usize, f: usize) -> bool {
        e as i64 <= self.at(f)
    }
}
