//! Globally adaptive Gauss-Kronrod (7, 15) quadrature.

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;

use crate::error::Error;

// Kronrod abscissae on [-1, 1] (nonnegative half, descending), with the
// Kronrod weights and the weights of the embedded 7-point Gauss rule, which
// uses the odd-indexed abscissae.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Stopping rule for [`integrate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    /// Target error relative to the magnitude of the running estimate.
    pub relative: f64,
    /// Absolute floor, so integrals that vanish still terminate.
    pub absolute: f64,
    /// Number of equal pieces the range is split into before adapting.
    pub initial_pieces: usize,
    /// Cap on the number of live subintervals.
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            relative: 1e-10,
            absolute: 1e-300,
            initial_pieces: 32,
            max_intervals: 20_000,
        }
    }
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Piece {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (idx, (&x, &w)) in XGK.iter().zip(&WGK).take(7).enumerate() {
        let pair = f(c - h * x) + f(c + h * x);
        kronrod += w * pair;
        if idx % 2 == 1 {
            gauss += WG[idx / 2] * pair;
        }
    }
    Piece {
        a,
        b,
        value: kronrod * h,
        error: libm::fabs((kronrod - gauss) * h),
    }
}

/// Integrates `f` over `[a, b]`, always bisecting the piece with the largest
/// error estimate, until the summed estimate meets `tol`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: Tolerance) -> Result<f64, Error> {
    if b.partial_cmp(&a) != Some(core::cmp::Ordering::Greater) {
        return Ok(0.0);
    }
    let pieces = tol.initial_pieces.max(1);
    let width = (b - a) / pieces as f64;
    let mut heap = BinaryHeap::with_capacity(pieces * 2);
    let (mut total, mut err) = (0.0, 0.0);
    for p in 0..pieces {
        let lo = a + width * p as f64;
        let hi = if p + 1 == pieces { b } else { lo + width };
        let piece = gk15(&mut f, lo, hi);
        total += piece.value;
        err += piece.error;
        heap.push(piece);
    }
    while err > tol.absolute.max(tol.relative * libm::fabs(total)) {
        if heap.len() >= tol.max_intervals {
            return Err(Error::Quadrature { residual: err });
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // Interval at floating-point resolution; cannot refine further.
            return Err(Error::Quadrature { residual: err });
        }
        let left = gk15(&mut f, worst.a, mid);
        let right = gk15(&mut f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // Recompute from scratch occasionally to shed accumulated rounding.
        if heap.len() % 512 == 0 {
            total = heap.iter().map(|p| p.value).sum();
            err = heap.iter().map(|p| p.error).sum();
        }
    }
    Ok(total)
}
