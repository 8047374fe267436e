//! Algebraic soft-decision decoding: multiplicity matrices, score and cost,
//! the list-membership conditions, and the interpolate / factorize / select
//! pipeline.

mod factorize;
mod interpolate;
mod poly;

use alloc::vec;
use alloc::vec::Vec;

pub use factorize::factorize;
pub use interpolate::{interpolate, interpolation_shape, monomial_count};
pub use poly::BivariatePoly;

use crate::channels::SoftObservation;
use crate::error::Error;
use crate::rscode::{CodeSpec, Codeword};

/// `q x N` table of interpolation multiplicities, indexed by
/// (field element value, symbol position).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityMatrix {
    q: usize,
    n: usize,
    data: Vec<u32>,
}

impl MultiplicityMatrix {
    pub fn zeros(q: usize, n: usize) -> Self {
        MultiplicityMatrix {
            q,
            n,
            data: vec![0; q * n],
        }
    }

    /// Builds from `n` columns of length `q`.
    pub fn from_columns(q: usize, columns: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(q * columns.len());
        for col in columns {
            assert_eq!(col.len(), q, "column length must equal q");
            data.extend_from_slice(col);
        }
        MultiplicityMatrix {
            q,
            n: columns.len(),
            data,
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[j * self.q + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, mult: u32) {
        self.data[j * self.q + i] = mult;
    }

    pub fn column(&self, j: usize) -> &[u32] {
        &self.data[j * self.q..(j + 1) * self.q]
    }

    pub fn column_mut(&mut self, j: usize) -> &mut [u32] {
        &mut self.data[j * self.q..(j + 1) * self.q]
    }

    pub fn max_entry(&self) -> u32 {
        self.data.iter().copied().max().unwrap_or(0)
    }

    /// Nonzero entries as `(position j, element i, multiplicity)`, column by
    /// column.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0)
            .map(move |(idx, &v)| (idx / self.q, idx % self.q, v))
    }

    /// Sum of the multiplicities sitting on the symbols of `c`.
    pub fn score(&self, c: &Codeword) -> u64 {
        c.symbols
            .iter()
            .enumerate()
            .map(|(j, s)| u64::from(self.get(s.0 as usize, j)))
            .sum()
    }

    /// Number of linear constraints: `sum M (M + 1) / 2`.
    pub fn cost(&self) -> u64 {
        self.data
            .iter()
            .map(|&v| u64::from(v) * (u64::from(v) + 1) / 2)
            .sum()
    }
}

/// Score and cost normalized by the multiplicity parameter: score `s M` and
/// cost `c M^2` as `M` grows.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticScoreCost {
    pub s: f64,
    pub c: f64,
}

/// Piecewise-linear score threshold: `(a + 1)(S - a (K - 1) / 2)` on the
/// segment `a (K - 1) < S <= (a + 1)(K - 1)`.
pub fn t_of_s(s: f64, k: usize) -> f64 {
    assert!(k >= 2, "threshold needs K >= 2");
    if s <= 0.0 {
        return 0.0;
    }
    let w = (k - 1) as f64;
    let a = libm::ceil(s / w) - 1.0;
    (a + 1.0) * (s - a * w / 2.0)
}

/// `2 T(S)` in exact integer arithmetic.
pub fn t_of_s_doubled(s: u64, k: usize) -> u128 {
    assert!(k >= 2, "threshold needs K >= 2");
    if s == 0 {
        return 0;
    }
    let w = (k - 1) as u128;
    let s = u128::from(s);
    let a = (s - 1) / w;
    (a + 1) * (2 * s - a * w)
}

/// List-membership guarantee at finite cost: `T(S) > C`.
///
/// For `K = 1` every nonzero score suffices.
pub fn certainly_decodable_finite(score: u64, cost: u64, k: usize) -> bool {
    if k <= 1 {
        return score > 0;
    }
    t_of_s_doubled(score, k) > 2 * u128::from(cost)
}

/// List-membership guarantee as the cost grows: `s >= sqrt(2 (K - 1) c)`.
pub fn certainly_decodable_asymptotic(sc: AsymptoticScoreCost, k: usize) -> bool {
    if k <= 1 {
        return sc.s > 0.0;
    }
    sc.s >= 0.0 && sc.s * sc.s >= 2.0 * (k - 1) as f64 * sc.c
}

/// Output of one ASD run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeResult {
    /// Re-encoded factorization outputs, sorted and deduplicated.
    pub candidates: Vec<Codeword>,
    /// Most likely candidate; `None` on decoding failure.
    pub selected: Option<Codeword>,
}

/// Log-likelihood key of a codeword under `obs`: the number of bits that
/// contradict a perfectly known bit, then the correlation with the finite
/// LLRs. Lower first component and higher second component are more likely.
pub fn likelihood_key(obs: &SoftObservation, spec: &CodeSpec, c: &Codeword) -> (usize, f64) {
    let m = spec.m();
    let mut impossible = 0;
    let mut corr = 0.0;
    for (j, s) in c.symbols.iter().enumerate() {
        for b in 0..m {
            let l = obs.llr()[j * m + b];
            let one = (s.0 >> b) & 1 == 1;
            if l.is_infinite() {
                impossible += usize::from((l > 0.0) == one);
            } else {
                corr += if one { -l } else { l };
            }
        }
    }
    (impossible, corr)
}

/// Most likely codeword in `cands`; equal likelihoods go to the
/// lexicographically smallest symbol vector.
pub fn select_most_likely<'a>(
    cands: &'a [Codeword],
    obs: &SoftObservation,
    spec: &CodeSpec,
) -> Option<&'a Codeword> {
    cands
        .iter()
        .map(|c| (likelihood_key(obs, spec, c), c))
        .min_by(|(ka, a), (kb, b)| {
            ka.0.cmp(&kb.0)
                .then_with(|| kb.1.total_cmp(&ka.1))
                .then_with(|| a.cmp(b))
        })
        .map(|(_, c)| c)
}

/// Interpolates through `mm`, factorizes, re-encodes, and picks the most
/// likely candidate under `obs`.
pub fn asd_decode(
    mm: &MultiplicityMatrix,
    spec: &CodeSpec,
    obs: &SoftObservation,
    budget: Option<u64>,
) -> Result<DecodeResult, Error> {
    let candidates = asd_list(mm, spec, budget)?;
    let selected = select_most_likely(&candidates, obs, spec).cloned();
    Ok(DecodeResult {
        candidates,
        selected,
    })
}

/// The candidate list alone.
pub fn asd_list(mm: &MultiplicityMatrix, spec: &CodeSpec, budget: Option<u64>) -> Result<Vec<Codeword>, Error> {
    if mm.q() != spec.field().q() || mm.n() != spec.n_sym() {
        return Err(Error::LengthMismatch {
            expected: spec.n_sym(),
            got: mm.n(),
        });
    }
    let q = interpolate(mm, spec, budget)?;
    let mut out: Vec<Codeword> = factorize(&q, spec.field(), spec.k_sym())
        .iter()
        .map(|g| spec.encode_poly(g))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}
