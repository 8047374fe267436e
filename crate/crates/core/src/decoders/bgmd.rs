//! Bit-level GMD: erase the least reliable bits one at a time and run ASD
//! with the bit-erasure assignment after each step.

use alloc::vec;
use alloc::vec::Vec;

use crate::asd::{asd_list, select_most_likely};
use crate::channels::SoftObservation;
use crate::error::Error;
use crate::mas::proposed_mas;
use crate::regions::mixed_region_finite;
use crate::rscode::{symbols_from_bits, CodeSpec, Codeword};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BgmdConfig {
    /// Even multiplicity parameter, at least 2.
    pub mult: u32,
    /// Cap on the number of erased bits; `None` means `n - k`.
    pub max_rounds: Option<usize>,
    /// Interpolation cost cap per round.
    pub budget: Option<u64>,
}

impl BgmdConfig {
    pub fn new(mult: u32) -> Self {
        BgmdConfig {
            mult,
            max_rounds: None,
            budget: None,
        }
    }
}

/// Result of a BGMD run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BgmdOutcome {
    pub selected: Option<Codeword>,
    /// Distinct candidates across all rounds, in discovery order.
    pub candidates: Vec<Codeword>,
    /// Number of erased bits in the last round considered.
    pub last_round: usize,
    /// Rounds for which ASD actually ran.
    pub asd_runs: usize,
}

/// Bit indices sorted by ascending `|LLR|`; equal magnitudes keep index order.
pub fn reliability_order(obs: &SoftObservation) -> Vec<usize> {
    let mut order: Vec<usize> = (0..obs.len()).collect();
    order.sort_by(|&a, &b| obs.llr()[a].abs().total_cmp(&obs.llr()[b].abs()));
    order
}

/// Runs BGMD and returns the most likely codeword on the accumulated list.
///
/// Round `i` erases the `i` least reliable bits. Rounds continue while
/// `i <= n - k` (or the configured cap) and `(0, i)` lies in the finite-cost
/// worst-case region for `cfg.mult`. A round whose multiplicity matrix equals
/// the previous one (the new erasure lands in a symbol already carrying two)
/// is skipped.
pub fn bgmd_decode(obs: &SoftObservation, spec: &CodeSpec, cfg: &BgmdConfig) -> Result<BgmdOutcome, Error> {
    if cfg.mult < 2 || !cfg.mult.is_multiple_of(2) {
        return Err(Error::InvalidMultiplicity(cfg.mult));
    }
    let (n_bits, m) = (spec.n_bits(), spec.m());
    if obs.len() != n_bits {
        return Err(Error::LengthMismatch {
            expected: n_bits,
            got: obs.len(),
        });
    }
    let hard = obs.hard_bits();

    // A hard decision that is already a codeword agrees with every bit; with
    // no zero LLR no other word can tie it, so it is the ML decision.
    let hard_word = Codeword::new(symbols_from_bits(&hard, m));
    if obs.llr().iter().all(|&l| l != 0.0) && spec.is_codeword(&hard_word.symbols) {
        return Ok(BgmdOutcome {
            selected: Some(hard_word.clone()),
            candidates: vec![hard_word],
            last_round: 0,
            asd_runs: 0,
        });
    }

    let order = reliability_order(obs);
    let limit = cfg.max_rounds.unwrap_or(n_bits - spec.k_bits()).min(n_bits - spec.k_bits());
    let mut erased = vec![false; n_bits];
    let mut per_symbol = vec![0usize; spec.n_sym()];
    let mut cands: Vec<Codeword> = Vec::new();
    let mut asd_runs = 0;
    let mut last_round = 0;

    for i in 0..=limit {
        if i > 0 {
            if mixed_region_finite(spec.n_sym(), spec.k_sym(), cfg.mult, i) < 0 {
                break;
            }
            let bit = order[i - 1];
            erased[bit] = true;
            let sym = bit / m;
            per_symbol[sym] += 1;
            last_round = i;
            if per_symbol[sym] > 2 {
                continue;
            }
        }
        let mm = proposed_mas(spec, &hard, &erased, cfg.mult)?;
        asd_runs += 1;
        for c in asd_list(&mm, spec, cfg.budget)? {
            if !cands.contains(&c) {
                cands.push(c);
            }
        }
    }
    let selected = select_most_likely(&cands, obs, spec).cloned();
    Ok(BgmdOutcome {
        selected,
        candidates: cands,
        last_round,
        asd_runs,
    })
}
