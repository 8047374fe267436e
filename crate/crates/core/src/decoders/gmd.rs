//! Symbol-level generalized minimum distance decoding.

use alloc::vec::Vec;

use super::bm::bm_decode;
use crate::asd::select_most_likely;
use crate::channels::SoftObservation;
use crate::error::Error;
use crate::rscode::{symbols_from_bits, CodeSpec, Codeword};

/// Symbol reliabilities: the sum of `|LLR|` over each symbol's bits.
pub fn symbol_reliabilities(obs: &SoftObservation, spec: &CodeSpec) -> Vec<f64> {
    obs.llr()
        .chunks(spec.m())
        .map(|c| c.iter().map(|l| l.abs()).sum())
        .collect()
}

/// Erases the 0, 2, 4, ... least reliable symbols (up to `N - K`), runs
/// [`bm_decode`] on each trial and returns the most likely codeword found.
pub fn gmd_decode(obs: &SoftObservation, spec: &CodeSpec) -> Result<Option<Codeword>, Error> {
    if obs.len() != spec.n_bits() {
        return Err(Error::LengthMismatch {
            expected: spec.n_bits(),
            got: obs.len(),
        });
    }
    let hard = symbols_from_bits(&obs.hard_bits(), spec.m());
    let rel = symbol_reliabilities(obs, spec);
    let mut order: Vec<usize> = (0..spec.n_sym()).collect();
    order.sort_by(|&a, &b| rel[a].total_cmp(&rel[b]));

    let mut cands: Vec<Codeword> = Vec::new();
    let redundancy = spec.n_sym() - spec.k_sym();
    for erased in (0..=redundancy).step_by(2) {
        if let Some(c) = bm_decode(&hard, &order[..erased], spec)? {
            if !cands.contains(&c) {
                cands.push(c);
            }
        }
    }
    Ok(select_most_likely(&cands, obs, spec).cloned())
}
