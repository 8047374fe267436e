//! Region and bound tables.

use anyhow::Result;
use bitasd::bounds::{bec_fer, bgmd_awgn_upper, bm_awgn_fer, bounded_distance_fer, binomial_tail, BoundKind};
use bitasd::channels::n0_from_ebn0_db;
use bitasd::regions::{DecodingRegion, RegionKind};
use serde::Serialize;

use crate::config::{BoundConfig, BoundStrategy, ChannelKind, RegionConfig, RegionStrategy};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionRow {
    pub f: usize,
    pub e_max: i64,
    pub strategy: &'static str,
    #[serde(rename = "M")]
    pub mult: Option<u32>,
}

pub fn region_kind(strategy: RegionStrategy, mult: u32) -> RegionKind {
    match strategy {
        RegionStrategy::Proposed => RegionKind::Finite { mult },
        RegionStrategy::ProposedInf => RegionKind::Infinite,
        RegionStrategy::ProposedM2Closed => RegionKind::M2Closed,
        RegionStrategy::OptimalOuter => RegionKind::OptimalOuter,
    }
}

/// One row per erasure count `f = 0..=f_max` with a nonempty boundary.
pub fn region_table(cfg: &RegionConfig) -> Result<Vec<RegionRow>> {
    let spec = cfg.code.spec()?;
    if cfg.strategy == RegionStrategy::Proposed {
        anyhow::ensure!(
            cfg.mult >= 2 && cfg.mult.is_multiple_of(2),
            "the bit-erasure assignment needs an even multiplicity parameter >= 2"
        );
    }
    anyhow::ensure!(spec.k_sym() >= 2, "regions need K >= 2");
    let kind = region_kind(cfg.strategy, cfg.mult);
    let region = DecodingRegion::compute(kind, spec.n_sym(), spec.k_sym(), spec.m());
    Ok(region
        .e_max
        .iter()
        .enumerate()
        .map(|(f, &e_max)| RegionRow {
            f,
            e_max,
            strategy: kind.label(),
            mult: kind.mult(),
        })
        .collect())
}

/// A bound value, or a row flagging that the bound does not apply to this
/// code.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRow {
    pub param: f64,
    pub fer_bound: Option<f64>,
    pub kind: String,
    pub strategy: &'static str,
    #[serde(rename = "M")]
    pub mult: Option<u32>,
}

impl BoundRow {
    fn new(param: f64, value: f64, kind: BoundKind, strategy: &'static str, mult: Option<u32>) -> Self {
        BoundRow {
            param,
            fer_bound: Some(value),
            kind: kind.label().to_string(),
            strategy,
            mult,
        }
    }

    fn inapplicable(param: f64, kind: BoundKind, strategy: &'static str, mult: Option<u32>) -> Self {
        BoundRow {
            param,
            fer_bound: None,
            kind: format!("{}:inapplicable", kind.label()),
            strategy,
            mult,
        }
    }
}

/// Analytic curves for every grid point. BM rows are exact bounded-distance
/// failure probabilities; BEC proportional-assignment rows give the exact
/// value followed by the upper and lower brackets.
pub fn bound_table(cfg: &BoundConfig) -> Result<Vec<BoundRow>> {
    cfg.validate()?;
    let (n, k, m) = (cfg.code.n, cfg.code.k, cfg.code.m as usize);
    let label = cfg.strategy.label();
    let mut rows = Vec::new();
    for &param in &cfg.grid.0 {
        match (cfg.strategy, cfg.channel) {
            (BoundStrategy::Bm, ChannelKind::Awgn) => {
                let n0 = n0_from_ebn0_db(param, cfg.code.rate());
                rows.push(BoundRow::new(param, bm_awgn_fer(n, k, m, n0), BoundKind::Exact, label, None));
            }
            (BoundStrategy::Bm, ChannelKind::Bsc) => {
                let ps = -(m as f64 * (-param).ln_1p()).exp_m1();
                let v = bounded_distance_fer(n, (n - k) / 2, ps);
                rows.push(BoundRow::new(param, v, BoundKind::Exact, label, None));
            }
            (BoundStrategy::Bm, ChannelKind::Bec) => {
                // More than N - K erased symbols.
                let touched = -(m as f64 * (-param).ln_1p()).exp_m1();
                let v = binomial_tail(n, n - k + 1, touched);
                rows.push(BoundRow::new(param, v, BoundKind::Exact, label, None));
            }
            (BoundStrategy::Pmas, _) => {
                let b = bec_fer(n, k, m, param);
                rows.push(BoundRow::new(param, b.exact, BoundKind::Exact, label, None));
                rows.push(BoundRow::new(param, b.upper, BoundKind::Upper, label, None));
                rows.push(match b.lower {
                    Some(v) => BoundRow::new(param, v, BoundKind::Lower, label, None),
                    None => BoundRow::inapplicable(param, BoundKind::Lower, label, None),
                });
            }
            (BoundStrategy::Bgmd | BoundStrategy::BgmdInf, _) => {
                let kind = match cfg.strategy {
                    BoundStrategy::Bgmd => RegionKind::Finite { mult: cfg.mult },
                    _ => RegionKind::Infinite,
                };
                let n0 = n0_from_ebn0_db(param, cfg.code.rate());
                let terms = bgmd_awgn_upper(n, k, m, kind, n0, cfg.binomial_weights)?;
                rows.push(BoundRow::new(param, terms.total, BoundKind::Upper, label, kind.mult()));
            }
        }
    }
    Ok(rows)
}
