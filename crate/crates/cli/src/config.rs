//! Experiment configuration shared by the CLI flags and `--config` JSON files.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, ensure, Context, Result};
use bitasd::{CodeSpec, FieldTables};
use serde::{Deserialize, Serialize};

/// `N,K,m` with an optional primitive polynomial (`255,239,8,0x11d`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prim_poly: Option<u32>,
}

impl CodeParams {
    pub fn new(n: usize, k: usize, m: u32) -> Self {
        CodeParams { n, k, m, prim_poly: None }
    }

    pub fn spec(&self) -> Result<CodeSpec> {
        let field = FieldTables::new(self.m, self.prim_poly)?;
        CodeSpec::with_field(self.n, self.k, field).with_context(|| format!("code {self}"))
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.n, self.k, self.m)?;
        if let Some(p) = self.prim_poly {
            write!(f, ",{p:#x}")?;
        }
        Ok(())
    }
}

fn parse_u32(s: &str) -> Result<u32> {
    let s = s.trim();
    Ok(match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u32::from_str_radix(hex, 16)?,
        None => s.parse()?,
    })
}

impl FromStr for CodeParams {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        ensure!(
            parts.len() == 3 || parts.len() == 4,
            "code must be N,K,m or N,K,m,prim_poly (got {s:?})"
        );
        Ok(CodeParams {
            n: parts[0].parse().context("N")?,
            k: parts[1].parse().context("K")?,
            m: parse_u32(parts[2]).context("m")?,
            prim_poly: parts.get(3).map(|p| parse_u32(p)).transpose().context("primitive polynomial")?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelKind {
    /// Binary erasure channel; grid values are erasure probabilities.
    Bec,
    /// Binary symmetric channel; grid values are crossover probabilities.
    Bsc,
    /// BPSK over AWGN; grid values are Eb/N0 in dB.
    Awgn,
}

impl ChannelKind {
    pub fn label(self) -> &'static str {
        match self {
            ChannelKind::Bec => "bec",
            ChannelKind::Bsc => "bsc",
            ChannelKind::Awgn => "awgn",
        }
    }

    fn check_param(self, v: f64) -> Result<()> {
        match self {
            ChannelKind::Bec | ChannelKind::Bsc => {
                ensure!((0.0..=1.0).contains(&v), "{} probability {v} outside [0, 1]", self.label())
            }
            ChannelKind::Awgn => ensure!(v.is_finite(), "Eb/N0 {v} is not finite"),
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum DecoderKind {
    /// Berlekamp-Massey errors-and-erasures; symbols with an erased bit are
    /// erased.
    Bm,
    /// Symbol-level GMD over BM.
    Gmd,
    /// Bit-level GMD over ASD with the bit-erasure assignment.
    Bgmd,
    /// ASD with proportional assignment `floor(pi M)`.
    AsdPmas,
    /// Infinite-cost proportional assignment over the BEC: a frame fails iff
    /// `sum_j 2^(-erased_j) <= K - 1`. No decoding is run.
    PmasPredicate,
}

impl DecoderKind {
    pub fn label(self) -> &'static str {
        match self {
            DecoderKind::Bm => "bm",
            DecoderKind::Gmd => "gmd",
            DecoderKind::Bgmd => "bgmd",
            DecoderKind::AsdPmas => "asd-pmas",
            DecoderKind::PmasPredicate => "pmas-predicate",
        }
    }
}

/// Channel parameter values, written `start:step:stop`, `a,b,c` or as a JSON
/// array.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridRepr", into = "Vec<f64>")]
pub struct Grid(pub Vec<f64>);

#[derive(Deserialize)]
#[serde(untagged)]
enum GridRepr {
    List(Vec<f64>),
    Text(String),
}

impl TryFrom<GridRepr> for Grid {
    type Error = anyhow::Error;

    fn try_from(r: GridRepr) -> Result<Self> {
        match r {
            GridRepr::List(v) => Ok(Grid(v)),
            GridRepr::Text(s) => s.parse(),
        }
    }
}

impl From<Grid> for Vec<f64> {
    fn from(g: Grid) -> Self {
        g.0
    }
}

impl FromStr for Grid {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains(':') {
            let p: Vec<f64> = s
                .split(':')
                .map(|x| x.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .with_context(|| format!("range {s:?}"))?;
            ensure!(p.len() == 3, "range must be start:step:stop (got {s:?})");
            let (start, step, stop) = (p[0], p[1], p[2]);
            ensure!(step > 0.0 && stop >= start, "range {s:?} is empty or has a non-positive step");
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            // Rounded to 1e-9 so that 4 + 3 * 0.25 prints as 4.75.
            let points = (0..count)
                .map(|i| ((start + i as f64 * step) * 1e9).round() / 1e9)
                .collect();
            return Ok(Grid(points));
        }
        let points = s
            .split(',')
            .map(|x| x.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .with_context(|| format!("grid {s:?}"))?;
        Ok(Grid(points))
    }
}

/// Accepts `100000` as well as `1e5`.
pub fn parse_count(s: &str) -> Result<u64> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = s.parse().with_context(|| format!("count {s:?}"))?;
    ensure!(v >= 0.0 && v.fract() == 0.0 && v < 1.8e19, "count {s:?} is not a nonnegative integer");
    Ok(v as u64)
}

fn deserialize_count<'de, D: serde::Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Count {
        Int(u64),
        Float(f64),
        Text(String),
    }
    match Count::deserialize(d)? {
        Count::Int(v) => Ok(v),
        Count::Float(v) => parse_count(&v.to_string()).map_err(serde::de::Error::custom),
        Count::Text(s) => parse_count(&s).map_err(serde::de::Error::custom),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Where and how a table is written. `path = None` means stdout.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

impl OutputSpec {
    /// Explicit format, else `.json` paths give JSON and everything else CSV.
    pub fn resolved_format(&self) -> Format {
        self.format.unwrap_or_else(|| match &self.path {
            Some(p) if p.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) => Format::Json,
            _ => Format::Csv,
        })
    }
}

fn default_mult() -> u32 {
    2
}

fn default_stop_at() -> u64 {
    100
}

/// One Monte Carlo experiment: a code, a channel sweep and a decoder.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub code: CodeParams,
    pub channel: ChannelKind,
    pub grid: Grid,
    pub decoder: DecoderKind,
    #[serde(default = "default_mult")]
    pub mult: u32,
    /// Interpolation cost cap; overruns count as frame errors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    /// Cap on BGMD erasure rounds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_rounds: Option<usize>,
    #[serde(deserialize_with = "deserialize_count")]
    pub trials: u64,
    #[serde(default = "default_stop_at", deserialize_with = "deserialize_count")]
    pub stop_at: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: OutputSpec,
}

impl SimConfig {
    pub fn new(code: CodeParams, channel: ChannelKind, grid: Vec<f64>, decoder: DecoderKind, trials: u64) -> Self {
        SimConfig {
            code,
            channel,
            grid: Grid(grid),
            decoder,
            mult: default_mult(),
            budget: None,
            max_rounds: None,
            trials,
            stop_at: default_stop_at(),
            seed: 0,
            output: OutputSpec::default(),
        }
    }

    pub fn validate(&self) -> Result<CodeSpec> {
        ensure!(self.trials >= 1, "trials must be at least 1");
        ensure!(!self.grid.0.is_empty(), "parameter grid is empty");
        for &v in &self.grid.0 {
            self.channel.check_param(v)?;
        }
        let spec = self.code.spec()?;
        match self.decoder {
            DecoderKind::Bgmd => ensure!(
                self.mult >= 2 && self.mult.is_multiple_of(2),
                "bgmd needs an even multiplicity parameter >= 2 (got {})",
                self.mult
            ),
            DecoderKind::AsdPmas => ensure!(self.mult >= 1, "asd-pmas needs a multiplicity parameter >= 1"),
            DecoderKind::Bm | DecoderKind::Gmd => ensure!(
                spec.is_narrow_sense(),
                "{} needs N = 2^m - 1 (got N = {})",
                self.decoder.label(),
                self.code.n
            ),
            DecoderKind::PmasPredicate => {
                if self.channel != ChannelKind::Bec {
                    bail!("pmas-predicate is defined on the bec only");
                }
            }
        }
        Ok(spec)
    }
}

fn default_region_strategy() -> RegionStrategy {
    RegionStrategy::Proposed
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum RegionStrategy {
    /// Bit-erasure assignment at the given multiplicity parameter.
    Proposed,
    /// Bit-erasure assignment as the multiplicity grows.
    ProposedInf,
    /// Closed form at `M = 2`.
    ProposedM2Closed,
    /// Optimal-assignment outer bound.
    OptimalOuter,
}

/// A worst-case decoding region table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionConfig {
    pub code: CodeParams,
    #[serde(default = "default_region_strategy")]
    pub strategy: RegionStrategy,
    #[serde(default = "default_mult")]
    pub mult: u32,
    #[serde(default)]
    pub output: OutputSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum BoundStrategy {
    /// Bounded-distance BM (closed form on every channel).
    Bm,
    /// Infinite-cost proportional assignment over the BEC (exact and both
    /// brackets).
    Pmas,
    /// BGMD order-statistics upper bound over AWGN at the given multiplicity.
    Bgmd,
    /// Same bound with the infinite-cost region.
    BgmdInf,
}

impl BoundStrategy {
    pub fn label(self) -> &'static str {
        match self {
            BoundStrategy::Bm => "bm",
            BoundStrategy::Pmas => "pmas",
            BoundStrategy::Bgmd => "bgmd",
            BoundStrategy::BgmdInf => "bgmd-inf",
        }
    }
}

fn default_true() -> bool {
    true
}

/// Analytic FER curves over a channel parameter grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundConfig {
    pub code: CodeParams,
    pub channel: ChannelKind,
    pub grid: Grid,
    pub strategy: BoundStrategy,
    #[serde(default = "default_mult")]
    pub mult: u32,
    /// Weight each error count by `C(n, i)`; `false` keeps only
    /// `P_b^i (1 - P_b)^(n - i)`.
    #[serde(default = "default_true")]
    pub binomial_weights: bool,
    #[serde(default)]
    pub output: OutputSpec,
}

impl BoundConfig {
    pub fn validate(&self) -> Result<()> {
        ensure!(!self.grid.0.is_empty(), "parameter grid is empty");
        for &v in &self.grid.0 {
            self.channel.check_param(v)?;
        }
        self.code.spec()?;
        let ok = match self.strategy {
            BoundStrategy::Bm => true,
            BoundStrategy::Pmas => self.channel == ChannelKind::Bec,
            BoundStrategy::Bgmd | BoundStrategy::BgmdInf => self.channel == ChannelKind::Awgn,
        };
        ensure!(
            ok,
            "strategy {} is not available on the {}",
            self.strategy.label(),
            self.channel.label()
        );
        if self.strategy == BoundStrategy::Bgmd {
            ensure!(self.mult >= 2 && self.mult.is_multiple_of(2), "bgmd needs an even multiplicity parameter >= 2");
        }
        Ok(())
    }
}
