use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use bitasd_cli::config::{
    parse_count, BoundConfig, BoundStrategy, ChannelKind, CodeParams, DecoderKind, Format, Grid, OutputSpec,
    RegionConfig, RegionStrategy, SimConfig,
};
use bitasd_cli::{bound_table, output, region_table, run_simulation};
use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;

#[derive(Parser)]
#[command(name = "bitasd", version = output::VERSION, about = "Bit-level soft-decision Reed-Solomon experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo frame error rates over a channel parameter grid.
    Simulate(SimulateArgs),
    /// Worst-case decoding region table e_max(f).
    Region(RegionArgs),
    /// Analytic FER bounds over a channel parameter grid.
    Bound(BoundArgs),
}

/// Flags override the corresponding fields of `--config`.
#[derive(Args)]
struct OutputArgs {
    /// JSON configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format; defaults to the file extension, else CSV.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

impl OutputArgs {
    fn apply(&self, out: &mut OutputSpec) {
        if self.out.is_some() {
            out.path.clone_from(&self.out);
        }
        if self.format.is_some() {
            out.format = self.format;
        }
    }
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    io: OutputArgs,
    /// N,K,m[,prim_poly]
    #[arg(long)]
    code: Option<CodeParams>,
    #[arg(long, value_enum)]
    channel: Option<ChannelKind>,
    /// start:step:stop or a comma list; Eb/N0 in dB for awgn.
    #[arg(long, alias = "snr", alias = "grid")]
    param: Option<Grid>,
    #[arg(long, value_enum)]
    decoder: Option<DecoderKind>,
    #[arg(long)]
    mult: Option<u32>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    max_rounds: Option<usize>,
    /// Maximum frames per grid point (accepts 1e6).
    #[arg(long, value_parser = parse_count)]
    trials: Option<u64>,
    /// Stop a grid point after this many frame errors.
    #[arg(long, value_parser = parse_count)]
    stop_at: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct RegionArgs {
    #[command(flatten)]
    io: OutputArgs,
    #[arg(long)]
    code: Option<CodeParams>,
    #[arg(long, value_enum)]
    strategy: Option<RegionStrategy>,
    #[arg(long)]
    mult: Option<u32>,
}

#[derive(Args)]
struct BoundArgs {
    #[command(flatten)]
    io: OutputArgs,
    #[arg(long)]
    code: Option<CodeParams>,
    #[arg(long, value_enum)]
    channel: Option<ChannelKind>,
    #[arg(long, alias = "snr", alias = "grid")]
    param: Option<Grid>,
    #[arg(long, value_enum)]
    strategy: Option<BoundStrategy>,
    #[arg(long)]
    mult: Option<u32>,
    /// Drop the C(n, i) factor from the error-count weights.
    #[arg(long)]
    no_binomial_weights: bool,
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn required<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.with_context(|| format!("--{flag} is required without --config"))
}

fn simulate(a: SimulateArgs) -> Result<()> {
    let mut cfg = match &a.io.config {
        Some(p) => load::<SimConfig>(p)?,
        None => SimConfig::new(
            required(a.code, "code")?,
            required(a.channel, "channel")?,
            required(a.param.clone(), "snr")?.0,
            required(a.decoder, "decoder")?,
            required(a.trials, "trials")?,
        ),
    };
    if let Some(v) = a.code {
        cfg.code = v;
    }
    if let Some(v) = a.channel {
        cfg.channel = v;
    }
    if let Some(v) = a.param {
        cfg.grid = v;
    }
    if let Some(v) = a.decoder {
        cfg.decoder = v;
    }
    if let Some(v) = a.mult {
        cfg.mult = v;
    }
    if a.budget.is_some() {
        cfg.budget = a.budget;
    }
    if a.max_rounds.is_some() {
        cfg.max_rounds = a.max_rounds;
    }
    if let Some(v) = a.trials {
        cfg.trials = v;
    }
    if let Some(v) = a.stop_at {
        cfg.stop_at = v;
    }
    if let Some(v) = a.seed {
        cfg.seed = v;
    }
    a.io.apply(&mut cfg.output);
    let rows = run_simulation(&cfg)?;
    output::write_table(&cfg.output, "simulate", &cfg, &rows, output::simulate_csv)
}

fn region(a: RegionArgs) -> Result<()> {
    let mut cfg = match &a.io.config {
        Some(p) => load::<RegionConfig>(p)?,
        None => RegionConfig {
            code: required(a.code, "code")?,
            strategy: RegionStrategy::Proposed,
            mult: 2,
            output: OutputSpec::default(),
        },
    };
    if let Some(v) = a.code {
        cfg.code = v;
    }
    if let Some(v) = a.strategy {
        cfg.strategy = v;
    }
    if let Some(v) = a.mult {
        cfg.mult = v;
    }
    a.io.apply(&mut cfg.output);
    let rows = region_table(&cfg)?;
    output::write_table(&cfg.output, "region", &cfg, &rows, output::region_csv)
}

fn bound(a: BoundArgs) -> Result<()> {
    let mut cfg = match &a.io.config {
        Some(p) => load::<BoundConfig>(p)?,
        None => BoundConfig {
            code: required(a.code, "code")?,
            channel: required(a.channel, "channel")?,
            grid: required(a.param.clone(), "snr")?,
            strategy: required(a.strategy, "strategy")?,
            mult: 2,
            binomial_weights: true,
            output: OutputSpec::default(),
        },
    };
    if let Some(v) = a.code {
        cfg.code = v;
    }
    if let Some(v) = a.channel {
        cfg.channel = v;
    }
    if let Some(v) = a.param {
        cfg.grid = v;
    }
    if let Some(v) = a.strategy {
        cfg.strategy = v;
    }
    if let Some(v) = a.mult {
        cfg.mult = v;
    }
    if a.no_binomial_weights {
        cfg.binomial_weights = false;
    }
    a.io.apply(&mut cfg.output);
    let rows = bound_table(&cfg)?;
    output::write_table(&cfg.output, "bound", &cfg, &rows, output::bound_csv)
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Simulate(a) => simulate(a),
        Command::Region(a) => region(a),
        Command::Bound(a) => bound(a),
    }
}
