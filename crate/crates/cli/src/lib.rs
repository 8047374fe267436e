//! Monte Carlo harness and table emitters behind the `bitasd` command.

pub mod config;
pub mod emit;
pub mod output;
pub mod sim;

pub use config::{BoundConfig, CodeParams, RegionConfig, SimConfig};
pub use emit::{bound_table, region_table};
pub use sim::{run_simulation, FerPoint};
