//! End-to-end decoders: bounded-distance BM, symbol-level GMD and bit-level
//! GMD over ASD.

mod bgmd;
mod bm;
mod gmd;

pub use bgmd::{bgmd_decode, reliability_order, BgmdConfig, BgmdOutcome};
pub use bm::bm_decode;
pub use gmd::{gmd_decode, symbol_reliabilities};
