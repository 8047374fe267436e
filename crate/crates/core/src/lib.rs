//! Bit-level algebraic soft-decision decoding of Reed-Solomon codes.
//!
//! The crate is `no_std` with `alloc`. Channel simulators take any
//! [`rand::Rng`]; the Monte Carlo harness lives in the companion CLI crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod asd;
pub mod bounds;
pub mod channels;
pub mod decoders;
pub mod error;
pub mod galois;
pub mod mas;
pub mod regions;
pub mod rscode;

pub use error::Error;
pub use galois::{FieldTables, Gf};
pub use rscode::{CodeSpec, Codeword};
