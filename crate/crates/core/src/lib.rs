#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod geometry2;
pub mod lr;
pub mod partitions;
pub mod probability;
pub mod schurweyl;
pub mod symfunc;
pub mod symmetry;
pub mod tetra;

pub use error::{Error, Result};
pub use partitions::Partition;
pub use symfunc::Spectrum;
pub use tetra::SpectrumTuple;
