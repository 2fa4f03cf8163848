//! Robustness tooling for directed networks: synthetic generators,
//! node-removal attack simulation with connectivity and controllability
//! curves, adjacency-image masking, reproducible datasets and the statistics
//! used to judge a predictor's tolerance to missing edges.

pub mod attack;
pub mod cli;
pub mod dataset;
pub mod error;
pub mod fmtnum;
pub mod graph;
pub mod kv;
pub mod mask;
pub mod netgen;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
