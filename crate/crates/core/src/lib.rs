//! Exact, simultaneous, distribution-free confidence bands for hyperparameter
//! tuning curves built from random-search results.
//!
//! The pipeline runs in three stages:
//!
//! 1. [`cdfbands`] bounds the score distribution's CDF with simultaneous
//!    bands (DKW, Kolmogorov-Smirnov, or order-statistic "LD" bands).
//! 2. [`tuning`] raises those bounds to the `k`-th power to bound the CDF of
//!    the best score after `k` rounds, then reads off median or mean curves.
//! 3. [`sim`] checks the coverage guarantees in simulation against ground
//!    truths whose tuning curves are known exactly.
//!
//! [`numerics`] holds the Beta-distribution machinery everything else relies
//! on, and [`cli`] wires the pieces to search logs on disk.

pub mod cdfbands;
pub mod cli;
pub mod error;
pub mod numerics;
pub mod rng;
pub mod sim;
pub mod tuning;

pub use error::{Error, Result};
