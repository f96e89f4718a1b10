//! Majority votes over Ising-correlated signals, observed through a binary
//! symmetric channel.
//!
//! A ground-truth spin configuration is drawn from an Ising model on a graph
//! (the correlation structure of the voters), each spin is flipped
//! independently with probability `p`, and a majority vote over the noisy
//! copy tries to recover the majority of the truth. This crate computes the
//! probability that the vote gets it wrong, three ways:
//!
//! * exactly, by dynamic programming over magnetization classes
//!   ([`exact`]);
//! * by Monte Carlo with deterministic, parallelism-independent streams
//!   ([`montecarlo`]);
//! * in the large-`n` limit, via Gaussian or arcsine formulas, exponential
//!   bounds, and error exponents ([`asymptotics`]).
//!
//! [`graph`] and [`ising`] provide the underlying models and exact samplers;
//! [`detection`] holds the channel and the vote itself.

// Validation deliberately writes `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod detection;
pub mod error;
pub mod exact;
pub mod graph;
pub mod ising;
pub mod montecarlo;
pub mod numeric;
pub mod rng;

pub use error::{Error, Result};
pub use graph::{Graph, GraphFamily};
pub use ising::{Coupling, IsingModel, SpinVector};
