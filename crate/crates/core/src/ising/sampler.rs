//! Exact samplers for the structured graph families and a Glauber chain for
//! arbitrary edge lists.
//!
//! Every family except `Custom` admits an exact draw:
//!
//! * `Empty` — independent fair signs;
//! * `Chain` — forward Markov sampling of the free chain;
//! * `ChainPbc` — free-chain proposals accepted with probability
//!   `exp(theta (x_n x_1 - 1))`, which retargets the closing edge;
//! * `Complete` (either coupling) — the magnetization class is drawn from its
//!   marginal pmf, then the positive spins are placed uniformly.
//!
//! `Custom` graphs fall back to single-site Glauber dynamics, which is only
//! asymptotically exact; [`GlauberParams`] controls burn-in and thinning.

use rand::seq::SliceRandom;
use rand::Rng;
use statrs::function::factorial::ln_binomial;

use crate::error::{Error, Result};
use crate::graph::GraphFamily;
use crate::ising::{Coupling, IsingModel, SpinVector};
use crate::numeric::KahanSum;

/// Knobs for the Glauber fallback sampler. Units are sweeps (`n` single-site
/// updates each).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlauberParams {
    /// Sweeps discarded after random initialization.
    pub burn_in_sweeps: usize,
    /// Sweeps between retained samples.
    pub thinning_sweeps: usize,
}

impl Default for GlauberParams {
    fn default() -> Self {
        Self {
            burn_in_sweeps: 100,
            thinning_sweeps: 10,
        }
    }
}

impl IsingModel {
    /// Draws one configuration from the model. Exact for every family except
    /// `Custom`, which runs Glauber dynamics with [`GlauberParams::default`].
    ///
    /// Repeated draws should reuse [`MagnetizationSampler`] (complete graphs)
    /// or [`GlauberChain`] (custom graphs) to amortize their setup cost.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> SpinVector {
        match self.graph().family() {
            GraphFamily::Empty => fair_signs(self.n(), rng),
            GraphFamily::Chain => free_chain(self.n(), self.theta(), rng),
            GraphFamily::ChainPbc => periodic_chain(self.n(), self.theta(), rng),
            GraphFamily::Complete => MagnetizationSampler::new(self)
                .expect("complete graph always has a magnetization sampler")
                .sample(rng),
            GraphFamily::Custom => {
                GlauberChain::new(self, GlauberParams::default(), rng).into_state()
            }
        }
    }
}

/// `n` independent signs, each +1 or -1 with probability 1/2, consuming one
/// 64-bit word per 64 spins.
fn fair_signs<R: Rng>(n: usize, rng: &mut R) -> SpinVector {
    let mut spins = Vec::with_capacity(n);
    while spins.len() < n {
        let mut bits = rng.next_u64();
        let take = (n - spins.len()).min(64);
        for _ in 0..take {
            spins.push(if bits & 1 == 1 { 1 } else { -1 });
            bits >>= 1;
        }
    }
    SpinVector::from_raw(spins)
}

/// Forward sampling of the open chain: a fair first spin, then each successor
/// flips with probability `1 / (1 + e^{2 theta})`.
fn free_chain<R: Rng>(n: usize, theta: f64, rng: &mut R) -> SpinVector {
    let flip = 1.0 / (1.0 + (2.0 * theta).exp());
    let mut spins = Vec::with_capacity(n);
    let mut cur: i8 = if rng.random() { 1 } else { -1 };
    spins.push(cur);
    for _ in 1..n {
        if rng.random::<f64>() < flip {
            cur = -cur;
        }
        spins.push(cur);
    }
    SpinVector::from_raw(spins)
}

/// Rejection sampling of the periodic chain from free-chain proposals. A
/// proposal with agreeing endpoints is always kept; otherwise it is kept with
/// probability `e^{-2 theta}`, the Radon-Nikodym weight of the closing edge.
fn periodic_chain<R: Rng>(n: usize, theta: f64, rng: &mut R) -> SpinVector {
    let keep_disagree = (-2.0 * theta).exp();
    loop {
        let x = free_chain(n, theta, rng);
        if x[0] == x[n - 1] || rng.random::<f64>() < keep_disagree {
            return x;
        }
    }
}

/// Exact sampler for complete-graph models. Draws the number of positive
/// spins from its marginal pmf by inverse CDF, then shuffles the signs into
/// place. Construction is O(n); keep one instance around for repeated draws.
#[derive(Debug, Clone)]
pub struct MagnetizationSampler {
    n: usize,
    cdf: Vec<f64>,
}

impl MagnetizationSampler {
    /// Builds the sampler. Fails unless the graph is complete.
    pub fn new(model: &IsingModel) -> Result<Self> {
        if model.graph().family() != GraphFamily::Complete {
            return Err(Error::CurieWeissNeedsComplete);
        }
        let n = model.n();
        let nf = n as f64;
        let theta = model.theta();
        let log_weight = |k: usize| -> f64 {
            let s = (2 * k as i64 - n as i64) as f64;
            let energy = match model.coupling() {
                Coupling::CurieWeiss => theta / nf * s * s,
                // Complete-graph pair sum: sum_{i<j} x_i x_j = (S^2 - n) / 2.
                Coupling::Edgewise => theta * (s * s - nf) / 2.0,
            };
            ln_binomial(n as u64, k as u64) + energy
        };
        let max = (0..=n).map(log_weight).fold(f64::NEG_INFINITY, f64::max);
        let mut acc = KahanSum::new();
        let cdf = (0..=n)
            .map(|k| {
                acc.add((log_weight(k) - max).exp());
                acc.value()
            })
            .collect();
        Ok(Self { n, cdf })
    }

    /// Draws the number of positive spins.
    pub fn draw_plus_count<R: Rng>(&self, rng: &mut R) -> usize {
        let u = rng.random::<f64>() * self.cdf[self.n];
        self.cdf.partition_point(|&c| c < u).min(self.n)
    }

    /// Draws a full configuration: class by inverse CDF, placement uniform.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> SpinVector {
        let k = self.draw_plus_count(rng);
        let mut spins = vec![-1i8; self.n];
        spins[..k].fill(1);
        spins.shuffle(rng);
        SpinVector::from_raw(spins)
    }
}

/// Single-site Glauber dynamics for edgewise models on arbitrary graphs.
/// Construction randomizes the state and runs the burn-in; subsequent samples
/// are separated by the thinning interval.
#[derive(Debug)]
pub struct GlauberChain<'a> {
    model: &'a IsingModel,
    params: GlauberParams,
    state: Vec<i8>,
}

impl<'a> GlauberChain<'a> {
    /// Starts a chain from a uniformly random state and burns it in.
    pub fn new<R: Rng>(model: &'a IsingModel, params: GlauberParams, rng: &mut R) -> Self {
        let state = fair_signs(model.n(), rng).into_vec();
        let mut chain = Self {
            model,
            params,
            state,
        };
        chain.run_sweeps(params.burn_in_sweeps, rng);
        chain
    }

    fn run_sweeps<R: Rng>(&mut self, sweeps: usize, rng: &mut R) {
        for _ in 0..sweeps * self.model.n() {
            self.update_one(rng);
        }
    }

    /// One heat-bath update: pick a site, resample it from its conditional
    /// `P(x_i = +1 | rest) = 1 / (1 + exp(-2 theta h_i))` where `h_i` is the
    /// sum of neighboring spins.
    fn update_one<R: Rng>(&mut self, rng: &mut R) {
        let i = rng.random_range(0..self.state.len());
        let mut h = 0i64;
        for &j in self.model.graph().neighbors(i) {
            h += self.state[j] as i64;
        }
        let p_plus = 1.0 / (1.0 + (-2.0 * self.model.theta() * h as f64).exp());
        self.state[i] = if rng.random::<f64>() < p_plus { 1 } else { -1 };
    }

    /// Advances by the thinning interval and returns a copy of the state.
    pub fn next_sample<R: Rng>(&mut self, rng: &mut R) -> SpinVector {
        self.run_sweeps(self.params.thinning_sweeps, rng);
        SpinVector::from_raw(self.state.clone())
    }

    /// Consumes the chain, yielding the current (burned-in) state.
    pub fn into_state(self) -> SpinVector {
        SpinVector::from_raw(self.state)
    }
}
