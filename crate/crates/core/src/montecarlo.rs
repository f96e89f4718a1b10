//! Parallel Monte Carlo experiments: error-probability estimation with Wilson
//! confidence intervals, magnetization and noise-residual statistics, and
//! parameter sweeps.
//!
//! Trials are partitioned into fixed-size blocks. Every trial of an exact
//! sampler draws from its own counter-addressed random stream, and custom
//! graphs run one Glauber chain per block seeded by the block's first trial
//! index, so results are bit-identical no matter how many workers the global
//! rayon pool has.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::asymptotics::{
    hoeffding_bound, pe_limit_chain, pe_limit_complete_subcritical, pe_limit_iid, BoundMethod,
};
use crate::detection::{detect_error, NoiseChannel};
use crate::error::{Error, Result};
use crate::exact::{exact_error_prob, exact_magnetization_pmf};
use crate::graph::{Graph, GraphFamily};
use crate::ising::sampler::{GlauberChain, GlauberParams, MagnetizationSampler};
use crate::ising::{Coupling, IsingModel, SpinVector};
use crate::numeric::{normal_quantile, KahanSum};
use crate::rng::{derive_seed, trial_rng};

/// Trials per scheduling block. Aggregates are merged in block order, so the
/// block size — not the worker count — determines the output.
pub const TRIAL_BLOCK: u64 = 4096;

/// A model paired with a noise level, trial budget, seed, and confidence
/// level for the reported interval.
#[derive(Debug, Clone)]
pub struct ExperimentConfig<'a> {
    model: &'a IsingModel,
    noise: NoiseChannel,
    trials: u64,
    seed: u64,
    confidence: f64,
}

impl<'a> ExperimentConfig<'a> {
    /// Builds a configuration with the default 99% confidence level.
    pub fn new(model: &'a IsingModel, p: f64, trials: u64, seed: u64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::NoTrials);
        }
        Ok(Self {
            model,
            noise: NoiseChannel::new(p)?,
            trials,
            seed,
            confidence: 0.99,
        })
    }

    /// Replaces the confidence level; must lie strictly between 0 and 1.
    pub fn with_confidence(mut self, confidence: f64) -> Result<Self> {
        if !(confidence > 0.0 && confidence < 1.0) {
            return Err(Error::BadConfidence { confidence });
        }
        self.confidence = confidence;
        Ok(self)
    }

    pub fn model(&self) -> &IsingModel {
        self.model
    }

    pub fn p(&self) -> f64 {
        self.noise.p()
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn confidence(&self) -> f64 {
        self.confidence
    }
}

/// How an [`Estimate`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    MonteCarlo,
    Exact,
}

/// An error-probability estimate with its confidence interval. Exact values
/// carry a degenerate interval and zero trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub point: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub trials: u64,
    pub seed: u64,
    pub method: Method,
}

/// Wilson score interval for a binomial proportion, clamped to `[0, 1]`.
pub fn wilson_interval(successes: u64, trials: u64, confidence: f64) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::BadConfidence { confidence });
    }
    assert!(successes <= trials, "more successes than trials");
    let z = normal_quantile(0.5 + confidence / 2.0);
    let n = trials as f64;
    let p_hat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p_hat + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)).sqrt();
    // The boundary counts give exactly 0 and 1; don't let rounding leak in.
    let lo = if successes == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let hi = if successes == trials {
        1.0
    } else {
        (center + half).min(1.0)
    };
    Ok((lo, hi))
}

/// Per-trial statistics accumulator. Blocks each build one and the results
/// are merged left to right in block order.
trait TrialObserver: Send {
    /// `y` is present only when the run applies a noise channel.
    fn observe(&mut self, x: &SpinVector, y: Option<&SpinVector>);
    fn merge(&mut self, other: Self);
}

/// Runs `trials` prior draws (optionally pushed through `noise`) in parallel
/// blocks and folds the per-block observers in block order.
fn run_blocks<O, F>(
    model: &IsingModel,
    noise: Option<NoiseChannel>,
    trials: u64,
    seed: u64,
    make: F,
) -> O
where
    O: TrialObserver,
    F: Fn() -> O + Sync,
{
    debug_assert!(trials > 0);
    let class_sampler = match model.graph().family() {
        GraphFamily::Complete => {
            Some(MagnetizationSampler::new(model).expect("complete graph has a class sampler"))
        }
        _ => None,
    };
    let blocks = trials.div_ceil(TRIAL_BLOCK);
    let parts: Vec<O> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let start = b * TRIAL_BLOCK;
            let end = (start + TRIAL_BLOCK).min(trials);
            let mut obs = make();
            if model.graph().family() == GraphFamily::Custom {
                // One Glauber chain per block, consumed sequentially, keyed by
                // the block's first trial index.
                let mut rng = trial_rng(seed, start);
                let mut chain = GlauberChain::new(model, GlauberParams::default(), &mut rng);
                for _ in start..end {
                    let x = chain.next_sample(&mut rng);
                    let y = noise.as_ref().map(|nc| nc.apply(&x, &mut rng));
                    obs.observe(&x, y.as_ref());
                }
            } else {
                for t in start..end {
                    let mut rng = trial_rng(seed, t);
                    let x = match &class_sampler {
                        Some(sampler) => sampler.sample(&mut rng),
                        None => model.sample(&mut rng),
                    };
                    let y = noise.as_ref().map(|nc| nc.apply(&x, &mut rng));
                    obs.observe(&x, y.as_ref());
                }
            }
            obs
        })
        .collect();
    let mut parts = parts.into_iter();
    let mut acc = parts.next().expect("at least one block");
    for part in parts {
        acc.merge(part);
    }
    acc
}

struct ErrorCounter {
    errors: u64,
}

impl TrialObserver for ErrorCounter {
    fn observe(&mut self, x: &SpinVector, y: Option<&SpinVector>) {
        let y = y.expect("error counting needs the noisy copy");
        if detect_error(x, y).expect("x and y share an odd length") {
            self.errors += 1;
        }
    }

    fn merge(&mut self, other: Self) {
        self.errors += other.errors;
    }
}

/// Monte Carlo estimate of the majority-vote error probability.
pub fn estimate_pe(config: &ExperimentConfig) -> Result<Estimate> {
    if config.model.n().is_multiple_of(2) {
        return Err(Error::EvenLength {
            n: config.model.n(),
        });
    }
    let counter = run_blocks(
        config.model,
        Some(config.noise),
        config.trials,
        config.seed,
        || ErrorCounter { errors: 0 },
    );
    let (ci_low, ci_high) = wilson_interval(counter.errors, config.trials, config.confidence)?;
    Ok(Estimate {
        point: counter.errors as f64 / config.trials as f64,
        ci_low,
        ci_high,
        trials: config.trials,
        seed: config.seed,
        method: Method::MonteCarlo,
    })
}

/// The exact error probability packaged as an [`Estimate`] with a degenerate
/// interval, for tables that mix simulated and exact rows.
pub fn exact_estimate(config: &ExperimentConfig) -> Result<Estimate> {
    let point = exact_error_prob(config.model, config.noise.p())?;
    Ok(Estimate {
        point,
        ci_low: point,
        ci_high: point,
        trials: 0,
        seed: config.seed,
        method: Method::Exact,
    })
}

/// Fixed-range histogram of the scaled magnetization. Mass falling outside
/// the range is clamped into the edge bins.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    lo: f64,
    hi: f64,
    mass: Vec<f64>,
}

impl Histogram {
    const LO: f64 = -8.0;
    const HI: f64 = 8.0;
    const BINS: usize = 64;

    fn empty() -> Self {
        Self {
            lo: Self::LO,
            hi: Self::HI,
            mass: vec![0.0; Self::BINS],
        }
    }

    fn deposit(&mut self, x: f64, weight: f64) {
        let width = (self.hi - self.lo) / self.mass.len() as f64;
        let bin = (((x - self.lo) / width).floor() as i64).clamp(0, self.mass.len() as i64 - 1);
        self.mass[bin as usize] += weight;
    }

    fn scale(&mut self, factor: f64) {
        for m in &mut self.mass {
            *m *= factor;
        }
    }

    fn merge(&mut self, other: &Histogram) {
        for (a, b) in self.mass.iter_mut().zip(&other.mass) {
            *a += b;
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Per-bin probability mass, left to right.
    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    /// Midpoint of bin `i`.
    pub fn bin_center(&self, i: usize) -> f64 {
        let width = (self.hi - self.lo) / self.mass.len() as f64;
        self.lo + (i as f64 + 0.5) * width
    }
}

/// Distribution summary of the scaled magnetization `sqrt(n) * mean(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MagnetizationStats {
    pub scaled_mean: f64,
    pub scaled_variance: f64,
    /// Probability that the scaled magnetization lies in `[-threshold, threshold]`.
    pub mass_within: f64,
    pub threshold: f64,
    pub histogram: Histogram,
    pub method: Method,
    pub trials: u64,
    pub seed: u64,
}

struct MomentObserver {
    threshold: f64,
    sum: KahanSum,
    sum_sq: KahanSum,
    within: u64,
    histogram: Histogram,
}

impl MomentObserver {
    fn new(threshold: f64) -> Self {
        Self {
            threshold,
            sum: KahanSum::new(),
            sum_sq: KahanSum::new(),
            within: 0,
            histogram: Histogram::empty(),
        }
    }
}

impl TrialObserver for MomentObserver {
    fn observe(&mut self, x: &SpinVector, _y: Option<&SpinVector>) {
        let (_, scaled) = x.magnetization();
        self.sum.add(scaled);
        self.sum_sq.add(scaled * scaled);
        if scaled.abs() <= self.threshold {
            self.within += 1;
        }
        self.histogram.deposit(scaled, 1.0);
    }

    fn merge(&mut self, other: Self) {
        self.sum.merge(&other.sum);
        self.sum_sq.merge(&other.sum_sq);
        self.within += other.within;
        self.histogram.merge(&other.histogram);
    }
}

/// Statistics of the scaled magnetization under the prior.
///
/// Uses the exact class pmf whenever [`exact_magnetization_pmf`] supports the
/// model (then `trials` is ignored and recorded as 0); otherwise falls back
/// to Monte Carlo over `trials` prior draws.
pub fn magnetization_stats(
    model: &IsingModel,
    threshold: f64,
    trials: u64,
    seed: u64,
) -> Result<MagnetizationStats> {
    if !(threshold > 0.0) {
        return Err(Error::ThresholdNotPositive { b: threshold });
    }
    match exact_magnetization_pmf(model) {
        Ok(pmf) => {
            let sqrt_n = (model.n() as f64).sqrt();
            let mut mean = KahanSum::new();
            let mut histogram = Histogram::empty();
            for (s, prob) in pmf.support() {
                let scaled = s as f64 / sqrt_n;
                mean.add(prob * scaled);
                histogram.deposit(scaled, prob);
            }
            Ok(MagnetizationStats {
                scaled_mean: mean.value(),
                scaled_variance: pmf.scaled_variance(),
                mass_within: pmf.scaled_mass_within(threshold),
                threshold,
                histogram,
                method: Method::Exact,
                trials: 0,
                seed,
            })
        }
        Err(Error::TooManyStates { .. }) => {
            if trials == 0 {
                return Err(Error::NoTrials);
            }
            let obs = run_blocks(model, None, trials, seed, || MomentObserver::new(threshold));
            let nf = trials as f64;
            let mean = obs.sum.value() / nf;
            let mut histogram = obs.histogram;
            histogram.scale(1.0 / nf);
            Ok(MagnetizationStats {
                scaled_mean: mean,
                scaled_variance: obs.sum_sq.value() / nf - mean * mean,
                mass_within: obs.within as f64 / nf,
                threshold,
                histogram,
                method: Method::MonteCarlo,
                trials,
                seed,
            })
        }
        Err(e) => Err(e),
    }
}

/// Mean and variance of the noise residual `sqrt(n) * (mean(y) - (1-2p) mean(x))`.
///
/// Conditionally on any `x` the residual has mean 0 and variance `4p(1-p)`,
/// so its unconditional variance is `4p(1-p)` for every prior.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseResidualStats {
    pub mean: f64,
    pub variance: f64,
    pub trials: u64,
    pub seed: u64,
}

struct ResidualObserver {
    shrink: f64,
    sum: KahanSum,
    sum_sq: KahanSum,
}

impl TrialObserver for ResidualObserver {
    fn observe(&mut self, x: &SpinVector, y: Option<&SpinVector>) {
        let y = y.expect("the residual needs the noisy copy");
        let r = y.magnetization().1 - self.shrink * x.magnetization().1;
        self.sum.add(r);
        self.sum_sq.add(r * r);
    }

    fn merge(&mut self, other: Self) {
        self.sum.merge(&other.sum);
        self.sum_sq.merge(&other.sum_sq);
    }
}

/// Monte Carlo moments of the noise residual under `config`.
pub fn noise_residual_stats(config: &ExperimentConfig) -> Result<NoiseResidualStats> {
    let shrink = 1.0 - 2.0 * config.noise.p();
    let obs = run_blocks(
        config.model,
        Some(config.noise),
        config.trials,
        config.seed,
        || ResidualObserver {
            shrink,
            sum: KahanSum::new(),
            sum_sq: KahanSum::new(),
        },
    );
    let nf = config.trials as f64;
    let mean = obs.sum.value() / nf;
    Ok(NoiseResidualStats {
        mean,
        variance: obs.sum_sq.value() / nf - mean * mean,
        trials: config.trials,
        seed: config.seed,
    })
}

/// Which parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    N,
    Theta,
    P,
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepAxis::N => "n",
            SweepAxis::Theta => "theta",
            SweepAxis::P => "p",
        })
    }
}

impl FromStr for SweepAxis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "n" => Ok(SweepAxis::N),
            "theta" => Ok(SweepAxis::Theta),
            "p" => Ok(SweepAxis::P),
            other => Err(format!(
                "unknown sweep axis '{other}' (expected n, theta, or p)"
            )),
        }
    }
}

/// One sweep point: the model coordinates, the estimate, and — when the model
/// admits them — the matching limit and exponential-moment bound.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub family: GraphFamily,
    pub n: usize,
    pub theta: f64,
    pub p: f64,
    pub estimate: Estimate,
    pub limit: Option<f64>,
    pub bound: Option<f64>,
}

/// The closed-form limiting error probability that applies to the model, if
/// any: independent spins, chains (either boundary), or the subcritical
/// mean-field model.
pub fn matching_limit(model: &IsingModel, p: f64) -> Option<f64> {
    match (model.graph().family(), model.coupling()) {
        (GraphFamily::Empty, _) => pe_limit_iid(p).ok(),
        (GraphFamily::Chain | GraphFamily::ChainPbc, _) => pe_limit_chain(p, model.theta()).ok(),
        (GraphFamily::Complete, Coupling::CurieWeiss) if model.theta() < 0.5 => {
            pe_limit_complete_subcritical(p, model.theta()).ok()
        }
        _ => None,
    }
}

/// The exact exponential-moment bound, when the class pmf is available.
pub fn matching_bound(model: &IsingModel, p: f64) -> Option<f64> {
    hoeffding_bound(model, p, BoundMethod::Exact).ok()
}

fn sweep_value_error(axis: &'static str, value: f64, reason: &str) -> Error {
    Error::BadSweepValue {
        axis,
        value,
        reason: reason.to_string(),
    }
}

/// Runs [`estimate_pe`] along one axis, holding the other parameters at the
/// values in `config`. Row `i` uses the seed `derive_seed(config.seed, i)`.
pub fn sweep(config: &ExperimentConfig, axis: SweepAxis, values: &[f64]) -> Result<Vec<SweepRow>> {
    let base = config.model;
    let mut rows = Vec::with_capacity(values.len());
    for (index, &value) in values.iter().enumerate() {
        let (model, p) = match axis {
            SweepAxis::N => {
                if base.graph().family() == GraphFamily::Custom {
                    return Err(sweep_value_error(
                        "n",
                        value,
                        "cannot resize a custom graph",
                    ));
                }
                if !value.is_finite() || value <= 0.0 || value.fract() != 0.0 {
                    return Err(sweep_value_error("n", value, "must be a positive integer"));
                }
                let n = value as usize;
                if n.is_multiple_of(2) {
                    return Err(sweep_value_error("n", value, "majority vote needs odd n"));
                }
                let graph = Graph::build(base.graph().family(), n)?;
                (
                    IsingModel::new(graph, base.theta(), base.coupling())?,
                    config.noise.p(),
                )
            }
            SweepAxis::Theta => {
                if !value.is_finite() || value <= 0.0 {
                    return Err(sweep_value_error("theta", value, "must be positive"));
                }
                (
                    IsingModel::new(base.graph().clone(), value, base.coupling())?,
                    config.noise.p(),
                )
            }
            SweepAxis::P => {
                if !(value > 0.0 && value < 0.5) {
                    return Err(sweep_value_error("p", value, "must lie in (0, 1/2)"));
                }
                (base.clone(), value)
            }
        };
        let row_config = ExperimentConfig::new(
            &model,
            p,
            config.trials,
            derive_seed(config.seed, index as u64),
        )?
        .with_confidence(config.confidence)?;
        let estimate = estimate_pe(&row_config)?;
        rows.push(SweepRow {
            family: model.graph().family(),
            n: model.n(),
            theta: model.theta(),
            p,
            estimate,
            limit: matching_limit(&model, p),
            bound: matching_bound(&model, p),
        });
    }
    Ok(rows)
}
