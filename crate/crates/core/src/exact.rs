//! Exact error probabilities and magnetization distributions — the ground
//! truth the samplers and asymptotic formulas are tested against.
//!
//! Everything here reduces to the magnetization class: conditioned on the
//! number `k` of positive spins, the noisy majority flips with a probability
//! that depends only on `(n, k, p)`, so the error probability is a weighted
//! sum over the `n + 1` classes. Class weights come from exhaustive
//! enumeration (edgewise coupling, `n <= 20`) or from the closed-form
//! binomial expression (mean-field coupling, any `n` up to 10^6).

use statrs::function::factorial::ln_binomial;

use crate::error::{Error, Result};
use crate::ising::partition::MAX_BRUTEFORCE_N;
use crate::ising::{Coupling, IsingModel, SpinVector};
use crate::numeric::KahanSum;

/// Largest `n` for the closed-form mean-field pmf.
pub const MAX_CLOSED_FORM_N: usize = 1_000_000;

/// Largest `n` for which the O(n^2) class-sum error probability is allowed.
pub const MAX_CLASS_SUM_N: usize = 10_001;

/// Exact probability that the noisy majority disagrees with the majority of
/// the fixed configuration `x`; the length must be odd.
///
/// With `k` positive entries and sum `S = 2k - n > 0`, flips among the
/// positives `B+ ~ Bin(k, p)` and among the negatives `B- ~ Bin(n-k, p)` give
/// observation sum `S - 2(B+ - B-)`, so the majority flips iff
/// `B+ - B- >= (S+1)/2`. The tail of the binomial convolution is summed
/// exactly in O(n). Classes `k` and `n - k` agree by global sign symmetry.
pub fn conditional_error_prob(x: &SpinVector, p: f64) -> Result<f64> {
    if x.len().is_multiple_of(2) {
        return Err(Error::EvenLength { n: x.len() });
    }
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::NoiseOutOfRange { p });
    }
    Ok(class_conditional_error(x.len(), x.plus_count(), p))
}

/// The class-level kernel behind [`conditional_error_prob`]: flip probability
/// given `k` positive spins out of an odd `n`.
pub(crate) fn class_conditional_error(n: usize, k: usize, p: f64) -> f64 {
    let k = k.max(n - k);
    let s = 2 * k - n;
    let shift = s.div_ceil(2);
    let m_plus = k;
    let m_minus = n - k;
    let lp = p.ln();
    let lq = (-p).ln_1p();
    let log_pmf =
        |m: usize, a: usize| ln_binomial(m as u64, a as u64) + a as f64 * lp + (m - a) as f64 * lq;

    // Prefix CDF of the minority flip count.
    let mut acc = KahanSum::new();
    let cdf_minus: Vec<f64> = (0..=m_minus)
        .map(|c| {
            acc.add(log_pmf(m_minus, c).exp());
            acc.value().min(1.0)
        })
        .collect();

    let mut total = KahanSum::new();
    for a in shift..=m_plus {
        let idx = (a - shift).min(m_minus);
        total.add(log_pmf(m_plus, a).exp() * cdf_minus[idx]);
    }
    total.value().clamp(0.0, 1.0)
}

/// Exact detection error probability: the class pmf of the prior combined
/// with the exact per-class flip probability.
///
/// Size limits: `n <= 20` for edgewise coupling (state enumeration),
/// `n <= 10_001` for mean-field coupling (closed-form class weights, O(n^2)
/// tail sums).
pub fn exact_error_prob(model: &IsingModel, p: f64) -> Result<f64> {
    let n = model.n();
    if n.is_multiple_of(2) {
        return Err(Error::EvenLength { n });
    }
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::NoiseOutOfRange { p });
    }
    if model.coupling() == Coupling::CurieWeiss && n > MAX_CLASS_SUM_N {
        return Err(Error::TooManyStates {
            n,
            max: MAX_CLASS_SUM_N,
        });
    }
    let pmf = exact_magnetization_pmf(model)?;
    let probs = pmf.probs();
    let mut total = KahanSum::new();
    // Classes k and n - k share one kernel evaluation.
    for k in n.div_ceil(2)..=n {
        total.add((probs[k] + probs[n - k]) * class_conditional_error(n, k, p));
    }
    Ok(total.value().clamp(0.0, 1.0))
}

/// Exact pmf of the spin sum `S = sum(x)` under the prior, stored by the
/// number of positive spins `k = (S + n) / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct MagnetizationPmf {
    n: usize,
    probs: Vec<f64>,
}

impl MagnetizationPmf {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Probabilities indexed by the number of positive spins, `0..=n`.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Probability of the spin sum taking the value `s`. Values off the
    /// support (wrong parity or out of range) have probability zero.
    pub fn prob_sum(&self, s: i64) -> f64 {
        let n = self.n as i64;
        if s < -n || s > n || (s + n) % 2 != 0 {
            return 0.0;
        }
        self.probs[((s + n) / 2) as usize]
    }

    /// Iterates `(s, probability)` over the support `-n, -n+2, ..., n`.
    pub fn support(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let n = self.n as i64;
        self.probs
            .iter()
            .enumerate()
            .map(move |(k, &p)| (2 * k as i64 - n, p))
    }

    /// Variance of the scaled magnetization `sqrt(n) * mean(x) = S / sqrt(n)`
    /// (the mean is zero by symmetry).
    pub fn scaled_variance(&self) -> f64 {
        let n = self.n as f64;
        let mut acc = KahanSum::new();
        for (s, p) in self.support() {
            let s = s as f64;
            acc.add(p * s * s / n);
        }
        acc.value()
    }

    /// Probability that `|S| / sqrt(n) <= b`.
    pub fn scaled_mass_within(&self, b: f64) -> f64 {
        let root_n = (self.n as f64).sqrt();
        let mut acc = KahanSum::new();
        for (s, p) in self.support() {
            if (s as f64 / root_n).abs() <= b {
                acc.add(p);
            }
        }
        acc.value().min(1.0)
    }
}

/// Computes the exact magnetization pmf. Edgewise coupling enumerates all
/// `2^n` states (`n <= 20`); mean-field coupling uses the closed-form class
/// weights `C(n, k) * exp(theta * S^2 / n)` in log domain (`n <= 10^6`).
///
/// Weights are computed for the lower half of the classes and mirrored, so
/// the symmetry `P(S = s) = P(S = -s)` holds bit-for-bit.
pub fn exact_magnetization_pmf(model: &IsingModel) -> Result<MagnetizationPmf> {
    let n = model.n();
    let weights = match model.coupling() {
        Coupling::Edgewise => {
            if n > MAX_BRUTEFORCE_N {
                return Err(Error::TooManyStates {
                    n,
                    max: MAX_BRUTEFORCE_N,
                });
            }
            let states = 1u64 << n;
            let mut max = f64::NEG_INFINITY;
            for state in 0..states {
                max = max.max(model.state_energy(state));
            }
            let mut class_sums = vec![KahanSum::new(); n + 1];
            for state in 0..states {
                class_sums[state.count_ones() as usize]
                    .add((model.state_energy(state) - max).exp());
            }
            let mut weights: Vec<f64> = class_sums.iter().map(KahanSum::value).collect();
            for k in 0..=n / 2 {
                weights[n - k] = weights[k];
            }
            weights
        }
        Coupling::CurieWeiss => {
            if n > MAX_CLOSED_FORM_N {
                return Err(Error::TooManyStates {
                    n,
                    max: MAX_CLOSED_FORM_N,
                });
            }
            let nf = n as f64;
            let log_weight = |k: usize| {
                let s = (2 * k as i64 - n as i64) as f64;
                ln_binomial(n as u64, k as u64) + model.theta() * s * s / nf
            };
            let mut lw = vec![0.0; n + 1];
            for k in 0..=n / 2 {
                lw[k] = log_weight(k);
                lw[n - k] = lw[k];
            }
            let max = lw.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v));
            lw.iter().map(|&v| (v - max).exp()).collect()
        }
    };
    let mut total = KahanSum::new();
    for &w in &weights {
        total.add(w);
    }
    let z = total.value();
    Ok(MagnetizationPmf {
        n,
        probs: weights.into_iter().map(|w| w / z).collect(),
    })
}
