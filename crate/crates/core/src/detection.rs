//! The binary symmetric channel, the majority-vote detector, and the error
//! event the whole crate is about: does the majority of the noisy copy
//! disagree with the majority of the truth?

use rand::Rng;

use crate::error::{Error, Result};
use crate::ising::SpinVector;

/// Binary symmetric channel: each spin is flipped independently with
/// crossover probability `p`, `0 < p < 1/2`.
///
/// The log-odds parameter `epsilon = log((1-p)/p) / 2` determines `p` via
/// `p = e^{-eps} / (e^{eps} + e^{-eps})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseChannel {
    p: f64,
    epsilon: f64,
}

impl NoiseChannel {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 0.5) || !p.is_finite() {
            return Err(Error::NoiseOutOfRange { p });
        }
        Ok(Self {
            p,
            epsilon: 0.5 * ((1.0 - p) / p).ln(),
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Passes a configuration through the channel: independent flips with
    /// probability `p` per coordinate.
    pub fn apply<R: Rng>(&self, x: &SpinVector, rng: &mut R) -> SpinVector {
        let spins = x
            .as_slice()
            .iter()
            .map(|&s| if rng.random::<f64>() < self.p { -s } else { s })
            .collect();
        SpinVector::from_raw(spins)
    }
}

/// Sign of the coordinate sum. The length must be odd, so the sum is never
/// zero and the sign is always well defined.
pub fn majority_sign(v: &SpinVector) -> Result<i8> {
    if v.len().is_multiple_of(2) {
        return Err(Error::EvenLength { n: v.len() });
    }
    Ok(if v.sum() > 0 { 1 } else { -1 })
}

/// The detection error event: the majority of the observation `y` disagrees
/// with the majority of the truth `x`.
pub fn detect_error(x: &SpinVector, y: &SpinVector) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    Ok(majority_sign(x)? != majority_sign(y)?)
}
