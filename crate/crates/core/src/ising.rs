//! Ising priors over spin configurations.
//!
//! A model assigns every configuration `x` in `{-1,+1}^n` the unnormalized
//! log-weight `energy(x)`; the normalized law is `exp(energy(x)) / Z`. Two
//! couplings are supported:
//!
//! * `Edgewise`: `theta * sum over edges (i,j) of x_i * x_j`, each edge
//!   counted once. On the periodic chain this reproduces the transfer-matrix
//!   closed form of [`partition::chain_log_partition`] at the same `theta`.
//! * `CurieWeiss`: `(theta / n) * (sum of x)^2`, the mean-field coupling on
//!   the complete graph with strength scaled down by `n`.

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphFamily};
use std::fmt;

pub mod partition;
pub mod sampler;

/// How edge interactions enter the energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coupling {
    /// Per-edge coupling of fixed strength `theta`.
    Edgewise,
    /// Mean-field `(theta/n) * (sum of spins)^2`; complete graph only.
    CurieWeiss,
}

impl fmt::Display for Coupling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coupling::Edgewise => "edgewise",
            Coupling::CurieWeiss => "curie-weiss",
        })
    }
}

/// A configuration of `+1`/`-1` spins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinVector {
    spins: Vec<i8>,
}

impl SpinVector {
    /// Validates that every entry is `+1` or `-1`.
    pub fn new(spins: Vec<i8>) -> Result<SpinVector> {
        for (index, &value) in spins.iter().enumerate() {
            if value != 1 && value != -1 {
                return Err(Error::NotASpin { index, value });
            }
        }
        Ok(SpinVector { spins })
    }

    /// Internal constructor for samplers that produce valid spins by design.
    pub(crate) fn from_raw(spins: Vec<i8>) -> SpinVector {
        debug_assert!(spins.iter().all(|&s| s == 1 || s == -1));
        SpinVector { spins }
    }

    pub fn len(&self) -> usize {
        self.spins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spins.is_empty()
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.spins
    }

    pub(crate) fn into_vec(self) -> Vec<i8> {
        self.spins
    }

    /// Sum of all spins.
    pub fn sum(&self) -> i64 {
        self.spins.iter().map(|&s| s as i64).sum()
    }

    /// Number of `+1` entries.
    pub fn plus_count(&self) -> usize {
        self.spins.iter().filter(|&&s| s == 1).count()
    }

    /// Flips every spin in place.
    pub fn negate(&mut self) {
        for s in &mut self.spins {
            *s = -*s;
        }
    }

    /// `(mean, sqrt(n) * mean)` of the spins.
    ///
    /// The scaled form is the natural magnitude for majority votes: its law
    /// stabilizes as `n` grows whenever the spins satisfy a central limit
    /// theorem.
    pub fn magnetization(&self) -> (f64, f64) {
        let n = self.spins.len() as f64;
        let mean = self.sum() as f64 / n;
        (mean, n.sqrt() * mean)
    }
}

impl std::ops::Index<usize> for SpinVector {
    type Output = i8;

    fn index(&self, i: usize) -> &i8 {
        &self.spins[i]
    }
}

/// An Ising prior: a graph, a positive coupling strength, and a coupling kind.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingModel {
    graph: Graph,
    theta: f64,
    coupling: Coupling,
}

impl IsingModel {
    /// Requires `theta > 0`; Curie-Weiss coupling additionally requires the
    /// complete graph.
    pub fn new(graph: Graph, theta: f64, coupling: Coupling) -> Result<IsingModel> {
        if !(theta > 0.0) || !theta.is_finite() {
            return Err(Error::ThetaNotPositive { theta });
        }
        if coupling == Coupling::CurieWeiss && graph.family() != GraphFamily::Complete {
            return Err(Error::CurieWeissNeedsComplete);
        }
        Ok(IsingModel {
            graph,
            theta,
            coupling,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn coupling(&self) -> Coupling {
        self.coupling
    }

    /// Log-weight of a configuration (natural units, unnormalized).
    pub fn energy(&self, x: &SpinVector) -> Result<f64> {
        if x.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: x.len(),
            });
        }
        Ok(match self.coupling {
            // The complete graph's pair sum collapses to (S^2 - n) / 2, which
            // avoids materializing its O(n^2) edge list.
            Coupling::Edgewise if self.graph.family() == GraphFamily::Complete => {
                let s = x.sum();
                self.theta * ((s * s - self.n() as i64) / 2) as f64
            }
            Coupling::Edgewise => {
                let mut agree = 0i64;
                for &(i, j) in self.graph.edges() {
                    agree += (x[i] * x[j]) as i64;
                }
                self.theta * agree as f64
            }
            Coupling::CurieWeiss => {
                let s = x.sum() as f64;
                self.theta / self.n() as f64 * s * s
            }
        })
    }

    /// Energy of the configuration encoded as a bitmask (bit `i` set means
    /// spin `i` is `+1`). Enumeration back-end for the exact routines;
    /// requires `n <= 64`.
    pub(crate) fn state_energy(&self, state: u64) -> f64 {
        let n = self.n();
        match self.coupling {
            Coupling::Edgewise if self.graph.family() == GraphFamily::Complete => {
                let s = 2 * state.count_ones() as i64 - n as i64;
                self.theta * ((s * s - n as i64) / 2) as f64
            }
            Coupling::Edgewise => {
                let mut disagree = 0i64;
                for &(i, j) in self.graph.edges() {
                    disagree += ((state >> i ^ state >> j) & 1) as i64;
                }
                self.theta * (self.graph.edge_count() as i64 - 2 * disagree) as f64
            }
            Coupling::CurieWeiss => {
                let s = (2 * state.count_ones() as i64 - n as i64) as f64;
                self.theta / n as f64 * s * s
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn ones(n: usize) -> SpinVector {
        SpinVector::new(vec![1; n]).unwrap()
    }

    #[test]
    fn spin_vector_validates_entries() {
        assert!(SpinVector::new(vec![1, -1, 1]).is_ok());
        assert!(matches!(
            SpinVector::new(vec![1, 0, 1]),
            Err(Error::NotASpin { index: 1, value: 0 })
        ));
        assert!(matches!(
            SpinVector::new(vec![2]),
            Err(Error::NotASpin { index: 0, value: 2 })
        ));
    }

    #[test]
    fn magnetization_examples() {
        let x = ones(9);
        assert_eq!(x.magnetization(), (1.0, 3.0));
        let y = SpinVector::new(vec![1, 1, -1, -1]).unwrap();
        assert_eq!(y.magnetization(), (0.0, 0.0));
        let z = SpinVector::new(vec![1, 1, 1, -1]).unwrap();
        let (mean, scaled) = z.magnetization();
        assert_abs_diff_eq!(mean, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(scaled, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn empty_graph_energy_is_zero() {
        let g = Graph::build(GraphFamily::Empty, 4).unwrap();
        let m = IsingModel::new(g, 0.7, Coupling::Edgewise).unwrap();
        let x = SpinVector::new(vec![1, -1, -1, 1]).unwrap();
        assert_eq!(m.energy(&x).unwrap(), 0.0);
    }

    #[test]
    fn cycle_energy_counts_each_edge_once() {
        let g = Graph::build(GraphFamily::ChainPbc, 3).unwrap();
        let m = IsingModel::new(g, 1.0, Coupling::Edgewise).unwrap();
        // All three edges agree: energy = theta * 3.
        assert_abs_diff_eq!(m.energy(&ones(3)).unwrap(), 3.0, epsilon = 1e-15);
        // One dissenter flips two of the three edges: 1 - 2 = -1.
        let x = SpinVector::new(vec![1, 1, -1]).unwrap();
        assert_abs_diff_eq!(m.energy(&x).unwrap(), -1.0, epsilon = 1e-15);
    }

    #[test]
    fn complete_edgewise_energy_matches_edge_loop() {
        // The pair-sum shortcut must agree with literal edge iteration; on
        // three vertices the cycle IS the complete graph.
        let complete = IsingModel::new(
            Graph::build(GraphFamily::Complete, 3).unwrap(),
            0.8,
            Coupling::Edgewise,
        )
        .unwrap();
        let cycle = IsingModel::new(
            Graph::build(GraphFamily::ChainPbc, 3).unwrap(),
            0.8,
            Coupling::Edgewise,
        )
        .unwrap();
        for bits in 0u8..8 {
            let spins: Vec<i8> = (0..3)
                .map(|i| if bits >> i & 1 == 1 { 1 } else { -1 })
                .collect();
            let x = SpinVector::new(spins).unwrap();
            assert_eq!(complete.energy(&x).unwrap(), cycle.energy(&x).unwrap());
        }
        // And it never touches the quadratic edge list.
        let big = IsingModel::new(
            Graph::build(GraphFamily::Complete, 1001).unwrap(),
            0.5,
            Coupling::Edgewise,
        )
        .unwrap();
        let expect = 0.5 * (1001.0 * 1000.0 / 2.0);
        assert_abs_diff_eq!(big.energy(&ones(1001)).unwrap(), expect, epsilon = 1e-9);
    }

    #[test]
    fn curie_weiss_energy_example() {
        let g = Graph::build(GraphFamily::Complete, 3).unwrap();
        let m = IsingModel::new(g, 0.6, Coupling::CurieWeiss).unwrap();
        let x = SpinVector::new(vec![1, 1, -1]).unwrap();
        assert_abs_diff_eq!(m.energy(&x).unwrap(), 0.2, epsilon = 1e-15);
    }

    #[test]
    fn model_validates_inputs() {
        let g = Graph::build(GraphFamily::Chain, 5).unwrap();
        assert!(matches!(
            IsingModel::new(g.clone(), 0.0, Coupling::Edgewise),
            Err(Error::ThetaNotPositive { .. })
        ));
        assert!(matches!(
            IsingModel::new(g.clone(), -1.0, Coupling::Edgewise),
            Err(Error::ThetaNotPositive { .. })
        ));
        assert!(matches!(
            IsingModel::new(g.clone(), 0.5, Coupling::CurieWeiss),
            Err(Error::CurieWeissNeedsComplete)
        ));
        let m = IsingModel::new(g, 0.5, Coupling::Edgewise).unwrap();
        assert!(matches!(
            m.energy(&ones(4)),
            Err(Error::LengthMismatch {
                expected: 5,
                got: 4
            })
        ));
    }

    proptest! {
        #[test]
        fn energy_is_spin_flip_symmetric(bits in 0u32..64, theta in 0.05f64..2.0) {
            let g = Graph::build(GraphFamily::ChainPbc, 6).unwrap();
            let m = IsingModel::new(g, theta, Coupling::Edgewise).unwrap();
            let spins: Vec<i8> = (0..6).map(|i| if bits >> i & 1 == 1 { 1 } else { -1 }).collect();
            let mut x = SpinVector::new(spins).unwrap();
            let e1 = m.energy(&x).unwrap();
            x.negate();
            let e2 = m.energy(&x).unwrap();
            prop_assert!((e1 - e2).abs() < 1e-12);
        }

        #[test]
        fn curie_weiss_energy_is_spin_flip_symmetric(bits in 0u32..32, theta in 0.05f64..2.0) {
            let g = Graph::build(GraphFamily::Complete, 5).unwrap();
            let m = IsingModel::new(g, theta, Coupling::CurieWeiss).unwrap();
            let spins: Vec<i8> = (0..5).map(|i| if bits >> i & 1 == 1 { 1 } else { -1 }).collect();
            let mut x = SpinVector::new(spins).unwrap();
            let e1 = m.energy(&x).unwrap();
            x.negate();
            let e2 = m.energy(&x).unwrap();
            prop_assert!((e1 - e2).abs() < 1e-12);
        }
    }
}
