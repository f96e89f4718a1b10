//! Large-`n` behavior of the detection error: closed-form limits, the
//! exponential-moment bound, the mean-field rate function, and the error
//! exponent of the supercritical regime.
//!
//! The recurring constant `c = (1 - 2p) / sqrt(4p(1-p))` converts the scaled
//! magnetization into the argument of the normal tail: conditionally on the
//! truth `x`, the noisy majority flips with probability approaching
//! `Q(c * |sqrt(n) * mean(x)|)`. Every limit here is that functional
//! evaluated against a limiting law of `sqrt(n) * mean(x)`.

use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::exact::exact_magnetization_pmf;
use crate::graph::GraphFamily;
use crate::ising::sampler::MagnetizationSampler;
use crate::ising::IsingModel;
use crate::numeric::{bisect, integrate, ln_cosh, KahanSum};
use crate::rng::trial_rng;

/// Standard normal tail probability `Q(x) = P(N(0,1) > x)`.
pub fn q_tail(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

fn check_p(p: f64) -> Result<()> {
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::NoiseOutOfRange { p });
    }
    Ok(())
}

/// The noise-to-signal constant `(1 - 2p) / sqrt(4p(1-p))`.
fn noise_constant(p: f64) -> f64 {
    (1.0 - 2.0 * p) / (4.0 * p * (1.0 - p)).sqrt()
}

/// Limiting error probability for independent spins: `(2/pi) arcsin(sqrt p)`.
pub fn pe_limit_iid(p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(2.0 / std::f64::consts::PI * p.sqrt().asin())
}

/// Limiting error probability when `sqrt(n) * mean(x)` tends to
/// `N(0, sigma^2)`: `arccot(c * sigma) / pi`, with arccot valued in `(0, pi)`
/// so the result is continuous and positive for every `sigma > 0`.
pub fn pe_limit_gaussian(p: f64, sigma: f64) -> Result<f64> {
    check_p(p)?;
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::SigmaNotPositive { sigma });
    }
    Ok(1.0f64.atan2(noise_constant(p) * sigma) / std::f64::consts::PI)
}

/// Chain-graph limit: the scaled magnetization tends to `N(0, e^{2 theta})`.
pub fn pe_limit_chain(p: f64, theta: f64) -> Result<f64> {
    if !(theta > 0.0) || !theta.is_finite() {
        return Err(Error::ThetaNotPositive { theta });
    }
    pe_limit_gaussian(p, theta.exp())
}

/// Subcritical mean-field limit (`theta < 1/2`): the scaled magnetization
/// tends to `N(0, 1/(1 - 2 theta))`.
pub fn pe_limit_complete_subcritical(p: f64, theta: f64) -> Result<f64> {
    if !(theta > 0.0) || !theta.is_finite() {
        return Err(Error::ThetaNotPositive { theta });
    }
    if theta >= 0.5 {
        return Err(Error::NotSubcritical { theta });
    }
    pe_limit_gaussian(p, 1.0 / (1.0 - 2.0 * theta).sqrt())
}

/// The exponential-moment coefficient `(1-2p)^2 / (8 (1-p)^2)`, in `(0, 1/8)`.
pub fn hoeffding_coefficient(p: f64) -> Result<f64> {
    check_p(p)?;
    let r = (1.0 - 2.0 * p) / (1.0 - p);
    Ok(r * r / 8.0)
}

/// How [`hoeffding_bound`] evaluates the expectation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundMethod {
    /// Exact class pmf: edgewise coupling needs `n <= 20`, mean-field any `n`.
    Exact,
    /// Sample average over prior draws; works for every model.
    MonteCarlo { trials: u64, seed: u64 },
}

/// Upper bound on the error probability from the conditional Hoeffding
/// inequality: `P_e <= E[exp(-c_H * (sqrt(n) * mean(x))^2)]` with
/// `c_H = hoeffding_coefficient(p)`.
pub fn hoeffding_bound(model: &IsingModel, p: f64, method: BoundMethod) -> Result<f64> {
    let coeff = hoeffding_coefficient(p)?;
    let n = model.n() as f64;
    match method {
        BoundMethod::Exact => {
            let pmf = exact_magnetization_pmf(model)?;
            let mut acc = KahanSum::new();
            for (s, prob) in pmf.support() {
                let scaled = s as f64 / n.sqrt();
                acc.add(prob * (-coeff * scaled * scaled).exp());
            }
            Ok(acc.value().min(1.0))
        }
        BoundMethod::MonteCarlo { trials, seed } => {
            if trials == 0 {
                return Err(Error::NoTrials);
            }
            let complete_sampler = match model.graph().family() {
                GraphFamily::Complete => Some(MagnetizationSampler::new(model)?),
                _ => None,
            };
            let mut acc = KahanSum::new();
            let mut custom_rng = trial_rng(seed, 0);
            for t in 0..trials {
                let scaled = match (&complete_sampler, model.graph().family()) {
                    (Some(sampler), _) => {
                        let mut rng = trial_rng(seed, t);
                        let k = sampler.draw_plus_count(&mut rng) as f64;
                        (2.0 * k - n) / n.sqrt()
                    }
                    (None, GraphFamily::Custom) => model.sample(&mut custom_rng).magnetization().1,
                    _ => {
                        let mut rng = trial_rng(seed, t);
                        model.sample(&mut rng).magnetization().1
                    }
                };
                acc.add((-coeff * scaled * scaled).exp());
            }
            Ok((acc.value() / trials as f64).min(1.0))
        }
    }
}

/// A limiting law for the scaled magnetization `sqrt(n) * mean(x)`.
#[derive(Debug, Clone, PartialEq)]
pub enum LimitSpec {
    /// Independent spins: standard normal.
    Iid,
    /// Chain graph at coupling `theta`: `N(0, e^{2 theta})`.
    Chain { theta: f64 },
    /// Subcritical mean-field model: `N(0, 1/(1 - 2 theta))`, `theta < 1/2`.
    CompleteSubcritical { theta: f64 },
    /// Explicit Gaussian width.
    Gaussian { sigma: f64 },
    /// An empirical sample of the limiting law.
    FromSamples(Vec<f64>),
}

impl LimitSpec {
    /// The Gaussian width of the law, if it is one of the Gaussian kinds.
    fn sigma(&self) -> Result<Option<f64>> {
        match *self {
            LimitSpec::Iid => Ok(Some(1.0)),
            LimitSpec::Chain { theta } => {
                if !(theta > 0.0) || !theta.is_finite() {
                    return Err(Error::ThetaNotPositive { theta });
                }
                Ok(Some(theta.exp()))
            }
            LimitSpec::CompleteSubcritical { theta } => {
                if !(theta > 0.0) || !theta.is_finite() {
                    return Err(Error::ThetaNotPositive { theta });
                }
                if theta >= 0.5 {
                    return Err(Error::NotSubcritical { theta });
                }
                Ok(Some(1.0 / (1.0 - 2.0 * theta).sqrt()))
            }
            LimitSpec::Gaussian { sigma } => {
                if !(sigma > 0.0) || !sigma.is_finite() {
                    return Err(Error::SigmaNotPositive { sigma });
                }
                Ok(Some(sigma))
            }
            LimitSpec::FromSamples(_) => Ok(None),
        }
    }
}

/// Input distribution for [`q_functional`]: either a finite-`n` model (its
/// exact class pmf) or a limiting law.
#[derive(Debug, Clone)]
pub enum QInput<'a> {
    Model(&'a IsingModel),
    Limit(&'a LimitSpec),
}

/// The tail-probability functional `E[Q(c * |V|)]` where `V` is distributed
/// as the (finite-`n` or limiting) scaled magnetization and
/// `c = (1-2p)/sqrt(4p(1-p))`.
///
/// Gaussian laws are integrated by quadrature (tolerance well below 1e-9) —
/// deliberately not via the arccot closed form, so the two routes check each
/// other. Sample inputs are averaged directly.
pub fn q_functional(input: QInput<'_>, p: f64) -> Result<f64> {
    check_p(p)?;
    let c = noise_constant(p);
    match input {
        QInput::Model(model) => {
            let pmf = exact_magnetization_pmf(model)?;
            let n = model.n() as f64;
            let mut acc = KahanSum::new();
            for (s, prob) in pmf.support() {
                acc.add(prob * q_tail(c * (s as f64).abs() / n.sqrt()));
            }
            Ok(acc.value())
        }
        QInput::Limit(spec) => match spec.sigma()? {
            Some(sigma) => {
                // E[Q(c |V|)] = 2 * int_0^inf phi_sigma(v) Q(c v) dv; the
                // integrand is smooth and the tail beyond 14 sigma is < 1e-43.
                let norm = (2.0 / std::f64::consts::PI).sqrt() / sigma;
                let f = |v: f64| norm * (-v * v / (2.0 * sigma * sigma)).exp() * q_tail(c * v);
                Ok(integrate(f, 0.0, 14.0 * sigma, 64))
            }
            None => {
                let LimitSpec::FromSamples(samples) = spec else {
                    unreachable!("only sample specs lack a sigma")
                };
                if samples.is_empty() {
                    return Err(Error::NoSamples);
                }
                let mut acc = KahanSum::new();
                for &v in samples {
                    acc.add(q_tail(c * v.abs()));
                }
                Ok(acc.value() / samples.len() as f64)
            }
        },
    }
}

/// The mean-field rate function `ln cosh(2 sqrt(theta) s) - s^2`.
pub fn rate_function(theta: f64, s: f64) -> Result<f64> {
    if !(theta > 0.0) || !theta.is_finite() {
        return Err(Error::ThetaNotPositive { theta });
    }
    Ok(ln_cosh(2.0 * theta.sqrt() * s) - s * s)
}

/// Maximum of the rate function over `s >= 0` and its argmax.
///
/// For `theta <= 1/2` the maximum is `(0, 0)`. Beyond the critical coupling
/// the positive stationary point solves `m = tanh(2 theta m)` with
/// `s = sqrt(theta) * m`; `tanh(2 theta m) - m` changes sign exactly once on
/// `(0, 1]`, so bisection brackets it without derivatives.
pub fn rate_function_max(theta: f64) -> Result<(f64, f64)> {
    if !(theta > 0.0) || !theta.is_finite() {
        return Err(Error::ThetaNotPositive { theta });
    }
    if theta <= 0.5 {
        return Ok((0.0, 0.0));
    }
    let m = bisect(|m| (2.0 * theta * m).tanh() - m, 1e-12, 1.0, 1e-15);
    let s_star = theta.sqrt() * m;
    Ok((rate_function(theta, s_star)?, s_star))
}

/// Lower bound on the supercritical error exponent:
/// `rate_function_max(theta) - rate_function_max(theta - c_H)`, `theta > 1/2`.
pub fn error_exponent_lower_bound(theta: f64, p: f64) -> Result<f64> {
    if !(theta > 0.5) {
        return Err(Error::NotSupercritical { theta });
    }
    let coeff = hoeffding_coefficient(p)?;
    let (high, _) = rate_function_max(theta)?;
    let (low, _) = rate_function_max(theta - coeff)?;
    Ok(high - low)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::exact_error_prob;
    use crate::graph::Graph;
    use crate::ising::Coupling;
    use approx::assert_abs_diff_eq;

    fn model(family: GraphFamily, n: usize, theta: f64, coupling: Coupling) -> IsingModel {
        IsingModel::new(Graph::build(family, n).unwrap(), theta, coupling).unwrap()
    }

    #[test]
    fn q_tail_reference_points() {
        assert_abs_diff_eq!(q_tail(0.0), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(q_tail(1.959964), 0.025, epsilon = 1e-6);
        // The erfc kernel is a rational approximation, good to about 1e-10.
        assert_abs_diff_eq!(q_tail(1.0), 0.15865525393145707, epsilon = 1e-9);
        assert!(q_tail(40.0) < 1e-300);
        for x in [-3.0, -0.5, 0.0, 0.7, 2.5] {
            assert_abs_diff_eq!(q_tail(x) + q_tail(-x), 1.0, epsilon = 1e-15);
        }
        let mut last = 1.0;
        for i in 0..40 {
            let q = q_tail(-4.0 + 0.2 * i as f64);
            assert!(q < last);
            last = q;
        }
    }

    #[test]
    fn iid_limit_reference_points() {
        assert_abs_diff_eq!(pe_limit_iid(0.25).unwrap(), 1.0 / 3.0, epsilon = 1e-15);
        // Independent reference: bivariate-normal quadrant probability with
        // correlation 1 - 2p.
        assert_abs_diff_eq!(
            pe_limit_iid(0.1).unwrap(),
            0.204832764699133,
            epsilon = 1e-12
        );
        let mut last = 0.0;
        for i in 1..50 {
            let v = pe_limit_iid(i as f64 * 0.01).unwrap();
            assert!(v > last && v < 0.5);
            last = v;
        }
        assert!(pe_limit_iid(0.0).is_err());
        assert!(pe_limit_iid(0.5).is_err());
    }

    #[test]
    fn gaussian_limit_reference_points() {
        // Independent reference: two-Gaussian simulation and quadrant oracle.
        assert_abs_diff_eq!(
            pe_limit_gaussian(0.1, 2.0).unwrap(),
            0.114200251219908,
            epsilon = 1e-12
        );
        // arccot stays in (0, pi): huge sigma gives a tiny positive value.
        let tiny = pe_limit_gaussian(0.25, 1e12).unwrap();
        assert!(tiny > 0.0 && tiny < 1e-11);
        assert!(pe_limit_gaussian(0.1, 0.0).is_err());
        assert!(pe_limit_gaussian(0.1, -1.0).is_err());
    }

    #[test]
    fn gaussian_limit_at_unit_sigma_is_iid_limit() {
        for p in [0.05, 0.1, 0.25, 0.4] {
            assert_abs_diff_eq!(
                pe_limit_gaussian(p, 1.0).unwrap(),
                pe_limit_iid(p).unwrap(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn chain_limit_reference_points() {
        assert_abs_diff_eq!(
            pe_limit_chain(0.1, 0.5).unwrap(),
            0.135892738224074,
            epsilon = 1e-12
        );
        // theta -> 0 recovers the independent case.
        assert_abs_diff_eq!(
            pe_limit_chain(0.1, 1e-12).unwrap(),
            pe_limit_iid(0.1).unwrap(),
            epsilon = 1e-10
        );
        let mut last = 0.5;
        for i in 1..20 {
            let v = pe_limit_chain(0.1, i as f64 * 0.2).unwrap();
            assert!(v < last);
            last = v;
        }
    }

    #[test]
    fn subcritical_limit_reference_points() {
        assert_abs_diff_eq!(
            pe_limit_complete_subcritical(0.1, 0.3).unwrap(),
            0.140982964028624,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            pe_limit_complete_subcritical(0.1, 1e-12).unwrap(),
            pe_limit_iid(0.1).unwrap(),
            epsilon = 1e-10
        );
        // sigma diverges at the critical point, so the limit collapses to 0.
        assert!(pe_limit_complete_subcritical(0.1, 0.4999999).unwrap() < 1e-3);
        assert!(matches!(
            pe_limit_complete_subcritical(0.1, 0.5),
            Err(Error::NotSubcritical { .. })
        ));
        assert!(matches!(
            pe_limit_complete_subcritical(0.1, 0.7),
            Err(Error::NotSubcritical { .. })
        ));
    }

    #[test]
    fn limits_stay_in_open_interval() {
        for p in [0.01, 0.1, 0.25, 0.45] {
            for v in [
                pe_limit_iid(p).unwrap(),
                pe_limit_gaussian(p, 0.3).unwrap(),
                pe_limit_chain(p, 1.0).unwrap(),
                pe_limit_complete_subcritical(p, 0.45).unwrap(),
            ] {
                assert!(v > 0.0 && v < 0.5);
            }
        }
    }

    #[test]
    fn hoeffding_coefficient_reference_points() {
        assert_abs_diff_eq!(
            hoeffding_coefficient(1e-15).unwrap(),
            0.125,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            hoeffding_coefficient(0.25).unwrap(),
            1.0 / 18.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            hoeffding_coefficient(0.1).unwrap(),
            0.098765432098765,
            epsilon = 1e-14
        );
        assert!(hoeffding_coefficient(0.4999999).unwrap() < 1e-13);
        for i in 1..50 {
            let c = hoeffding_coefficient(i as f64 * 0.01).unwrap();
            assert!(c > 0.0 && c < 0.125);
        }
    }

    #[test]
    fn hoeffding_bound_single_spin() {
        // n = 1 forces (sqrt(n) mean)^2 = 1, so the bound is exp(-c_H).
        let m = model(GraphFamily::Empty, 1, 1.0, Coupling::Edgewise);
        let got = hoeffding_bound(&m, 1e-15, BoundMethod::Exact).unwrap();
        assert_abs_diff_eq!(got, (-0.125f64).exp(), epsilon = 1e-12);
        assert_abs_diff_eq!(got, 0.882496902584595, epsilon = 1e-12);
    }

    #[test]
    fn hoeffding_bound_dominates_exact_error() {
        let m = model(GraphFamily::Empty, 3, 1.0, Coupling::Edgewise);
        let bound = hoeffding_bound(&m, 0.1, BoundMethod::Exact).unwrap();
        assert!(bound >= 0.136);

        let m = model(GraphFamily::Empty, 9, 1.0, Coupling::Edgewise);
        let bound = hoeffding_bound(&m, 0.1, BoundMethod::Exact).unwrap();
        assert_abs_diff_eq!(bound, 0.913106646577009, epsilon = 1e-12);
        assert!(bound >= exact_error_prob(&m, 0.1).unwrap());
    }

    #[test]
    fn hoeffding_bound_decays_in_supercritical_regime() {
        let mut last = 1.0;
        for n in [101, 201, 401] {
            let m = model(GraphFamily::Complete, n, 0.7, Coupling::CurieWeiss);
            let bound = hoeffding_bound(&m, 0.1, BoundMethod::Exact).unwrap();
            assert!(bound < 0.5 * last, "no decay at n = {n}");
            last = bound;
        }
    }

    #[test]
    fn hoeffding_bound_monte_carlo_agrees_with_exact() {
        let m = model(GraphFamily::ChainPbc, 9, 0.5, Coupling::Edgewise);
        let exact = hoeffding_bound(&m, 0.2, BoundMethod::Exact).unwrap();
        let mc = hoeffding_bound(
            &m,
            0.2,
            BoundMethod::MonteCarlo {
                trials: 200_000,
                seed: 5,
            },
        )
        .unwrap();
        // The averaged quantity lies in (0,1]; 5 sigma is comfortably inside.
        assert_abs_diff_eq!(mc, exact, epsilon = 0.005);
    }

    #[test]
    fn q_functional_point_mass_is_half() {
        let spec = LimitSpec::FromSamples(vec![0.0]);
        assert_abs_diff_eq!(
            q_functional(QInput::Limit(&spec), 0.25).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        let empty = LimitSpec::FromSamples(Vec::new());
        assert!(matches!(
            q_functional(QInput::Limit(&empty), 0.25),
            Err(Error::NoSamples)
        ));
    }

    #[test]
    fn q_functional_gaussian_quadrature_matches_closed_forms() {
        let spec = LimitSpec::Gaussian { sigma: 1.0 };
        assert_abs_diff_eq!(
            q_functional(QInput::Limit(&spec), 0.25).unwrap(),
            1.0 / 3.0,
            epsilon = 1e-9
        );
        for (spec, want) in [
            (LimitSpec::Iid, pe_limit_iid(0.1).unwrap()),
            (
                LimitSpec::Chain { theta: 0.5 },
                pe_limit_chain(0.1, 0.5).unwrap(),
            ),
            (
                LimitSpec::CompleteSubcritical { theta: 0.3 },
                pe_limit_complete_subcritical(0.1, 0.3).unwrap(),
            ),
            (
                LimitSpec::Gaussian { sigma: 2.0 },
                pe_limit_gaussian(0.1, 2.0).unwrap(),
            ),
        ] {
            assert_abs_diff_eq!(
                q_functional(QInput::Limit(&spec), 0.1).unwrap(),
                want,
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn q_functional_finite_n_tracks_exact_error() {
        // The Gaussianized conditional is only asymptotically exact: at n = 9
        // the gap to the true error probability is 0.0175.
        let m = model(GraphFamily::Empty, 9, 1.0, Coupling::Edgewise);
        let q = q_functional(QInput::Model(&m), 0.1).unwrap();
        assert_abs_diff_eq!(q, 0.1934235614934244, epsilon = 1e-9);
        let gap = q - exact_error_prob(&m, 0.1).unwrap();
        assert!(gap.abs() < 0.02);
    }

    #[test]
    fn q_functional_converges_to_matching_limit() {
        // Mean-field subcritical: gap to the limit shrinks as n grows.
        let limit = pe_limit_complete_subcritical(0.1, 0.3).unwrap();
        let mut last_gap = f64::INFINITY;
        for n in [101, 401, 1601] {
            let m = model(GraphFamily::Complete, n, 0.3, Coupling::CurieWeiss);
            let gap = (q_functional(QInput::Model(&m), 0.1).unwrap() - limit).abs();
            assert!(gap < last_gap, "gap grew at n = {n}");
            last_gap = gap;
        }
        assert!(last_gap < 2e-3);
    }

    #[test]
    fn q_functional_validates_subcritical_spec() {
        let spec = LimitSpec::CompleteSubcritical { theta: 0.6 };
        assert!(matches!(
            q_functional(QInput::Limit(&spec), 0.1),
            Err(Error::NotSubcritical { .. })
        ));
    }

    #[test]
    fn rate_function_zero_below_critical_coupling() {
        for theta in [0.1, 0.3, 0.5] {
            assert_eq!(rate_function_max(theta).unwrap(), (0.0, 0.0));
        }
    }

    #[test]
    fn rate_function_max_reference_points() {
        // Independent references from a 1e-6-step grid search over s.
        for (theta, max, argmax) in [
            (0.55, 0.00668898801911093, 0.372990713100348),
            (0.7, 0.0800945624307068, 0.681483462537012),
            (1.0, 0.326523887426924, 0.957504024077269),
            (1.5, 0.809366318429813, 1.21850054451201),
        ] {
            let (got_max, got_arg) = rate_function_max(theta).unwrap();
            assert_abs_diff_eq!(got_max, max, epsilon = 1e-12);
            assert_abs_diff_eq!(got_arg, argmax, epsilon = 1e-9);
        }
    }

    #[test]
    fn rate_function_argmax_satisfies_stationarity() {
        for i in 0..30 {
            let theta = 0.51 + 0.05 * i as f64;
            let (max, s) = rate_function_max(theta).unwrap();
            let residual = (s - theta.sqrt() * (2.0 * theta.sqrt() * s).tanh()).abs();
            assert!(residual < 1e-10, "residual {residual} at theta = {theta}");
            assert!(max > 0.0);
            assert_abs_diff_eq!(max, rate_function(theta, s).unwrap(), epsilon = 1e-15);
        }
    }

    #[test]
    fn rate_function_max_is_increasing_past_critical() {
        let mut last = 0.0;
        for i in 1..=20 {
            let theta = 0.5 + 0.05 * i as f64;
            let (max, _) = rate_function_max(theta).unwrap();
            assert!(max > last);
            last = max;
        }
    }

    #[test]
    fn exponent_bound_reference_points() {
        assert_abs_diff_eq!(
            error_exponent_lower_bound(0.7, 0.1).unwrap(),
            0.0554571694331,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            error_exponent_lower_bound(1.0, 0.25).unwrap(),
            0.0503167410581,
            epsilon = 1e-10
        );
        // theta - c_H below critical: the bound is rate_function_max alone.
        assert_abs_diff_eq!(
            error_exponent_lower_bound(0.55, 0.1).unwrap(),
            rate_function_max(0.55).unwrap().0,
            epsilon = 1e-15
        );
        assert!(matches!(
            error_exponent_lower_bound(0.5, 0.1),
            Err(Error::NotSupercritical { .. })
        ));
    }

    #[test]
    fn exponent_bound_is_positive_and_increasing() {
        let mut last = 0.0;
        for i in 0..=18 {
            let theta = 0.6 + 0.05 * i as f64;
            let b = error_exponent_lower_bound(theta, 0.1).unwrap();
            assert!(b > last, "not increasing at theta = {theta}");
            last = b;
        }
    }
}
