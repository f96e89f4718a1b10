//! Shared numeric plumbing: compensated summation, log-domain reductions,
//! Gauss-Legendre panels, and scalar root bracketing.

use std::sync::OnceLock;

/// Kahan-compensated accumulator.
///
/// Probability masses are accumulated in linear domain; the compensation term
/// keeps long sums of small positive terms accurate to a few ulps instead of
/// drifting by `O(n * eps)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let y = value - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum
    }

    /// Merges another accumulator, preserving its compensation term.
    pub fn merge(&mut self, other: &KahanSum) {
        self.add(other.sum);
        self.add(-other.comp);
    }
}

/// log(exp(a) + exp(b)) without overflow.
#[inline]
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// log(sum(exp(v))) with a single max-shift.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let m = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let mut acc = KahanSum::new();
    for &v in values {
        acc.add((v - m).exp());
    }
    m + acc.value().ln()
}

/// Nodes and weights of the 32-point Gauss-Legendre rule on [-1, 1].
///
/// Computed once by Newton iteration on the Legendre recurrence; exact enough
/// that composite panels converge to machine precision on smooth integrands.
pub fn gauss_legendre_32() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = 32usize;
        let mut rule = Vec::with_capacity(n);
        for i in 0..n {
            // Chebyshev-like initial guess for the i-th root of P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let step = p / d;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            rule.push((x, w));
        }
        rule
    })
}

/// Value and derivative of the Legendre polynomial P_n at x.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// log of the integral of exp(log_f) over [lo, hi], by composite 32-point
/// Gauss-Legendre with `panels` equal subintervals, max-shifted so that
/// sharply peaked integrands do not overflow.
pub fn integrate_exp_log<F: Fn(f64) -> f64>(log_f: F, lo: f64, hi: f64, panels: usize) -> f64 {
    let rule = gauss_legendre_32();
    let width = (hi - lo) / panels as f64;
    let half = 0.5 * width;
    let log_half = half.ln();
    let mut terms = Vec::with_capacity(panels * rule.len());
    for p in 0..panels {
        let center = lo + (p as f64 + 0.5) * width;
        for &(x, w) in rule {
            terms.push(log_f(center + half * x) + w.ln() + log_half);
        }
    }
    log_sum_exp(&terms)
}

/// Integral of f over [lo, hi] by composite 32-point Gauss-Legendre.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, panels: usize) -> f64 {
    let rule = gauss_legendre_32();
    let width = (hi - lo) / panels as f64;
    let half = 0.5 * width;
    let mut acc = KahanSum::new();
    for p in 0..panels {
        let center = lo + (p as f64 + 0.5) * width;
        for &(x, w) in rule {
            acc.add(w * half * f(center + half * x));
        }
    }
    acc.value()
}

/// Root of a continuous function on [lo, hi] by bisection.
///
/// Requires f(lo) and f(hi) to have opposite signs; iterates until the
/// bracket width falls below `tol`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut flo = f(lo);
    debug_assert!(flo * f(hi) <= 0.0, "bisect needs a sign change");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        if fmid == 0.0 || hi - lo < tol {
            return mid;
        }
        if flo * fmid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    0.5 * (lo + hi)
}

/// log(cosh(x)) without overflow for large |x|.
#[inline]
pub fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// log(erfc(x)) for x >= 0, usable far past the point where erfc underflows.
pub fn ln_erfc(x: f64) -> f64 {
    if x < 25.0 {
        return statrs::function::erf::erfc(x).ln();
    }
    // Asymptotic series erfc(x) ~ exp(-x^2) / (x sqrt(pi)) * (1 - 1/(2x^2) + 3/(4x^4)).
    let inv2 = 1.0 / (x * x);
    let series = 1.0 - 0.5 * inv2 + 0.75 * inv2 * inv2;
    -x * x - (x * std::f64::consts::PI.sqrt()).ln() + series.ln()
}

/// Quantile of the standard normal distribution.
pub fn normal_quantile(q: f64) -> f64 {
    use statrs::distribution::ContinuousCDF;
    let normal = statrs::distribution::Normal::new(0.0, 1.0).expect("unit normal");
    normal.inverse_cdf(q)
}
