//! Truncated Gram-Charlier CDF, P-values, and critical values of U_n.
//!
//! The null CDF is approximated around the standard normal:
//!
//! ```text
//! F_n(t) ≈ Φ(u) − φ(u) Σ_{j=3}^{d} B_j(0, 0, λ_3, …, λ_j) H_{j-1}(u) / j!
//! ```
//!
//! with u the standardized statistic (t − κ'_1)/√κ'_2 and λ_j the
//! standardized cumulants. Both standardizations matter: passing raw
//! cumulants or the raw statistic into the series does not reproduce the
//! exact small-n CDF.

use crate::moments::CumulantSet;
use crate::spacings::support_max;
use crate::{Error, Result};

const SQRT_TAU: f64 = 2.5066282746310002;

fn std_normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / SQRT_TAU
}

fn std_normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// Probabilists' Hermite polynomial H_j(x) by the three-term recurrence
/// H_{j+1} = x·H_j − j·H_{j-1}.
pub fn hermite(j: usize, x: f64) -> f64 {
    if j == 0 {
        return 1.0;
    }
    let (mut prev, mut curr) = (1.0, x);
    for k in 1..j {
        (prev, curr) = (curr, x * curr - k as f64 * prev);
    }
    curr
}

/// Argument vector (x_1, …, x_d) for the Bell polynomials: the first two
/// entries are pinned to zero, x_j = λ_j for j ≥ 3.
#[derive(Debug, Clone)]
pub struct BellArguments {
    xs: Vec<f64>,
}

impl BellArguments {
    pub fn from_cumulants(cumulants: &CumulantSet) -> Self {
        let d = cumulants.order;
        let mut xs = vec![0.0; d];
        for j in 3..=d {
            xs[j - 1] = cumulants.lambda(j);
        }
        BellArguments { xs }
    }

    /// Directly from λ_3..λ_d values (x_1 = x_2 = 0 enforced).
    pub fn from_lambdas(lambdas: &[f64]) -> Self {
        let mut xs = vec![0.0, 0.0];
        xs.extend_from_slice(lambdas);
        BellArguments { xs }
    }

    fn x(&self, i: usize) -> f64 {
        self.xs.get(i - 1).copied().unwrap_or(0.0)
    }

    pub fn order(&self) -> usize {
        self.xs.len()
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Complete exponential Bell polynomial B_j at the given arguments, via
/// B_{m+1} = Σ_{k=0}^{m} C(m,k) B_{m−k} x_{k+1}, B_0 = 1.
pub fn bell_complete(j: usize, args: &BellArguments) -> f64 {
    let mut b = vec![1.0];
    for m in 0..j {
        let mut next = 0.0;
        for k in 0..=m {
            next += binomial(m, k) * b[m - k] * args.x(k + 1);
        }
        b.push(next);
    }
    b[j]
}

/// Precomputed expansion for one (n, d): standardization parameters and
/// the Bell values B_3..B_d, reusable across evaluation points.
#[derive(Debug, Clone)]
pub struct CdfApproximation {
    pub n: usize,
    pub d: usize,
    pub mean: f64,
    pub sd: f64,
    bell: Vec<f64>,
}

impl CdfApproximation {
    pub fn new(cumulants: &CumulantSet) -> Self {
        let d = cumulants.order;
        let args = BellArguments::from_cumulants(cumulants);
        let bell = (3..=d).map(|j| bell_complete(j, &args)).collect();
        CdfApproximation {
            n: cumulants.n,
            d,
            mean: cumulants.mean(),
            sd: cumulants.variance().sqrt(),
            bell,
        }
    }

    /// Truncated-series CDF at statistic value `t` (radians), clamped to [0, 1].
    pub fn cdf(&self, t: f64) -> f64 {
        let u = (t - self.mean) / self.sd;
        let mut factorial = 2.0; // j! running from j = 3
        let mut series = 0.0;
        for (i, b) in self.bell.iter().enumerate() {
            let j = i + 3;
            factorial *= j as f64;
            series += b * hermite(j - 1, u) / factorial;
        }
        (std_normal_cdf(u) - std_normal_pdf(u) * series).clamp(0.0, 1.0)
    }

    /// Upper-tail probability, the exact complement of [`Self::cdf`].
    pub fn p_value(&self, t: f64) -> f64 {
        1.0 - self.cdf(t)
    }

    /// Whether `t` lies outside the statistic's support [0, 2π(1 − 1/n)].
    /// The series itself evaluates anywhere on the real line.
    pub fn outside_support(&self, t: f64) -> bool {
        t < 0.0 || t > support_max(self.n)
    }
}

pub fn cdf(n: usize, t: f64, cumulants: &CumulantSet) -> f64 {
    debug_assert_eq!(n, cumulants.n);
    CdfApproximation::new(cumulants).cdf(t)
}

pub fn p_value(n: usize, t: f64, cumulants: &CumulantSet) -> f64 {
    debug_assert_eq!(n, cumulants.n);
    CdfApproximation::new(cumulants).p_value(t)
}

/// The statistic value (degrees) whose upper-tail probability equals
/// `alpha`, by bisection on a verified-monotone bracket.
pub fn critical_value(n: usize, alpha: f64, cumulants: &CumulantSet) -> Result<f64> {
    debug_assert_eq!(n, cumulants.n);
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidAlpha { alpha });
    }
    let approx = CdfApproximation::new(cumulants);
    let (mut lo, mut hi) = monotone_bracket(&approx, alpha)?;
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if approx.p_value(mid) > alpha {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi)).to_degrees())
}

/// Scan the support for a sub-interval on which the truncated CDF is
/// nondecreasing and the target tail probability is straddled. The far
/// tails of a truncated series can wiggle, so the whole support is not
/// assumed monotone.
fn monotone_bracket(approx: &CdfApproximation, alpha: f64) -> Result<(f64, f64)> {
    const GRID: usize = 1024;
    let hi = support_max(approx.n).min(approx.mean + 12.0 * approx.sd);
    let lo = (approx.mean - 12.0 * approx.sd).max(0.0);
    let step = (hi - lo) / GRID as f64;
    let p: Vec<f64> = (0..=GRID).map(|i| approx.p_value(lo + i as f64 * step)).collect();
    for i in 0..GRID {
        if p[i] > alpha && p[i + 1] <= alpha {
            // require monotonicity in a neighborhood of the crossing
            let left = i.saturating_sub(2);
            let right = (i + 3).min(GRID);
            if p[left..=right].windows(2).all(|w| w[0] >= w[1]) {
                return Ok((lo + left as f64 * step, lo + right as f64 * step));
            }
        }
    }
    Err(Error::BracketFailure { alpha })
}
