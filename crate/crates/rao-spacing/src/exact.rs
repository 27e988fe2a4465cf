//! Exact small-n density of U_n and its quadrature CDF.
//!
//! The density is a finite mixture of Irwin-Hall terms, piecewise
//! polynomial with knots at multiples of 2π/n. The alternating inner sum
//! loses precision as n grows, which is why this route is capped at
//! n = 30 and the Gram-Charlier expansion takes over beyond.

use std::f64::consts::TAU;

use crate::spacings::support_max;
use crate::{Error, Result};

/// Largest sample size the exact route supports; past this the
/// alternating Irwin-Hall sum no longer passes the normalization check
/// in double precision.
pub const MAX_EXACT_N: usize = 30;

/// Density at `x` of the sum of `j` independent uniforms on [0, 2π].
pub fn irwin_hall_pdf(j: usize, x: f64) -> f64 {
    assert!(j >= 1);
    let scaled = x / TAU;
    if scaled <= 0.0 || scaled >= j as f64 {
        return 0.0;
    }
    if j == 1 {
        return 1.0 / TAU;
    }
    // Kahan-compensated alternating sum
    let mut sum = 0.0;
    let mut carry = 0.0;
    let mut binom = 1.0; // C(j, k)
    for k in 0..j {
        let base = scaled - k as f64;
        if base > 0.0 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let term = sign * binom * base.powi(j as i32 - 1);
            let y = term - carry;
            let t = sum + y;
            carry = (t - sum) - y;
            sum = t;
        }
        binom = binom * (j - k) as f64 / (k + 1) as f64;
    }
    let ln_fact: f64 = (1..j).map(|i| (i as f64).ln()).sum();
    (sum.max(0.0) / TAU) * (-ln_fact).exp()
}

/// Exact density f_n(u) of the statistic, zero outside [0, 2π(1 − 1/n)].
pub fn exact_pdf(n: usize, u: f64) -> Result<f64> {
    if !(2..=MAX_EXACT_N).contains(&n) {
        return Err(Error::SampleSizeOutOfRange { n, min: 2, max: MAX_EXACT_N });
    }
    if u < 0.0 || u > support_max(n) {
        return Ok(0.0);
    }
    let ln_fact = |m: usize| -> f64 { (1..=m).map(|i| (i as f64).ln()).sum() };
    let scaled = u / TAU;
    let mut total = 0.0;
    for j in 1..n {
        let ih = irwin_hall_pdf(j, n as f64 * u);
        if ih == 0.0 {
            continue;
        }
        // (n-1)! C(n,j) (u/2π)^{n-j-1} / ((n-j-1)! n^{j-1}), log-domain
        let power = (n - j - 1) as f64;
        if scaled == 0.0 && power > 0.0 {
            continue;
        }
        let ln_coeff = ln_fact(n - 1) + ln_fact(n) - ln_fact(j) - ln_fact(n - j)
            + power * if power > 0.0 { scaled.ln() } else { 0.0 }
            - ln_fact(n - j - 1)
            - (j as f64 - 1.0) * (n as f64).ln();
        total += ln_coeff.exp() * ih;
    }
    Ok(total)
}

fn simpson_panel(n: usize, a: f64, b: f64, tol: f64) -> Result<f64> {
    // the density can jump at panel boundaries (they are knots); use
    // one-sided limits so Simpson sees the smooth interior piece
    let nudge = (b - a) * 1e-13;
    let mut panels = 4usize;
    let mut previous = f64::NAN;
    let mut latest = f64::NAN;
    for _ in 0..18 {
        let h = (b - a) / panels as f64;
        let mut sum = exact_pdf(n, a + nudge)? + exact_pdf(n, b - nudge)?;
        for i in 1..panels {
            let weight = if i % 2 == 1 { 4.0 } else { 2.0 };
            sum += weight * exact_pdf(n, a + i as f64 * h)?;
        }
        previous = latest;
        latest = sum * h / 3.0;
        if (latest - previous).abs() < tol {
            return Ok(latest);
        }
        panels *= 2;
    }
    Err(Error::QuadratureFailure { previous, latest })
}

/// CDF by composite Simpson quadrature of [`exact_pdf`], split at the
/// density's knots u = 2πk/n and refined per panel until successive
/// estimates differ by less than 1e-9.
pub fn exact_cdf(n: usize, t: f64) -> Result<f64> {
    if !(2..=MAX_EXACT_N).contains(&n) {
        return Err(Error::SampleSizeOutOfRange { n, min: 2, max: MAX_EXACT_N });
    }
    let top = support_max(n);
    if t <= 0.0 {
        return Ok(0.0);
    }
    let t = t.min(top);
    let knot = TAU / n as f64;
    let mut total = 0.0;
    let mut a = 0.0;
    let tol = 1e-9 / (n as f64); // per-panel share of the overall budget
    while a < t {
        let b = ((a / knot).floor() + 1.0) * knot;
        let b = if b <= a + 1e-15 { a + knot } else { b }.min(t);
        total += simpson_panel(n, a, b, tol)?;
        a = b;
    }
    Ok(total.clamp(0.0, 1.0))
}
