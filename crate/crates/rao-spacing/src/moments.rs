//! Moments and cumulants of the null distribution of U_n.
//!
//! The r-th raw moment is a triangular-coefficient sum
//!
//! ```text
//! E(U_n^r) = (2π)^r / (n^{n+r-1} (n)↑r) · Σ_j a_j^{(r)} (n)↓j (n-j)^{n+r-1}
//! ```
//!
//! evaluated two ways: in the log domain for f64 output at any `n`
//! ([`raw_moment`]), and in exact big-integer arithmetic for the cumulant
//! pipeline ([`cumulant_set`]) where f64 cancellation would destroy the
//! high-order standardized cumulants.

use std::f64::consts::TAU;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::bigfixed::Fx;
use crate::{Error, Result};

/// Largest moment order whose coefficients fit in 64-bit integers.
pub const DEFAULT_MAX_ORDER: usize = 10;

/// Triangular array a_j^(r) from the moment recursion
/// a_j^(r+1) = (r+j) a_j^(r) + a_{j-1}^(r), with a_r^(r) = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    rows: Vec<Vec<u64>>,
}

pub fn build_coefficients(r_max: usize) -> Result<CoefficientTable> {
    assert!(r_max >= 1);
    let mut rows: Vec<Vec<u64>> = vec![vec![1]];
    for r in 1..r_max {
        let prev = &rows[r - 1];
        let mut row = vec![0u64; r + 1];
        let overflow = Error::CoefficientOverflow { max_safe_order: r };
        row[0] = (r as u64 + 1).checked_mul(prev[0]).ok_or(overflow)?;
        for j in 2..=r {
            let a = (r as u64 + j as u64)
                .checked_mul(prev[j - 1])
                .ok_or(Error::CoefficientOverflow { max_safe_order: r })?;
            row[j - 1] = a
                .checked_add(prev[j - 2])
                .ok_or(Error::CoefficientOverflow { max_safe_order: r })?;
        }
        row[r] = 1;
        rows.push(row);
    }
    Ok(CoefficientTable { rows })
}

impl CoefficientTable {
    pub fn max_order(&self) -> usize {
        self.rows.len()
    }

    /// Row r as the slice a_1^(r) ..= a_r^(r).
    pub fn row(&self, r: usize) -> &[u64] {
        &self.rows[r - 1]
    }

    /// a_j^(r); zero for j > r.
    pub fn get(&self, r: usize, j: usize) -> u64 {
        assert!(r >= 1 && j >= 1);
        if j > r {
            0
        } else {
            self.rows[r - 1][j - 1]
        }
    }
}

fn ln_falling(n: f64, j: usize) -> f64 {
    (0..j).map(|i| (n - i as f64).ln()).sum()
}

fn ln_rising(n: f64, r: usize) -> f64 {
    (0..r).map(|i| (n + i as f64).ln()).sum()
}

fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

/// E(U_n^r), assembled term-wise in the log domain so that n in the
/// millions stays finite. The power ratio (n-j)^{n+r-1}/n^{n+r-1} is
/// taken as (n+r-1)·ln(1 - j/n) to keep precision at large n.
pub fn raw_moment(n: usize, r: usize, table: &CoefficientTable) -> Result<f64> {
    if n < 2 {
        return Err(Error::SampleSizeOutOfRange { n, min: 2, max: usize::MAX });
    }
    if r < 1 || r > table.max_order() {
        return Err(Error::OrderOutOfRange { order: r, max: table.max_order() });
    }
    let nf = n as f64;
    let exponent = (n + r - 1) as f64;
    let terms: Vec<f64> = (1..=r.min(n - 1))
        .map(|j| {
            (table.get(r, j) as f64).ln()
                + ln_falling(nf, j)
                + exponent * (-(j as f64) / nf).ln_1p()
        })
        .collect();
    Ok((r as f64 * TAU.ln() - ln_rising(nf, r) + log_sum_exp(&terms)).exp())
}

/// E(U_n^2) by its standalone closed form, a redundancy check on
/// [`raw_moment`]. Log-domain for the same large-n reasons.
pub fn second_moment_closed_form(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::SampleSizeOutOfRange { n, min: 3, max: usize::MAX });
    }
    let nf = n as f64;
    let e = nf + 1.0;
    let t1 = 2f64.ln() + e * (-1.0 / nf).ln_1p();
    let t2 = (nf - 1.0).ln() + e * (-2.0 / nf).ln_1p();
    Ok(TAU * TAU / (nf + 1.0) * log_sum_exp(&[t1, t2]).exp())
}

/// Raw moments μ'_1 ..= μ'_d of U_n as f64.
#[derive(Debug, Clone, Serialize)]
pub struct MomentSet {
    pub n: usize,
    pub order: usize,
    pub raw_moments: Vec<f64>,
}

pub fn moment_set(n: usize, order: usize, table: &CoefficientTable) -> Result<MomentSet> {
    let raw_moments = (1..=order)
        .map(|r| raw_moment(n, r, table))
        .collect::<Result<Vec<f64>>>()?;
    Ok(MomentSet { n, order, raw_moments })
}

/// Raw cumulants κ'_1 ..= κ'_d plus standardized cumulants
/// λ_j = κ'_j / (κ'_2)^{j/2} for j ≥ 3.
#[derive(Debug, Clone, Serialize)]
pub struct CumulantSet {
    pub n: usize,
    pub order: usize,
    pub raw_cumulants: Vec<f64>,
    pub standardized_cumulants: Vec<f64>,
}

impl CumulantSet {
    pub fn mean(&self) -> f64 {
        self.raw_cumulants[0]
    }

    pub fn variance(&self) -> f64 {
        self.raw_cumulants[1]
    }

    /// λ_j for 3 <= j <= order.
    pub fn lambda(&self, j: usize) -> f64 {
        self.standardized_cumulants[j - 3]
    }
}

fn binomial_u64(n: usize, k: usize) -> u64 {
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// Cumulants from an arbitrary f64 moment set by the binomial recursion
/// κ'_r = μ'_r − Σ_k C(r−1,k−1) κ'_k μ'_{r−k}.
///
/// Adequate for generic use and small n; the U_n production path is
/// [`cumulant_set`], which does the same recursion in exact arithmetic.
pub fn cumulants(moments: &MomentSet) -> Result<CumulantSet> {
    let d = moments.order;
    let mu = &moments.raw_moments;
    let mut kappa = vec![0.0; d];
    for r in 1..=d {
        let mut value = mu[r - 1];
        for k in 1..r {
            value -= binomial_u64(r - 1, k - 1) as f64 * kappa[k - 1] * mu[r - k - 1];
        }
        kappa[r - 1] = value;
    }
    let kappa2 = if d >= 2 { kappa[1] } else { 1.0 };
    if d >= 2 && kappa2 <= 0.0 {
        return Err(Error::DegenerateVariance { kappa2 });
    }
    let standardized = (3..=d)
        .map(|j| kappa[j - 1] / kappa2.powf(j as f64 / 2.0))
        .collect();
    Ok(CumulantSet {
        n: moments.n,
        order: d,
        raw_cumulants: kappa,
        standardized_cumulants: standardized,
    })
}

fn falling_big(n: usize, j: usize) -> BigInt {
    let mut acc = BigInt::from(1u32);
    for i in 0..j {
        acc *= BigInt::from((n - i) as u64);
    }
    acc
}

fn rising_big(n: usize, r: usize) -> BigInt {
    let mut acc = BigInt::from(1u32);
    for i in 0..r {
        acc *= BigInt::from((n + i) as u64);
    }
    acc
}

/// E(U_n^r) / (2π)^r as an exact ratio carried into fixed point.
fn moment_fraction(n: usize, r: usize, table: &CoefficientTable) -> Fx {
    let exponent = (n + r - 1) as u32;
    let mut numerator = BigInt::from(0u32);
    for j in 1..=r.min(n - 1) {
        numerator +=
            BigInt::from(table.get(r, j)) * falling_big(n, j) * BigInt::from((n - j) as u64).pow(exponent);
    }
    let denominator = BigInt::from(n as u64).pow(exponent) * rising_big(n, r);
    Fx::from_ratio(&numerator, &denominator)
}

/// Cumulants of U_n computed in exact arithmetic.
///
/// Moments enter as exact ratios scaled by (2π)^r, the cumulant recursion
/// runs in 512-bit fixed point, and only the final κ'_r and λ_j are
/// rounded to f64. This is what makes d = 10 usable at n = 10000, where
/// λ_10 sits some 40 decimal orders below the raw moments it is built from.
pub fn cumulant_set(n: usize, order: usize) -> Result<CumulantSet> {
    if n < 2 {
        return Err(Error::SampleSizeOutOfRange { n, min: 2, max: usize::MAX });
    }
    if !(1..=DEFAULT_MAX_ORDER).contains(&order) {
        return Err(Error::OrderOutOfRange { order, max: DEFAULT_MAX_ORDER });
    }
    let table = build_coefficients(order)?;
    // q_r = E(U_n^r) / (2π)^r; the recursion is scale-free term by term,
    // so c_r = κ'_r / (2π)^r obeys the same recursion in q.
    let q: Vec<Fx> = (1..=order).map(|r| moment_fraction(n, r, &table)).collect();
    let mut c: Vec<Fx> = Vec::with_capacity(order);
    for r in 1..=order {
        let mut value = q[r - 1].clone();
        for k in 1..r {
            let term = c[k - 1].mul(&q[r - k - 1]).mul_u64(binomial_u64(r - 1, k - 1));
            value = value.sub(&term);
        }
        c.push(value);
    }
    let raw_cumulants: Vec<f64> = c
        .iter()
        .enumerate()
        .map(|(i, ci)| ci.to_f64() * TAU.powi(i as i32 + 1))
        .collect();
    if order >= 2 && !c[1].is_positive() {
        return Err(Error::DegenerateVariance { kappa2: raw_cumulants[1] });
    }
    let mut standardized = Vec::new();
    if order >= 3 {
        let c2 = &c[1];
        let sqrt_c2 = c2.sqrt();
        for j in 3..=order {
            // λ_j = c_j / c_2^{j/2}; the (2π)^j scale cancels exactly
            let mut value = c[j - 1].clone();
            for _ in 0..j / 2 {
                value = value.div(c2);
            }
            if j % 2 == 1 {
                value = value.div(&sqrt_c2);
            }
            standardized.push(value.to_f64());
        }
    }
    Ok(CumulantSet {
        n,
        order,
        raw_cumulants,
        standardized_cumulants: standardized,
    })
}

/// Stirling numbers of the second kind by the additive recurrence,
/// exact at any size.
pub fn stirling2(m: usize, k: usize) -> BigUint {
    assert!(k <= m);
    let mut row = vec![BigUint::from(0u32); m + 1];
    row[0] = BigUint::from(1u32);
    for i in 1..=m {
        for j in (1..=i.min(m)).rev() {
            let carried = row[j - 1].clone();
            row[j] = carried + BigUint::from(j as u64) * &row[j];
        }
        row[0] = BigUint::from(0u32);
    }
    row[k].clone()
}

/// Independent Stirling-number route to E(U_n^r):
///
/// ```text
/// E(U_n^r) = (2π)^r / n^{n+r-1} · Σ_{j=1}^{n-1} (n)↓j (n-1)↓j / (n+r-1)↓j · S₂(n+r-1, j)
/// ```
///
/// Exact big-integer evaluation over a common denominator; exists solely
/// as an oracle for [`raw_moment`], hence the small-range gate.
pub fn moment_via_stirling(n: usize, r: usize) -> Result<f64> {
    if !(2..=25).contains(&n) {
        return Err(Error::SampleSizeOutOfRange { n, min: 2, max: 25 });
    }
    if !(1..=10).contains(&r) {
        return Err(Error::OrderOutOfRange { order: r, max: 10 });
    }
    let m = n + r - 1;
    // common denominator (n+r-1)↓(n-1); term j picks up the cofactor
    // (n+r-1-j)↓(n-1-j)
    let mut numerator = BigInt::from(0u32);
    for j in 1..=n - 1 {
        let s2 = BigInt::from(stirling2(m, j));
        let cofactor = falling_big(m - j, n - 1 - j);
        numerator += falling_big(n, j) * falling_big(n - 1, j) * s2 * cofactor;
    }
    let denominator = falling_big(m, n - 1) * BigInt::from(n as u64).pow(m as u32);
    Ok(Fx::from_ratio(&numerator, &denominator).to_f64() * TAU.powi(r as i32))
}
