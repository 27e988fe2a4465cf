//! Monte Carlo harness for size and power experiments.
//!
//! Replications are independent; each gets its own ChaCha stream keyed by
//! (seed, replication index), so reports are bit-identical whether the
//! run is serial or parallel.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::gramcharlier::CdfApproximation;
use crate::moments::cumulant_set;
use crate::spacings::{statistic, AngleSample, AngleUnit};
use crate::{Error, Result};

/// Data-generating distribution for a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alternative {
    Uniform,
    VonMises { mu: f64, kappa: f64 },
}

/// Rejection rule: P-value below alpha, or statistic above a fixed
/// tabulated critical value in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecisionMethod {
    GramCharlier,
    FixedCriticalValue(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub reps: usize,
    pub alpha: f64,
    pub alternative: Alternative,
    pub seed: u64,
    pub method: DecisionMethod,
    pub truncation_order: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ExperimentReport {
    pub accept: usize,
    pub reject: usize,
    pub reps: usize,
    pub rejection_rate: f64,
    pub wilson_ci_95: (f64, f64),
}

/// 95% Wilson score interval for a binomial proportion; stable near 0.
pub fn wilson_interval(successes: usize, trials: usize) -> (f64, f64) {
    let z = 1.959963984540054f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let center = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / (1.0 + z2 / n);
    ((center - half).max(0.0), (center + half).min(1.0))
}

pub fn sample_uniform<R: Rng>(n: usize, rng: &mut R) -> AngleSample {
    let raw: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * TAU).collect();
    AngleSample::ingest(&raw, AngleUnit::Radians).expect("valid uniform draws")
}

/// Von Mises draws by the Best-Fisher wrapped-Cauchy envelope rejection
/// sampler; exact, no truncation error. kappa = 0 degenerates to uniform.
pub fn sample_von_mises<R: Rng>(n: usize, mu: f64, kappa: f64, rng: &mut R) -> AngleSample {
    assert!(kappa >= 0.0);
    if kappa == 0.0 {
        return sample_uniform(n, rng);
    }
    let tau = 1.0 + (1.0 + 4.0 * kappa * kappa).sqrt();
    let rho = (tau - (2.0 * tau).sqrt()) / (2.0 * kappa);
    let r = (1.0 + rho * rho) / (2.0 * rho);
    let mut raw = Vec::with_capacity(n);
    while raw.len() < n {
        let u1: f64 = rng.random();
        let z = (std::f64::consts::PI * u1).cos();
        let f = (1.0 + r * z) / (r + z);
        let c = kappa * (r - f);
        let u2: f64 = rng.random();
        if c * (2.0 - c) - u2 > 0.0 || (c / u2).ln() + 1.0 - c >= 0.0 {
            let u3: f64 = rng.random();
            let angle = mu + (u3 - 0.5).signum() * f.acos();
            raw.push(angle.rem_euclid(TAU));
        }
    }
    AngleSample::ingest(&raw, AngleUnit::Radians).expect("valid von Mises draws")
}

fn rep_rng(seed: u64, rep: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(rep as u64);
    rng
}

/// Run the experiment: one sample per replication, reject per the
/// configured rule, reduce to counts and a Wilson interval.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    if config.reps < 1 {
        return Err(Error::InvalidConfig("reps must be >= 1".into()));
    }
    if !(config.alpha > 0.0 && config.alpha < 1.0) {
        return Err(Error::InvalidAlpha { alpha: config.alpha });
    }
    if let Alternative::VonMises { kappa, .. } = config.alternative {
        if kappa < 0.0 {
            return Err(Error::InvalidConfig("kappa must be >= 0".into()));
        }
    }
    let approx = match config.method {
        DecisionMethod::GramCharlier => Some(CdfApproximation::new(&cumulant_set(
            config.n,
            config.truncation_order,
        )?)),
        DecisionMethod::FixedCriticalValue(_) => None,
    };
    let reject = (0..config.reps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = rep_rng(config.seed, rep);
            let sample = match config.alternative {
                Alternative::Uniform => sample_uniform(config.n, &mut rng),
                Alternative::VonMises { mu, kappa } => {
                    sample_von_mises(config.n, mu, kappa, &mut rng)
                }
            };
            let u = statistic(&sample);
            let rejected = match config.method {
                DecisionMethod::GramCharlier => {
                    approx.as_ref().expect("built above").p_value(u) < config.alpha
                }
                DecisionMethod::FixedCriticalValue(deg) => u.to_degrees() > deg,
            };
            usize::from(rejected)
        })
        .sum::<usize>();
    let accept = config.reps - reject;
    Ok(ExperimentReport {
        accept,
        reject,
        reps: config.reps,
        rejection_rate: reject as f64 / config.reps as f64,
        wilson_ci_95: wilson_interval(reject, config.reps),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn uniform_draws_in_range_and_deterministic() {
        let mut rng = rep_rng(42, 0);
        let a = sample_uniform(100, &mut rng);
        assert!(a.angles().iter().all(|&x| (0.0..TAU).contains(&x)));
        let mut rng = rep_rng(42, 0);
        let b = sample_uniform(100, &mut rng);
        assert_eq!(a, b);
    }

    #[test]
    fn uniform_statistic_mean_matches_closed_form() {
        let n = 10;
        let reps = 100_000;
        let mean: f64 = (0..reps)
            .into_par_iter()
            .map(|rep| {
                let mut rng = rep_rng(7, rep);
                statistic(&sample_uniform(n, &mut rng))
            })
            .sum::<f64>()
            / reps as f64;
        let expected = TAU * 0.9f64.powi(10);
        // sd of U_10 is about 0.66, so 3 standard errors ~ 0.0063
        assert_abs_diff_eq!(mean, expected, epsilon = 3.0 * 0.66 / (reps as f64).sqrt());
    }

    #[test]
    fn von_mises_kappa_zero_is_uniform() {
        let mut rng = rep_rng(3, 0);
        let a = sample_von_mises(50, 1.0, 0.0, &mut rng);
        let mut rng = rep_rng(3, 0);
        let b = sample_uniform(50, &mut rng);
        assert_eq!(a, b);
    }

    #[test]
    fn von_mises_mean_direction_and_resultant() {
        let reps = 100_000usize;
        let kappa = 0.3;
        let mut rng = rep_rng(11, 0);
        let sample = sample_von_mises(reps, 0.0, kappa, &mut rng);
        let (mut c, mut s) = (0.0, 0.0);
        for &x in sample.angles() {
            c += x.cos();
            s += x.sin();
        }
        let resultant = (c * c + s * s).sqrt() / reps as f64;
        let direction = s.atan2(c);
        // I_1(0.3)/I_0(0.3) by series
        let bessel_ratio = {
            let x = kappa;
            let (mut i0, mut i1) = (0.0, 0.0);
            for k in 0..20 {
                let kf = (1..=k).map(|i| i as f64).product::<f64>();
                i0 += (x / 2.0).powi(2 * k as i32) / (kf * kf);
                i1 += (x / 2.0).powi(2 * k as i32 + 1) / (kf * kf * (k as f64 + 1.0));
            }
            i1 / i0
        };
        assert_abs_diff_eq!(bessel_ratio, 0.1483, epsilon = 1e-4);
        assert_abs_diff_eq!(resultant, bessel_ratio, epsilon = 3.0 / (reps as f64).sqrt());
        assert_abs_diff_eq!(direction, 0.0, epsilon = 3.0 / (kappa * (reps as f64).sqrt()));
    }

    #[test]
    fn experiment_is_reproducible() {
        let config = ExperimentConfig {
            n: 50,
            reps: 200,
            alpha: 0.05,
            alternative: Alternative::Uniform,
            seed: 99,
            method: DecisionMethod::GramCharlier,
            truncation_order: 10,
        };
        let a = run_experiment(&config).unwrap();
        let b = run_experiment(&config).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.accept + a.reject, a.reps);
    }

    #[test]
    fn experiment_rejects_bad_config() {
        let config = ExperimentConfig {
            n: 10,
            reps: 0,
            alpha: 0.05,
            alternative: Alternative::Uniform,
            seed: 0,
            method: DecisionMethod::GramCharlier,
            truncation_order: 10,
        };
        assert!(run_experiment(&config).is_err());
    }

    #[test]
    fn wilson_interval_basics() {
        let (lo, hi) = wilson_interval(0, 100);
        assert!(lo.abs() < 1e-15);
        assert!(hi > 0.0 && hi < 0.05);
        let (lo, hi) = wilson_interval(50, 100);
        assert!(lo < 0.5 && hi > 0.5);
    }
}
