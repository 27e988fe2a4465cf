//! Sample ingestion, circular spacings, and the test statistic.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::{Error, Method, Result};

/// Angle unit at the I/O boundary; everything internal is radians.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleUnit {
    Degrees,
    Radians,
}

/// Validated circular observations: radians in [0, 2π), nondecreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleSample {
    angles: Vec<f64>,
}

impl AngleSample {
    /// Convert to radians, reduce modulo 2π, and sort. Ties are kept.
    pub fn ingest(raw: &[f64], unit: AngleUnit) -> Result<Self> {
        if raw.len() < 2 {
            return Err(Error::TooFewAngles { got: raw.len() });
        }
        let mut angles = Vec::with_capacity(raw.len());
        for (index, &value) in raw.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteAngle { index });
            }
            let rad = match unit {
                AngleUnit::Degrees => value.to_radians(),
                AngleUnit::Radians => value,
            };
            angles.push(rad.rem_euclid(TAU));
        }
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(AngleSample { angles })
    }

    pub fn n(&self) -> usize {
        self.angles.len()
    }

    /// Order statistics in radians.
    pub fn angles(&self) -> &[f64] {
        &self.angles
    }
}

/// The n arc gaps between consecutive order statistics, wraparound included.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacingVector {
    spacings: Vec<f64>,
}

impl SpacingVector {
    pub fn values(&self) -> &[f64] {
        &self.spacings
    }
}

pub fn spacings(sample: &AngleSample) -> SpacingVector {
    let a = sample.angles();
    let n = a.len();
    let mut spacings = Vec::with_capacity(n);
    for i in 0..n - 1 {
        spacings.push(a[i + 1] - a[i]);
    }
    spacings.push(a[0] - a[n - 1] + TAU);
    SpacingVector { spacings }
}

/// Rao's spacing statistic U_n = ½ Σ |T_i − 2π/n|, in radians.
///
/// Zero on a perfect grid, approaching 2π(1 − 1/n) as all points coincide.
pub fn statistic(sample: &AngleSample) -> f64 {
    let n = sample.n() as f64;
    let expected = TAU / n;
    let u = 0.5
        * spacings(sample)
            .values()
            .iter()
            .map(|t| (t - expected).abs())
            .sum::<f64>();
    u.clamp(0.0, TAU * (1.0 - 1.0 / n))
}

/// Outcome of a uniformity test run.
#[derive(Debug, Clone, Serialize)]
pub struct TestResult {
    pub statistic_rad: f64,
    pub statistic_deg: f64,
    pub n: usize,
    pub p_value: f64,
    pub method: Method,
    pub truncation_order: usize,
}

/// Parse the one-angle-per-line text format. Blank lines and `#` comments
/// are skipped; the numbers are returned unconverted.
pub fn parse_angle_file(text: &str) -> std::result::Result<Vec<f64>, String> {
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match trimmed.parse::<f64>() {
            Ok(v) => values.push(v),
            Err(_) => return Err(format!("line {}: not a number: {trimmed:?}", lineno + 1)),
        }
    }
    Ok(values)
}

/// Statistic support upper bound 2π(1 − 1/n).
pub fn support_max(n: usize) -> f64 {
    TAU * (1.0 - 1.0 / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn ingest_sorts_and_reduces() {
        let s = AngleSample::ingest(&[370.0, -10.0], AngleUnit::Degrees).unwrap();
        assert_abs_diff_eq!(s.angles()[0], 10f64.to_radians(), epsilon = 1e-12);
        assert_abs_diff_eq!(s.angles()[1], 350f64.to_radians(), epsilon = 1e-12);
    }

    #[test]
    fn ingest_radians_passthrough() {
        let s = AngleSample::ingest(&[0.0, PI], AngleUnit::Radians).unwrap();
        assert_eq!(s.n(), 2);
        assert_eq!(s.angles(), &[0.0, PI]);
    }

    #[test]
    fn ingest_keeps_ties() {
        let s = AngleSample::ingest(&[10.0, 10.0, 5.0], AngleUnit::Degrees).unwrap();
        assert_eq!(s.n(), 3);
        assert_eq!(s.angles()[1], s.angles()[2]);
    }

    #[test]
    fn ingest_rejects_short_input() {
        assert!(matches!(
            AngleSample::ingest(&[1.0], AngleUnit::Radians),
            Err(Error::TooFewAngles { got: 1 })
        ));
    }

    #[test]
    fn ingest_rejects_non_finite() {
        let err = AngleSample::ingest(&[0.0, f64::NAN, 1.0], AngleUnit::Radians).unwrap_err();
        assert!(matches!(err, Error::NonFiniteAngle { index: 1 }));
    }

    #[test]
    fn spacings_wraparound() {
        let s = AngleSample::ingest(&[0.0, 350.0], AngleUnit::Degrees).unwrap();
        let t = spacings(&s);
        assert_abs_diff_eq!(t.values()[0], 350f64.to_radians(), epsilon = 1e-12);
        assert_abs_diff_eq!(t.values()[1], 10f64.to_radians(), epsilon = 1e-12);
    }

    #[test]
    fn spacings_sum_to_tau() {
        let s = AngleSample::ingest(&[3.0, 77.0, 190.0, 201.0, 355.5], AngleUnit::Degrees).unwrap();
        let total: f64 = spacings(&s).values().iter().sum();
        assert_abs_diff_eq!(total, TAU, epsilon = 1e-12);
    }

    #[test]
    fn statistic_zero_on_grid() {
        let raw: Vec<f64> = (0..8).map(|i| i as f64 * 45.0).collect();
        let s = AngleSample::ingest(&raw, AngleUnit::Degrees).unwrap();
        assert_abs_diff_eq!(statistic(&s), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn quarter_grid_spacings() {
        let s = AngleSample::ingest(&[0.0, 90.0, 180.0, 270.0], AngleUnit::Degrees).unwrap();
        for t in spacings(&s).values() {
            assert_abs_diff_eq!(*t, PI / 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn epileptic_statistic() {
        let raw = [
            5.0, 10.0, 10.0, 12.0, 17.0, 85.0, 90.0, 99.0, 100.0, 110.0, 153.0, 233.0, 235.0,
            296.0, 331.0,
        ];
        let s = AngleSample::ingest(&raw, AngleUnit::Degrees).unwrap();
        assert_abs_diff_eq!(statistic(&s), 3.089233, epsilon = 1e-6);
        assert_abs_diff_eq!(statistic(&s).to_degrees(), 177.0, epsilon = 1e-4);
    }

    #[test]
    fn pigeon_statistic() {
        let raw = [
            20.0, 135.0, 145.0, 165.0, 170.0, 200.0, 300.0, 325.0, 335.0, 350.0, 350.0, 350.0,
            355.0,
        ];
        let s = AngleSample::ingest(&raw, AngleUnit::Degrees).unwrap();
        assert_abs_diff_eq!(statistic(&s), 2.826091, epsilon = 1e-6);
    }

    #[test]
    fn kamiokande_statistics() {
        let twelve = [
            30.0, 36.0, 60.0, 64.0, 76.0, 98.0, 136.0, 140.0, 182.0, 216.0, 244.0, 270.0,
        ];
        let eleven = [
            30.0, 36.0, 60.0, 64.0, 76.0, 98.0, 140.0, 182.0, 216.0, 244.0, 270.0,
        ];
        let s12 = AngleSample::ingest(&twelve, AngleUnit::Degrees).unwrap();
        let s11 = AngleSample::ingest(&eleven, AngleUnit::Degrees).unwrap();
        assert_abs_diff_eq!(statistic(&s12), 1.989675, epsilon = 1e-6);
        assert_abs_diff_eq!(statistic(&s11), 1.869089, epsilon = 1e-6);
    }

    #[test]
    fn parse_angle_file_skips_comments() {
        let text = "# header\n5\n\n  10.5 \n# mid\n350\n";
        assert_eq!(parse_angle_file(text).unwrap(), vec![5.0, 10.5, 350.0]);
    }

    #[test]
    fn parse_angle_file_reports_bad_line() {
        assert!(parse_angle_file("1\nxyz\n").is_err());
    }
}
