//! Sample summaries, empirical CDFs and the Kolmogorov-Smirnov distance.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Empirical CDF: sorted sample values with cumulative fractions `k / n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ecdf {
    pub values: Vec<f64>,
    pub fractions: Vec<f64>,
}

impl Ecdf {
    pub fn new(samples: &[f64]) -> Result<Self> {
        if samples.is_empty() {
            return invalid("empirical CDF needs at least one sample");
        }
        let mut values = samples.to_vec();
        values.sort_by(f64::total_cmp);
        let n = values.len() as f64;
        let fractions = (1..=values.len()).map(|k| k as f64 / n).collect();
        Ok(Self { values, fractions })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub n: usize,
    pub mean: f64,
    /// Unbiased sample variance; zero for a single sample.
    pub variance: f64,
    pub std_error: f64,
    pub ecdf: Ecdf,
}

impl SummaryStats {
    /// Summarizes samples in the order given, so equal inputs give
    /// bit-identical summaries.
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        let ecdf = Ecdf::new(samples)?;
        let n = samples.len();
        let mean = samples.iter().sum::<f64>() / n as f64;
        let variance = if n > 1 {
            samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64
        } else {
            0.0
        };
        Ok(Self {
            n,
            mean,
            variance,
            std_error: (variance / n as f64).sqrt(),
            ecdf,
        })
    }
}

/// Standard normal CDF through `erfc`.
pub fn normal_cdf(x: f64, mean: f64, variance: f64) -> f64 {
    0.5 * libm::erfc(-(x - mean) / (2.0 * variance).sqrt())
}

/// Sup-distance between an empirical CDF and N(mean, variance).
pub fn ks_distance(ecdf: &Ecdf, mean: f64, variance: f64) -> Result<f64> {
    if ecdf.is_empty() {
        return invalid("empirical CDF is empty");
    }
    if !(variance > 0.0) {
        return invalid(format!("reference variance must be positive, got {variance}"));
    }
    let n = ecdf.len() as f64;
    let mut d: f64 = 0.0;
    for (k, &x) in ecdf.values.iter().enumerate() {
        let f = normal_cdf(x, mean, variance);
        d = d.max((k as f64 + 1.0) / n - f).max(f - k as f64 / n);
    }
    Ok(d.min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::derive_stream;
    use rand_distr::{Distribution, Normal};

    #[test]
    fn summary_basics() {
        let s = SummaryStats::from_samples(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(s.mean, 2.5);
        assert!((s.variance - 5.0 / 3.0).abs() < 1e-15);
        assert!((s.std_error - (5.0 / 12.0f64).sqrt()).abs() < 1e-15);
        let one = SummaryStats::from_samples(&[7.0]).unwrap();
        assert_eq!((one.n, one.variance, one.std_error), (1, 0.0, 0.0));
        assert!(SummaryStats::from_samples(&[]).is_err());
    }

    #[test]
    fn ecdf_endpoints() {
        let e = Ecdf::new(&[3.0, 1.0, 2.0, 5.0]).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0, 5.0]);
        assert_eq!(e.fractions[0], 0.25);
        assert_eq!(*e.fractions.last().unwrap(), 1.0);
        assert!(e.fractions.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn normal_cdf_accuracy() {
        // Phi(1) and Phi(-2) to 1e-12 from tables.
        assert!((normal_cdf(1.0, 0.0, 1.0) - 0.841_344_746_068_543).abs() < 1e-12);
        assert!((normal_cdf(-2.0, 0.0, 1.0) - 0.022_750_131_948_179).abs() < 1e-12);
        assert_eq!(normal_cdf(3.0, 3.0, 4.0), 0.5);
    }

    #[test]
    fn ks_cases() {
        let mut rng = derive_stream(10, 0);
        let normal = Normal::new(2.0, 1.5).unwrap();
        let xs: Vec<f64> = (0..10_000).map(|_| normal.sample(&mut rng)).collect();
        let d = ks_distance(&Ecdf::new(&xs).unwrap(), 2.0, 2.25).unwrap();
        assert!(d <= 0.02, "{d}");

        let constant = Ecdf::new(&[4.0; 50]).unwrap();
        assert!((ks_distance(&constant, 4.0, 1.0).unwrap() - 0.5).abs() < 1e-12);

        let shifted: Vec<f64> = xs.iter().map(|x| x + 15.0).collect();
        let d = ks_distance(&Ecdf::new(&shifted).unwrap(), 2.0, 2.25).unwrap();
        assert!(d > 0.999_999);

        assert!(ks_distance(&constant, 0.0, 0.0).is_err());
    }
}
