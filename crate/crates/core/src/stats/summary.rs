use crate::{Error, Result};

/// Population moments and order statistics of a sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistributionSummary {
    pub count: usize,
    pub mean: f64,
    pub median: f64,
    /// Population variance `m2`.
    pub variance: f64,
    /// Moment coefficient `g1 = m3 / m2^{3/2}`; zero when `m2 == 0`.
    pub skewness: f64,
    pub min: f64,
    pub q1: f64,
    pub q3: f64,
    pub max: f64,
}

/// Linear interpolation between closest ranks on sorted data. The median
/// is the midpoint of the two central values for even counts.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let position = q * (sorted.len() - 1) as f64;
    let lower = position.floor() as usize;
    let upper = position.ceil() as usize;
    let weight = position - lower as f64;
    if lower == upper {
        sorted[lower]
    } else {
        sorted[lower] + (sorted[upper] - sorted[lower]) * weight
    }
}

pub fn summarize(values: &[f64]) -> Result<DistributionSummary> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidConfig("summary input contains non-finite values".into()));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);

    let n = values.len() as f64;
    let (min, max) = (sorted[0], sorted[sorted.len() - 1]);
    let (mean, m2, skewness) = if min == max {
        (min, 0.0, 0.0)
    } else {
        // sum the sorted copy so the result does not depend on input order
        let mean = sorted.iter().sum::<f64>() / n;
        let (m2, m3) = sorted.iter().fold((0.0, 0.0), |(m2, m3), v| {
            let d = v - mean;
            (m2 + d * d, m3 + d * d * d)
        });
        let (m2, m3) = (m2 / n, m3 / n);
        (mean, m2, m3 / m2.powf(1.5))
    };
    Ok(DistributionSummary {
        count: values.len(),
        mean,
        median: quantile(&sorted, 0.5),
        variance: m2,
        skewness,
        min,
        q1: quantile(&sorted, 0.25),
        q3: quantile(&sorted, 0.75),
        max,
    })
}
