use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Population moments of a value set. Skewness and kurtosis are `None` when
/// the variance is zero; variance is `None` for a single value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentSignature {
    pub mean: f64,
    pub variance: Option<f64>,
    pub skewness: Option<f64>,
    pub kurtosis: Option<f64>,
}

impl MomentSignature {
    pub fn is_degenerate(&self) -> bool {
        self.skewness.is_none()
    }

    fn components(&self) -> [Option<f64>; 4] {
        [Some(self.mean), self.variance, self.skewness, self.kurtosis]
    }
}

pub fn moment_signature(values: &[f64]) -> Result<MomentSignature> {
    if values.is_empty() {
        return Err(Error::invalid("moment signature of an empty set"));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("non-finite value"));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return Ok(MomentSignature { mean, variance: None, skewness: None, kurtosis: None });
    }
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for v in values {
        let d = v - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    let (skewness, kurtosis) = if m2 > 0.0 {
        (Some(m3 / m2.powf(1.5)), Some(m4 / (m2 * m2)))
    } else {
        (None, None)
    };
    Ok(MomentSignature { mean, variance: Some(m2), skewness, kurtosis })
}

/// Euclidean distance over the moments defined in both signatures.
pub fn signature_distance(a: &MomentSignature, b: &MomentSignature) -> f64 {
    a.components()
        .iter()
        .zip(b.components())
        .filter_map(|(x, y)| Some((x.as_ref()? - y?).powi(2)))
        .sum::<f64>()
        .sqrt()
}
