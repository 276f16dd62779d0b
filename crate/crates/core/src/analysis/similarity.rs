use crate::error::{Error, Result};

/// A 1D distribution sampled at ordered positions.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution1D {
    pub positions: Vec<f64>,
    pub values: Vec<f64>,
}

impl Distribution1D {
    pub fn new(positions: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if positions.len() != values.len() {
            return Err(Error::LengthMismatch { left: positions.len(), right: values.len() });
        }
        if positions.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(Error::invalid("distribution contains non-finite values"));
        }
        Ok(Self { positions, values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Overlap percentage of two distributions after taking absolute values:
/// `100 * sum sqrt(|p||q|) / (0.5 (sum |p| + sum |q|))`.
pub fn similarity(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch { left: p.len(), right: q.len() });
    }
    if p.iter().chain(q).any(|v| !v.is_finite()) {
        return Err(Error::invalid("distribution contains non-finite values"));
    }
    let mut overlap = 0.0;
    let mut sp = 0.0;
    let mut sq = 0.0;
    for (a, b) in p.iter().zip(q) {
        let (a, b) = (a.abs(), b.abs());
        overlap += (a * b).sqrt();
        sp += a;
        sq += b;
    }
    let denom = 0.5 * (sp + sq);
    if denom == 0.0 {
        return Err(Error::Degenerate("both distributions are all zero".into()));
    }
    Ok((100.0 * overlap / denom).min(100.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_values() {
        assert!((similarity(&[0.3, 0.7], &[0.3, 0.7]).unwrap() - 100.0).abs() < 1e-12);
        assert_eq!(similarity(&[1.0, 0.0], &[0.0, 2.0]).unwrap(), 0.0);
        let s = similarity(&[0.5, 0.5], &[1.0, 0.0]).unwrap();
        assert!((s - 100.0 * 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn absolute_values_first() {
        assert!((similarity(&[-1.0, 2.0], &[1.0, -2.0]).unwrap() - 100.0).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        assert!(matches!(similarity(&[1.0], &[1.0, 2.0]), Err(Error::LengthMismatch { .. })));
        assert!(matches!(similarity(&[0.0], &[0.0]), Err(Error::Degenerate(_))));
        assert!(Distribution1D::new(vec![0.0], vec![f64::NAN]).is_err());
    }
}
