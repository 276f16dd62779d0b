use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Counts over uniform half-open bins `[edge_k, edge_k+1)` where
/// `edge_k = anchor + (first_index + k) * bin_size`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScreenHistogram {
    pub anchor: f64,
    pub bin_size: f64,
    pub first_index: i64,
    pub counts: Vec<u64>,
}

impl ScreenHistogram {
    pub fn empty(bin_size: f64, anchor: f64) -> Self {
        Self { anchor, bin_size, first_index: 0, counts: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn left_edge(&self, k: usize) -> f64 {
        self.anchor + (self.first_index + k as i64) as f64 * self.bin_size
    }

    pub fn right_edge(&self, k: usize) -> f64 {
        self.left_edge(k + 1)
    }

    pub fn center(&self, k: usize) -> f64 {
        self.anchor + (self.first_index as f64 + k as f64 + 0.5) * self.bin_size
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.center(k)).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| c as f64).collect()
    }

    /// Adds `pad` empty bins on each side.
    pub fn padded(&self, pad: usize) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let mut counts = vec![0; pad];
        counts.extend_from_slice(&self.counts);
        counts.extend(std::iter::repeat_n(0, pad));
        Self { counts, first_index: self.first_index - pad as i64, ..*self }
    }

    fn bin_index(&self, y: f64) -> i64 {
        ((y - self.anchor) / self.bin_size).floor() as i64
    }

    /// Same bins as `self`, counting `positions`; values outside are an error.
    pub fn recount(&self, positions: &[f64]) -> Result<Self> {
        let mut counts = vec![0u64; self.len()];
        for &y in positions {
            let k = self.bin_index(y) - self.first_index;
            if k < 0 || k as usize >= counts.len() {
                return Err(Error::invalid(format!("position {y} outside histogram range")));
            }
            counts[k as usize] += 1;
        }
        Ok(Self { counts, ..*self })
    }
}

/// Histogram of `positions` with the smallest anchored bin range covering
/// them. No positions gives a histogram with no bins.
pub fn histogram(positions: &[f64], bin_size: f64, anchor: f64) -> Result<ScreenHistogram> {
    if !(bin_size > 0.0 && bin_size.is_finite()) || !anchor.is_finite() {
        return Err(Error::invalid(format!("bin size must be > 0, got {bin_size}")));
    }
    if positions.iter().any(|y| !y.is_finite()) {
        return Err(Error::invalid("non-finite position"));
    }
    let mut h = ScreenHistogram::empty(bin_size, anchor);
    if positions.is_empty() {
        return Ok(h);
    }
    let lo = positions.iter().map(|&y| h.bin_index(y)).min().unwrap();
    let hi = positions.iter().map(|&y| h.bin_index(y)).max().unwrap();
    h.first_index = lo;
    h.counts = vec![0; (hi - lo + 1) as usize];
    for &y in positions {
        let k = (h.bin_index(y) - lo) as usize;
        h.counts[k] += 1;
    }
    Ok(h)
}

/// Centred moving average over `2 * (window / 2) + 1` bins, applied `passes`
/// times. Values beyond either end count as zero, as for histogram counts.
pub fn envelope(values: &[f64], window: usize, passes: usize) -> Vec<f64> {
    let mut cur = values.to_vec();
    if window <= 1 || cur.is_empty() {
        return cur;
    }
    let half = window / 2;
    let width = (2 * half + 1) as f64;
    let n = cur.len();
    for _ in 0..passes {
        let mut prefix = vec![0.0; n + 1];
        for i in 0..n {
            prefix[i + 1] = prefix[i] + cur[i];
        }
        cur = (0..n)
            .map(|i| {
                let a = i.saturating_sub(half);
                let b = (i + half + 1).min(n);
                (prefix[b] - prefix[a]) / width
            })
            .collect();
    }
    cur
}
