use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    /// Bin reported for the peak: the centre of its top (plateau rule).
    pub index: usize,
    /// Position of the peak, midway between the ends of its top.
    pub center: f64,
    pub height: f64,
    pub prominence: f64,
}

/// Detected peaks in position order, with the lowest value between each
/// consecutive pair and the outer bases of the first and last peak.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PeakList {
    pub peaks: Vec<Peak>,
    pub valleys: Vec<f64>,
    pub outer_bases: Option<(f64, f64)>,
}

impl PeakList {
    pub fn len(&self) -> usize {
        self.peaks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.peaks.is_empty()
    }
}

#[derive(Debug, Clone, Copy)]
struct Region {
    start: usize,
    end: usize,
    top_start: usize,
    top_end: usize,
    height: f64,
}

fn min_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Interior local maxima of `values` (at `positions`) whose prominence is at
/// least `min_prominence` times the global maximum.
///
/// Neighbouring maxima separated by a valley shallower than the threshold are
/// merged into one region first; a region of equal-height tops is reported at
/// its centre. Prominence is topographic: the height above the higher of the
/// two lowest points reached before meeting higher ground (or the edge).
pub fn detect_peaks(values: &[f64], positions: &[f64], min_prominence: f64) -> Result<PeakList> {
    let n = values.len();
    if n < 3 {
        return Err(Error::TooFewBins(n));
    }
    if positions.len() != n {
        return Err(Error::LengthMismatch { left: n, right: positions.len() });
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("non-finite value in profile"));
    }
    if !(0.0..1.0).contains(&min_prominence) {
        return Err(Error::invalid(format!("min_prominence must be in [0, 1), got {min_prominence}")));
    }
    let global_max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let threshold = min_prominence * global_max;

    // Interior plateaus strictly higher than both neighbours.
    let mut regions = Vec::new();
    let mut i = 1;
    while i < n - 1 {
        if values[i] > values[i - 1] {
            let mut j = i;
            while j + 1 < n && values[j + 1] == values[i] {
                j += 1;
            }
            if j + 1 < n && values[j + 1] < values[i] {
                regions.push(Region { start: i, end: j, top_start: i, top_end: j, height: values[i] });
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }

    // Merge across shallow valleys, shallowest first.
    loop {
        let mut best: Option<(usize, f64)> = None;
        for k in 0..regions.len().saturating_sub(1) {
            let (a, b) = (regions[k], regions[k + 1]);
            let depth = a.height.min(b.height) - min_of(&values[a.end..=b.start]);
            if depth < threshold && best.is_none_or(|(_, d)| depth < d) {
                best = Some((k, depth));
            }
        }
        let Some((k, _)) = best else { break };
        let (a, b) = (regions[k], regions.remove(k + 1));
        let (top_start, top_end) = if a.height == b.height {
            (a.top_start, b.top_end)
        } else if a.height > b.height {
            (a.top_start, a.top_end)
        } else {
            (b.top_start, b.top_end)
        };
        regions[k] = Region { start: a.start, end: b.end, top_start, top_end, height: a.height.max(b.height) };
    }

    let mut list = PeakList::default();
    let mut kept: Vec<Region> = Vec::new();
    let mut bases = Vec::new();
    for r in regions {
        let mut left = r.height;
        for &v in values[..r.start].iter().rev() {
            if v > r.height {
                break;
            }
            left = left.min(v);
        }
        let mut right = r.height;
        for &v in &values[r.end + 1..] {
            if v > r.height {
                break;
            }
            right = right.min(v);
        }
        let prominence = r.height - left.max(right);
        if prominence > 0.0 && prominence >= threshold {
            list.peaks.push(Peak {
                index: (r.top_start + r.top_end) / 2,
                center: 0.5 * (positions[r.top_start] + positions[r.top_end]),
                height: r.height,
                prominence,
            });
            kept.push(r);
            bases.push((left, right));
        }
    }
    list.valleys = kept.windows(2).map(|w| min_of(&values[w[0].top_end..=w[1].top_start])).collect();
    if let (Some(first), Some(last)) = (bases.first(), bases.last()) {
        list.outer_bases = Some((first.0, last.1));
    }
    Ok(list)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacingStats {
    pub mean: f64,
    /// Population coefficient of variation of consecutive spacings.
    pub cv: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FringeMetrics {
    pub n_peaks: usize,
    pub spacing: Option<SpacingStats>,
    pub visibility: Option<f64>,
    pub fringed: bool,
}

impl FringeMetrics {
    pub fn spacing(&self) -> Result<SpacingStats> {
        self.spacing.ok_or(Error::SpacingUndefined(self.n_peaks))
    }

    /// `peaks=<n> spacing=<mean> cv=<cv> fringed=<bool>`
    pub fn summary_line(&self) -> String {
        let (mean, cv) = match self.spacing {
            Some(s) => (s.mean.to_string(), s.cv.to_string()),
            None => ("nan".into(), "nan".into()),
        };
        format!("peaks={} spacing={mean} cv={cv} fringed={}", self.n_peaks, self.fringed)
    }
}

/// Minimum number of peaks for a pattern to count as fringed.
pub const MIN_FRINGE_PEAKS: usize = 5;

/// Spacing statistics and visibility of a peak list. A pattern is fringed when
/// it has at least five peaks and the spacing CV is below `cv_threshold`.
pub fn fringe_metrics(peaks: &PeakList, cv_threshold: f64) -> FringeMetrics {
    let n = peaks.len();
    let spacing = (n >= 2).then(|| {
        let gaps: Vec<f64> = peaks.peaks.windows(2).map(|w| w[1].center - w[0].center).collect();
        let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
        let var = gaps.iter().map(|g| (g - mean).powi(2)).sum::<f64>() / gaps.len() as f64;
        SpacingStats { mean, cv: var.sqrt() / mean }
    });
    let visibility = (n >= 1).then(|| {
        let max = peaks.peaks.iter().map(|p| p.height).fold(f64::NEG_INFINITY, f64::max);
        let min = if peaks.valleys.is_empty() {
            let (l, r) = peaks.outer_bases.unwrap_or((0.0, 0.0));
            l.max(r)
        } else {
            min_of(&peaks.valleys)
        };
        if max + min > 0.0 {
            (max - min) / (max + min)
        } else {
            0.0
        }
    });
    let fringed = n >= MIN_FRINGE_PEAKS && spacing.is_some_and(|s| s.cv < cv_threshold);
    FringeMetrics { n_peaks: n, spacing, visibility, fringed }
}

/// Mean-removed autocorrelation normalised so that lag 0 is 1. A constant
/// series gives all zeros.
pub fn autocorrelation(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    if n == 0 {
        return Vec::new();
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let d: Vec<f64> = values.iter().map(|v| v - mean).collect();
    let c0: f64 = d.iter().map(|x| x * x).sum();
    if c0 == 0.0 {
        return vec![0.0; n];
    }
    (0..n)
        .map(|lag| d[..n - lag].iter().zip(&d[lag..]).map(|(a, b)| a * b).sum::<f64>() / c0)
        .collect()
}

/// Largest autocorrelation value beyond its first non-positive lag; zero when
/// the autocorrelation never drops to zero.
pub fn secondary_maximum(acf: &[f64]) -> f64 {
    match acf.iter().position(|&r| r <= 0.0) {
        Some(k) => acf[k..].iter().copied().fold(0.0, f64::max),
        None => 0.0,
    }
}
