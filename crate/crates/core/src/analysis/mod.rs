//! Analysis primitives: distribution similarity, histograms and fringe
//! detection, moment signatures, and proximity-graph closeness centrality.

mod graph;
mod histogram;
pub mod io;
mod moments;
mod peaks;
mod similarity;

pub use graph::{closeness_centrality, proximity_graph, sweep_radius, Centrality, PathMetric, ProximityGraph, RadiusStat, RadiusSweep};
pub use histogram::{envelope, histogram, ScreenHistogram};
pub use moments::{moment_signature, signature_distance, MomentSignature};
pub use peaks::{
    autocorrelation, detect_peaks, fringe_metrics, secondary_maximum, FringeMetrics, Peak, PeakList, SpacingStats,
    MIN_FRINGE_PEAKS,
};
pub use similarity::{similarity, Distribution1D};

/// Peaks of a histogram's smoothed envelope.
pub fn histogram_peaks(h: &ScreenHistogram, window: usize, passes: usize, min_prominence: f64) -> crate::Result<PeakList> {
    detect_peaks(&envelope(&h.values(), window, passes), &h.centers(), min_prominence)
}
