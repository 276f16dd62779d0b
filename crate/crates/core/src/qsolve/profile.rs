use serde::{Deserialize, Serialize};

use super::grid::RealField;
use super::potential::SlitGeometry;
use super::solver::FieldSeries;
use crate::error::{Error, Result};

/// Screen intensity `|psi|^2` along one grid column, normalized to unit sum.
#[derive(Debug, Clone, PartialEq)]
pub struct ScreenProfile {
    pub x: f64,
    pub y: Vec<f64>,
    pub probability: Vec<f64>,
}

/// Extracts the profile at the grid column nearest `screen_x` from a modulus
/// frame. The column must lie beyond the barrier.
pub fn screen_profile(frame: &RealField, geometry: &SlitGeometry, screen_x: f64) -> Result<ScreenProfile> {
    let grid = frame.grid();
    let (_, barrier_end) = geometry.barrier_span();
    if !(screen_x > barrier_end && screen_x <= grid.length()) {
        return Err(Error::invalid(format!(
            "screen at x={screen_x} must lie beyond the barrier (x > {barrier_end}) and inside the domain"
        )));
    }
    let ix = grid.nearest_ix(screen_x);
    if grid.x(ix) <= barrier_end {
        return Err(Error::invalid(format!(
            "nearest grid column to x={screen_x} is inside the barrier"
        )));
    }
    let intensity: Vec<f64> = frame.column(ix).iter().map(|m| m * m).collect();
    let total: f64 = intensity.iter().sum();
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::EmptyProfile(format!("no probability on column x={}", grid.x(ix))));
    }
    Ok(ScreenProfile {
        x: grid.x(ix),
        y: (0..grid.n_y()).map(|iy| grid.y(iy)).collect(),
        probability: intensity.into_iter().map(|p| p / total).collect(),
    })
}

/// Fraction of `sum |psi|^2` lying beyond the barrier in a modulus frame.
pub fn transmitted_fraction(frame: &RealField, geometry: &SlitGeometry) -> f64 {
    let grid = frame.grid();
    let (_, barrier_end) = geometry.barrier_span();
    let mut total = 0.0;
    let mut beyond = 0.0;
    for ix in 0..grid.n_x() {
        let col: f64 = frame.column(ix).iter().map(|m| m * m).sum();
        total += col;
        if grid.x(ix) > barrier_end {
            beyond += col;
        }
    }
    if total > 0.0 {
        beyond / total
    } else {
        0.0
    }
}

/// Frame indices (into `FieldSeries::frames`) for the three stages of
/// fringe development: just through the slits, first overlap, fully developed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageFrames {
    pub t1: usize,
    pub t2: usize,
    pub t3: usize,
}

/// T1 is the first frame whose transmitted fraction reaches half of the
/// largest transmitted fraction in the run, T3 the final frame and T2 the
/// frame halfway between them.
pub fn select_stage_frames(series: &FieldSeries, geometry: &SlitGeometry) -> StageFrames {
    let fractions: Vec<f64> = series
        .frames
        .iter()
        .map(|f| transmitted_fraction(&f.modulus, geometry))
        .collect();
    let t3 = series.frames.len().saturating_sub(1);
    let peak = fractions.iter().copied().fold(0.0, f64::max);
    let t1 = if peak > 0.0 {
        fractions.iter().position(|&f| f >= 0.5 * peak).unwrap_or(t3)
    } else {
        t3
    };
    StageFrames {
        t1,
        t2: (t1 + t3) / 2,
        t3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsolve::grid::Grid;

    fn geometry() -> SlitGeometry {
        SlitGeometry::default_for(1.0)
    }

    #[test]
    fn zero_frame_is_empty_profile() {
        let g = Grid::square(32, 1.0).unwrap();
        let r = screen_profile(&RealField::zeros(g), &geometry(), 0.9);
        assert!(matches!(r, Err(Error::EmptyProfile(_))));
    }

    #[test]
    fn screen_before_barrier_rejected() {
        let g = Grid::square(32, 1.0).unwrap();
        for x in [0.2, 0.75] {
            let r = screen_profile(&RealField::zeros(g), &geometry(), x);
            assert!(matches!(r, Err(Error::InvalidParameter(_))));
        }
    }

    #[test]
    fn symmetric_frame_gives_symmetric_profile() {
        let g = Grid::square(41, 1.0).unwrap();
        let mut vals = vec![0.0; g.len()];
        for ix in 0..g.n_x() {
            for iy in 0..g.n_y() {
                let y = g.y(iy) - 0.5;
                vals[g.index(ix, iy)] = (-(y * y) / 0.01).exp() * (1.0 + (40.0 * y).cos());
            }
        }
        let frame = RealField::from_values(g, vals).unwrap();
        let p = screen_profile(&frame, &geometry(), 0.9).unwrap();
        let n = p.probability.len();
        for i in 0..n {
            assert!((p.probability[i] - p.probability[n - 1 - i]).abs() < 1e-15);
        }
        assert!((p.probability.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
