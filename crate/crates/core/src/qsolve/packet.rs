use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{ComplexField2D, Grid};
use crate::error::{Error, Result};

/// Amplitude below which a grid point is considered empty when checking
/// that a packet is resolved.
const RESOLUTION_FLOOR: f64 = 1e-6;
const MIN_RESOLVED_POINTS: usize = 3;

/// Initial Gaussian packet with a plane-wave phase along `x`.
///
/// The widths enter the exponent as `(x - x0)^2 / (2 sigma_x)`, so `sigma_x`
/// and `sigma_y` carry units of length squared. The probability density
/// `|psi|^2` then has standard deviation `sqrt(sigma / 2)` along each axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavePacketParams {
    pub x0: f64,
    pub y0: f64,
    pub sigma_x: f64,
    pub sigma_y: f64,
    pub k: f64,
}

impl WavePacketParams {
    pub fn validate(&self, grid: &Grid) -> Result<()> {
        let l = grid.length();
        for (name, v) in [
            ("x0", self.x0),
            ("y0", self.y0),
            ("sigma_x", self.sigma_x),
            ("sigma_y", self.sigma_y),
            ("k", self.k),
        ] {
            if !v.is_finite() {
                return Err(Error::invalid(format!("{name} must be finite, got {v}")));
            }
        }
        if self.sigma_x <= 0.0 || self.sigma_y <= 0.0 {
            return Err(Error::invalid(format!(
                "packet widths must be > 0, got sigma_x={} sigma_y={}",
                self.sigma_x, self.sigma_y
            )));
        }
        if !(self.x0 > 0.0 && self.x0 < l && self.y0 > 0.0 && self.y0 < l) {
            return Err(Error::invalid(format!(
                "packet center ({}, {}) outside the open domain (0, {l})",
                self.x0, self.y0
            )));
        }
        Ok(())
    }

    /// Unnormalized amplitude at `(x, y)`.
    pub fn amplitude(&self, x: f64, y: f64) -> Complex64 {
        let dx = x - self.x0;
        let dy = y - self.y0;
        let envelope = (-(dx * dx) / (2.0 * self.sigma_x) - (dy * dy) / (2.0 * self.sigma_y)).exp();
        Complex64::from_polar(envelope, self.k * dx)
    }
}

/// Samples the packet, zeroes the hard-wall frame and normalizes to unit norm.
pub fn init_packet(grid: &Grid, p: &WavePacketParams) -> Result<ComplexField2D> {
    p.validate(grid)?;
    let mut field = ComplexField2D::from_fn(*grid, |x, y| p.amplitude(x, y));
    field.zero_boundary();
    let resolved = field
        .values()
        .iter()
        .filter(|v| v.norm() > RESOLUTION_FLOOR)
        .count();
    if resolved < MIN_RESOLVED_POINTS {
        return Err(Error::UnderResolved(format!(
            "only {resolved} grid point(s) above {RESOLUTION_FLOOR:e}; widen the packet or refine the grid"
        )));
    }
    field.normalize()?;
    Ok(field)
}
