use serde::{Deserialize, Serialize};

use super::grid::{Grid, RealField};
use crate::error::{Error, Result};

/// Barrier material: a finite potential height or a Dirichlet-masked hard wall.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Barrier {
    Finite(f64),
    HardWall,
}

impl std::fmt::Display for Barrier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Barrier::Finite(v) => write!(f, "{v}"),
            Barrier::HardWall => f.write_str("hard"),
        }
    }
}

impl std::str::FromStr for Barrier {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "hard" | "hard_wall" | "mask" => Ok(Barrier::HardWall),
            other => other
                .parse::<f64>()
                .map(Barrier::Finite)
                .map_err(|_| format!("expected a number or `hard`, got `{other}`")),
        }
    }
}

/// Vertical barrier at `barrier_x` pierced by two slits centered at
/// `slit1_center` and `slit2_center` along `y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlitGeometry {
    pub barrier_x: f64,
    pub barrier_thickness: f64,
    pub slit1_center: f64,
    pub slit2_center: f64,
    pub slit_width: f64,
    pub barrier: Barrier,
}

impl SlitGeometry {
    /// Default layout for a domain of side `length`: barrier at 0.75 L,
    /// 0.02 L thick, 0.04 L slits separated by 0.16 L about the midline.
    pub fn default_for(length: f64) -> Self {
        let mid = 0.5 * length;
        let sep = 0.16 * length;
        Self {
            barrier_x: 0.75 * length,
            barrier_thickness: 0.02 * length,
            slit1_center: mid - 0.5 * sep,
            slit2_center: mid + 0.5 * sep,
            slit_width: 0.04 * length,
            barrier: Barrier::HardWall,
        }
    }

    pub fn validate(&self, length: f64) -> Result<()> {
        let vals = [
            self.barrier_x,
            self.barrier_thickness,
            self.slit1_center,
            self.slit2_center,
            self.slit_width,
        ];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("slit geometry values must be finite"));
        }
        if self.barrier_thickness <= 0.0 || self.slit_width <= 0.0 {
            return Err(Error::invalid("barrier thickness and slit width must be > 0"));
        }
        let (lo, hi) = self.barrier_span();
        if !(lo > 0.0 && hi < length) {
            return Err(Error::invalid(format!(
                "barrier [{lo}, {hi}] must lie strictly inside (0, {length})"
            )));
        }
        if (self.slit1_center - self.slit2_center).abs() <= self.slit_width {
            return Err(Error::invalid(format!(
                "slit openings overlap: |{} - {}| <= {}",
                self.slit1_center, self.slit2_center, self.slit_width
            )));
        }
        for c in [self.slit1_center, self.slit2_center] {
            let half = 0.5 * self.slit_width;
            if !(c - half > 0.0 && c + half < length) {
                return Err(Error::invalid(format!("slit centered at {c} leaves the domain")));
            }
        }
        if let Barrier::Finite(v) = self.barrier {
            if !v.is_finite() {
                return Err(Error::invalid("barrier potential must be finite"));
            }
        }
        Ok(())
    }

    /// `x` extent of the barrier.
    pub fn barrier_span(&self) -> (f64, f64) {
        let half = 0.5 * self.barrier_thickness;
        (self.barrier_x - half, self.barrier_x + half)
    }

    /// `y` of the axis halfway between the slits.
    pub fn midline(&self) -> f64 {
        0.5 * (self.slit1_center + self.slit2_center)
    }

    /// Whether `(x, y)` lies in barrier material (inside the barrier
    /// rectangle and outside both openings). `eps` widens all edges so that
    /// grid points sitting on an edge are classified symmetrically.
    pub fn blocks(&self, x: f64, y: f64, eps: f64) -> bool {
        let in_barrier = (x - self.barrier_x).abs() <= 0.5 * self.barrier_thickness + eps;
        if !in_barrier {
            return false;
        }
        let half = 0.5 * self.slit_width + eps;
        let in_opening =
            (y - self.slit1_center).abs() <= half || (y - self.slit2_center).abs() <= half;
        !in_opening
    }
}

/// Potential term of the Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub enum Potential {
    /// Real potential energy at every grid point.
    Field(RealField),
    /// Points where `psi` is pinned to zero.
    Mask { grid: Grid, blocked: Vec<bool> },
}

impl Potential {
    /// `V = 0` everywhere.
    pub fn free(grid: Grid) -> Self {
        Potential::Field(RealField::zeros(grid))
    }

    pub fn grid(&self) -> &Grid {
        match self {
            Potential::Field(f) => f.grid(),
            Potential::Mask { grid, .. } => grid,
        }
    }

    /// Potential energy at flat index `i` (zero on masked points).
    pub fn energy(&self, i: usize) -> f64 {
        match self {
            Potential::Field(f) => f.values()[i],
            Potential::Mask { .. } => 0.0,
        }
    }

    pub fn is_blocked(&self, i: usize) -> bool {
        match self {
            Potential::Field(_) => false,
            Potential::Mask { blocked, .. } => blocked[i],
        }
    }

    pub fn blocked_count(&self) -> usize {
        match self {
            Potential::Field(_) => 0,
            Potential::Mask { blocked, .. } => blocked.iter().filter(|b| **b).count(),
        }
    }
}

/// Rasterizes the double slit onto `grid`.
pub fn build_potential(grid: &Grid, s: &SlitGeometry) -> Result<Potential> {
    s.validate(grid.length())?;
    let eps = 1e-9 * grid.length();
    let mut blocked = vec![false; grid.len()];
    let mut any = false;
    for ix in 0..grid.n_x() {
        let x = grid.x(ix);
        for iy in 0..grid.n_y() {
            if s.blocks(x, grid.y(iy), eps) {
                blocked[grid.index(ix, iy)] = true;
                any = true;
            }
        }
    }
    if !any {
        return Err(Error::UnderResolved(format!(
            "barrier of thickness {} covers no grid column (dx = {})",
            s.barrier_thickness,
            grid.dx()
        )));
    }
    Ok(match s.barrier {
        Barrier::HardWall => Potential::Mask {
            grid: *grid,
            blocked,
        },
        Barrier::Finite(v0) => {
            let values = blocked.iter().map(|&b| if b { v0 } else { 0.0 }).collect();
            Potential::Field(RealField::from_values(*grid, values)?)
        }
    })
}
