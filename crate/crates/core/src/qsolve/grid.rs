use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform grid over the square `[0, length] x [0, length]`.
///
/// Point `(ix, iy)` sits at `(ix * dx, iy * dy)` with `dx = length / (n_x - 1)`,
/// so the first and last row and column lie on the domain edge. Arrays are
/// stored row-major with shape `(n_x, n_y)`: the flat index is `ix * n_y + iy`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    n_x: usize,
    n_y: usize,
    length: f64,
}

impl Grid {
    pub const MIN_POINTS: usize = 8;

    pub fn new(n_x: usize, n_y: usize, length: f64) -> Result<Self> {
        if n_x < Self::MIN_POINTS || n_y < Self::MIN_POINTS {
            return Err(Error::invalid(format!(
                "grid needs at least {m}x{m} points, got {n_x}x{n_y}",
                m = Self::MIN_POINTS
            )));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::invalid(format!("domain length must be > 0, got {length}")));
        }
        Ok(Self { n_x, n_y, length })
    }

    pub fn square(n: usize, length: f64) -> Result<Self> {
        Self::new(n, n, length)
    }

    pub fn n_x(&self) -> usize {
        self.n_x
    }

    pub fn n_y(&self) -> usize {
        self.n_y
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn len(&self) -> usize {
        self.n_x * self.n_y
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dx(&self) -> f64 {
        self.length / (self.n_x - 1) as f64
    }

    pub fn dy(&self) -> f64 {
        self.length / (self.n_y - 1) as f64
    }

    pub fn x(&self, ix: usize) -> f64 {
        ix as f64 * self.dx()
    }

    pub fn y(&self, iy: usize) -> f64 {
        iy as f64 * self.dy()
    }

    #[inline]
    pub fn index(&self, ix: usize, iy: usize) -> usize {
        ix * self.n_y + iy
    }

    /// Hard-wall points: first/last row and column.
    pub fn is_boundary(&self, ix: usize, iy: usize) -> bool {
        ix == 0 || iy == 0 || ix + 1 == self.n_x || iy + 1 == self.n_y
    }

    pub fn boundary_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_x)
            .flat_map(move |ix| (0..self.n_y).map(move |iy| (ix, iy)))
            .filter(|&(ix, iy)| self.is_boundary(ix, iy))
            .map(|(ix, iy)| self.index(ix, iy))
    }

    /// Column index nearest to `x`, clamped into the grid.
    pub fn nearest_ix(&self, x: f64) -> usize {
        let i = (x / self.dx()).round();
        i.clamp(0.0, (self.n_x - 1) as f64) as usize
    }

    /// Area element used by the discrete L2 norm.
    pub fn cell_area(&self) -> f64 {
        self.dx() * self.dy()
    }

    pub(crate) fn check_same(&self, other: &Grid) -> Result<()> {
        if self != other {
            return Err(Error::invalid(format!(
                "grid mismatch: {}x{} (L={}) vs {}x{} (L={})",
                self.n_x, self.n_y, self.length, other.n_x, other.n_y, other.length
            )));
        }
        Ok(())
    }
}

/// Complex wave function sampled on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField2D {
    grid: Grid,
    values: Vec<Complex64>,
}

impl ComplexField2D {
    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn from_values(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                left: values.len(),
                right: grid.len(),
            });
        }
        Ok(Self { grid, values })
    }

    /// Samples `f(x, y)` at every grid point.
    pub fn from_fn(grid: Grid, mut f: impl FnMut(f64, f64) -> Complex64) -> Self {
        let mut values = Vec::with_capacity(grid.len());
        for ix in 0..grid.n_x() {
            let x = grid.x(ix);
            for iy in 0..grid.n_y() {
                values.push(f(x, grid.y(iy)));
            }
        }
        Self { grid, values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn get(&self, ix: usize, iy: usize) -> Complex64 {
        self.values[self.grid.index(ix, iy)]
    }

    /// Discrete L2 norm `sqrt(sum |psi|^2 dx dy)`.
    pub fn norm(&self) -> f64 {
        let sum: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        (sum * self.grid.cell_area()).sqrt()
    }

    /// Scales to unit discrete norm. Fails on an all-zero field.
    pub fn normalize(&mut self) -> Result<()> {
        let n = self.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::Degenerate("cannot normalize a zero field".into()));
        }
        let inv = 1.0 / n;
        self.values.iter_mut().for_each(|v| *v *= inv);
        Ok(())
    }

    pub fn zero_boundary(&mut self) {
        let grid = self.grid;
        for i in grid.boundary_indices() {
            self.values[i] = Complex64::new(0.0, 0.0);
        }
    }

    pub fn max_boundary_abs(&self) -> f64 {
        self.grid
            .boundary_indices()
            .map(|i| self.values[i].norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    pub fn modulus(&self) -> RealField {
        RealField {
            grid: self.grid,
            values: self.values.iter().map(|v| v.norm()).collect(),
        }
    }

    /// Reflection `y -> length - y` (index `iy -> n_y - 1 - iy`).
    pub fn mirror_y(&self) -> Self {
        let g = self.grid;
        let mut out = Self::zeros(g);
        for ix in 0..g.n_x() {
            for iy in 0..g.n_y() {
                out.values[g.index(ix, iy)] = self.values[g.index(ix, g.n_y() - 1 - iy)];
            }
        }
        out
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: Complex64, other: &Self, b: Complex64) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Ok(Self {
            grid: self.grid,
            values,
        })
    }
}

/// Real scalar field on a [`Grid`]: potentials and modulus frames.
#[derive(Debug, Clone, PartialEq)]
pub struct RealField {
    grid: Grid,
    values: Vec<f64>,
}

impl RealField {
    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.len()],
        }
    }

    pub fn from_values(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                left: values.len(),
                right: grid.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn get(&self, ix: usize, iy: usize) -> f64 {
        self.values[self.grid.index(ix, iy)]
    }

    /// Column at fixed `ix`, running over `y`.
    pub fn column(&self, ix: usize) -> &[f64] {
        let start = self.grid.index(ix, 0);
        &self.values[start..start + self.grid.n_y()]
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}
