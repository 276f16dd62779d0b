use num_complex::Complex64;

use super::grid::{ComplexField2D, Grid};
use super::packet::{init_packet, WavePacketParams};
use super::potential::{Barrier, Potential, SlitGeometry};
use super::solver::SolverOptions;
use crate::error::{Error, Result};
use crate::keyvalue::{parse_num, unknown, KeyValueConfig};

/// Every parameter of one double-slit simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub n_x: usize,
    pub n_y: usize,
    pub length: f64,
    pub dt: f64,
    pub n_steps: usize,
    pub record_stride: usize,
    pub x0: f64,
    /// Explicit `y0`; when `None` it is `y0_ratio * x0`.
    pub y0: Option<f64>,
    pub y0_ratio: f64,
    pub sigma_x: f64,
    pub sigma_y: f64,
    pub k: f64,
    pub geometry: SlitGeometry,
    pub screen_x: f64,
    pub solver: SolverOptions,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            n_x: 256,
            n_y: 256,
            length: 1.0,
            dt: 1e-4,
            n_steps: 100,
            record_stride: 10,
            x0: 0.5,
            y0: None,
            y0_ratio: 1.0,
            sigma_x: 0.002,
            sigma_y: 0.002,
            k: 60.0,
            geometry: SlitGeometry::default_for(1.0),
            screen_x: 0.9,
            solver: SolverOptions::default(),
        }
    }
}

impl SimulationConfig {
    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.n_x, self.n_y, self.length)
    }

    pub fn packet(&self) -> WavePacketParams {
        WavePacketParams {
            x0: self.x0,
            y0: self.y0.unwrap_or(self.y0_ratio * self.x0),
            sigma_x: self.sigma_x,
            sigma_y: self.sigma_y,
            k: self.k,
        }
    }

    /// The initial packet with the amplitude inside the barrier removed and
    /// the rest renormalized; blocked points cannot evolve.
    pub fn initial_field(&self, potential: &Potential) -> Result<ComplexField2D> {
        let mut psi = init_packet(potential.grid(), &self.packet())?;
        for (i, v) in psi.values_mut().iter_mut().enumerate() {
            if potential.is_blocked(i) {
                *v = Complex64::new(0.0, 0.0);
            }
        }
        psi.normalize()?;
        Ok(psi)
    }

    pub fn validate(&self) -> Result<()> {
        let grid = self.grid()?;
        self.packet().validate(&grid)?;
        self.geometry.validate(self.length)?;
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::invalid("dt must be > 0"));
        }
        if self.n_steps == 0 || self.record_stride == 0 {
            return Err(Error::invalid("n_steps and record_stride must be >= 1"));
        }
        let (_, end) = self.geometry.barrier_span();
        if !(self.screen_x > end && self.screen_x < self.length) {
            return Err(Error::invalid(format!(
                "screen_x={} must lie between the barrier ({end}) and the far wall",
                self.screen_x
            )));
        }
        Ok(())
    }
}

impl KeyValueConfig for SimulationConfig {
    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let g = &mut self.geometry;
        match key {
            "n" => {
                self.n_x = parse_num(key, value)?;
                self.n_y = self.n_x;
            }
            "n_x" => self.n_x = parse_num(key, value)?,
            "n_y" => self.n_y = parse_num(key, value)?,
            "length" => self.length = parse_num(key, value)?,
            "dt" => self.dt = parse_num(key, value)?,
            "n_steps" => self.n_steps = parse_num(key, value)?,
            "record_stride" => self.record_stride = parse_num(key, value)?,
            "x0" => self.x0 = parse_num(key, value)?,
            "y0" => {
                self.y0 = match value {
                    "auto" => None,
                    v => Some(parse_num(key, v)?),
                }
            }
            "y0_ratio" => self.y0_ratio = parse_num(key, value)?,
            "sigma_x" => self.sigma_x = parse_num(key, value)?,
            "sigma_y" => self.sigma_y = parse_num(key, value)?,
            "k" => self.k = parse_num(key, value)?,
            "barrier_x" => g.barrier_x = parse_num(key, value)?,
            "barrier_thickness" => g.barrier_thickness = parse_num(key, value)?,
            "slit1_center" => g.slit1_center = parse_num(key, value)?,
            "slit2_center" => g.slit2_center = parse_num(key, value)?,
            "slit_width" => g.slit_width = parse_num(key, value)?,
            "v0" => g.barrier = value.parse::<Barrier>().map_err(|e| format!("v0: {e}"))?,
            "screen_x" => self.screen_x = parse_num(key, value)?,
            "tolerance" => self.solver.tolerance = parse_num(key, value)?,
            "max_iterations" => self.solver.max_iterations = parse_num(key, value)?,
            _ => return Err(unknown(key)),
        }
        Ok(())
    }

    fn pairs(&self) -> Vec<(&'static str, String)> {
        let g = &self.geometry;
        vec![
            ("n_x", self.n_x.to_string()),
            ("n_y", self.n_y.to_string()),
            ("length", self.length.to_string()),
            ("dt", self.dt.to_string()),
            ("n_steps", self.n_steps.to_string()),
            ("record_stride", self.record_stride.to_string()),
            ("x0", self.x0.to_string()),
            ("y0", self.y0.map_or_else(|| "auto".to_string(), |v| v.to_string())),
            ("y0_ratio", self.y0_ratio.to_string()),
            ("sigma_x", self.sigma_x.to_string()),
            ("sigma_y", self.sigma_y.to_string()),
            ("k", self.k.to_string()),
            ("barrier_x", g.barrier_x.to_string()),
            ("barrier_thickness", g.barrier_thickness.to_string()),
            ("slit1_center", g.slit1_center.to_string()),
            ("slit2_center", g.slit2_center.to_string()),
            ("slit_width", g.slit_width.to_string()),
            ("v0", g.barrier.to_string()),
            ("screen_x", self.screen_x.to_string()),
            ("tolerance", self.solver.tolerance.to_string()),
            ("max_iterations", self.solver.max_iterations.to_string()),
        ]
    }
}
