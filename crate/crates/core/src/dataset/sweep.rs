use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::keyvalue::{parse_list, parse_num, render_list, unknown, KeyValueConfig};
use crate::qsolve::WavePacketParams;

/// Sample count of the published dataset; the default cap.
pub const DEFAULT_SAMPLE_CAP: usize = 3200;

/// Cartesian grid of initial-packet parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub x0_values: Vec<f64>,
    pub sigma_x_values: Vec<f64>,
    pub sigma_y_values: Vec<f64>,
    pub k: f64,
    /// `y0 = y0_ratio * x0` for every sample.
    pub y0_ratio: f64,
    pub sample_cap: Option<usize>,
}

fn ratios(start: i32, count: i32, denom: f64) -> Vec<f64> {
    (start..start + count).map(|i| f64::from(i) / denom).collect()
}

impl Default for SweepSpec {
    /// 21 centres from 0.40 to 0.60, 38 `sigma_x` from 5e-4 in steps of 5e-5,
    /// 5 `sigma_y` from 1e-3 to 3e-3, capped at 3200 samples.
    fn default() -> Self {
        Self {
            x0_values: ratios(40, 21, 100.0),
            sigma_x_values: ratios(10, 38, 20_000.0),
            sigma_y_values: ratios(2, 5, 2000.0),
            k: 60.0,
            y0_ratio: 1.0,
            sample_cap: Some(DEFAULT_SAMPLE_CAP),
        }
    }
}

impl SweepSpec {
    pub fn full_product(&self) -> usize {
        self.x0_values.len() * self.sigma_x_values.len() * self.sigma_y_values.len()
    }

    pub fn sample_count(&self) -> usize {
        let n = self.full_product();
        self.sample_cap.map_or(n, |c| c.min(n))
    }

    pub fn validate(&self) -> Result<()> {
        for (name, xs) in [
            ("x0_values", &self.x0_values),
            ("sigma_x_values", &self.sigma_x_values),
            ("sigma_y_values", &self.sigma_y_values),
        ] {
            if xs.is_empty() {
                return Err(Error::invalid(format!("{name} is empty")));
            }
            if xs.iter().any(|v| !v.is_finite()) || xs.windows(2).any(|w| !(w[0] < w[1])) {
                return Err(Error::invalid(format!("{name} must be finite and strictly increasing")));
            }
        }
        if !self.k.is_finite() || !self.y0_ratio.is_finite() {
            return Err(Error::invalid("k and y0_ratio must be finite"));
        }
        if let Some(cap) = self.sample_cap {
            if cap > self.full_product() {
                return Err(Error::invalid(format!(
                    "sample_cap {cap} exceeds the {} combinations",
                    self.full_product()
                )));
            }
        }
        Ok(())
    }
}

/// Parameters in order `x0` (outer), `sigma_x`, `sigma_y` (inner), truncated
/// to the cap.
pub fn enumerate_sweep(spec: &SweepSpec) -> Vec<WavePacketParams> {
    let mut out = Vec::with_capacity(spec.sample_count());
    'outer: for &x0 in &spec.x0_values {
        for &sigma_x in &spec.sigma_x_values {
            for &sigma_y in &spec.sigma_y_values {
                if out.len() == spec.sample_count() {
                    break 'outer;
                }
                out.push(WavePacketParams { x0, y0: spec.y0_ratio * x0, sigma_x, sigma_y, k: spec.k });
            }
        }
    }
    out
}

/// Accepts `a,b,c` or `start:stop:count` (inclusive, evenly spaced).
fn parse_values(key: &str, value: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = value.split(':').map(str::trim).collect();
    match parts.as_slice() {
        [start, stop, count] => {
            let a: f64 = parse_num(key, start)?;
            let b: f64 = parse_num(key, stop)?;
            let n: usize = parse_num(key, count)?;
            Ok(match n {
                0 => Vec::new(),
                1 => vec![a],
                _ => (0..n)
                    .map(|i| {
                        let t = i as f64 / (n - 1) as f64;
                        a * (1.0 - t) + b * t
                    })
                    .collect(),
            })
        }
        [_] => parse_list(key, value),
        _ => Err(format!("invalid value `{value}` for `{key}`")),
    }
}

impl KeyValueConfig for SweepSpec {
    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "x0_values" => self.x0_values = parse_values(key, value)?,
            "sigma_x_values" => self.sigma_x_values = parse_values(key, value)?,
            "sigma_y_values" => self.sigma_y_values = parse_values(key, value)?,
            "k" => self.k = parse_num(key, value)?,
            "y0_ratio" => self.y0_ratio = parse_num(key, value)?,
            "sample_cap" => {
                self.sample_cap = match value {
                    "none" => None,
                    v => Some(parse_num(key, v)?),
                }
            }
            _ => return Err(unknown(key)),
        }
        Ok(())
    }

    fn pairs(&self) -> Vec<(&'static str, String)> {
        vec![
            ("x0_values", render_list(&self.x0_values)),
            ("sigma_x_values", render_list(&self.sigma_x_values)),
            ("sigma_y_values", render_list(&self.sigma_y_values)),
            ("k", self.k.to_string()),
            ("y0_ratio", self.y0_ratio.to_string()),
            ("sample_cap", self.sample_cap.map_or_else(|| "none".to_string(), |c| c.to_string())),
        ]
    }
}
