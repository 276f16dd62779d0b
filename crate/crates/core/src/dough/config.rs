use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::keyvalue::{parse_num, unknown, KeyValueConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Interference,
    NoInterference,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Interference => "interference",
            Mode::NoInterference => "no-interference",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "interference" => Ok(Mode::Interference),
            "no-interference" | "no_interference" => Ok(Mode::NoInterference),
            other => Err(format!("unknown mode `{other}` (interference | no-interference)")),
        }
    }
}

/// Global parameters of the dough Monte Carlo model.
///
/// Weights are drawn from `1..=weight_levels`, each force level from
/// `1..=force_levels`. Times are iteration steps; positions are screen units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DoughConfig {
    pub total_mass: f64,
    pub weight_levels: u32,
    pub force_levels: u32,
    pub t_interact: u32,
    pub total_steps: u32,
    pub slit_y_left: f64,
    pub slit_y_right: f64,
    pub bin_size: f64,
    pub trials: usize,
    pub master_seed: u64,
    pub mode: Mode,
    /// Moving-average window (bins) of the fringe envelope; `None` picks the
    /// mode default.
    pub envelope_window: Option<usize>,
    pub envelope_passes: usize,
    pub min_prominence: f64,
    pub cv_threshold: f64,
}

/// Seed used when neither the config, the command line nor the environment
/// provides one.
pub const DEFAULT_SEED: u64 = 20_251_018;

impl Default for DoughConfig {
    fn default() -> Self {
        Self {
            total_mass: 1.0,
            weight_levels: 4,
            force_levels: 4,
            t_interact: 15,
            total_steps: 30,
            slit_y_left: -40.0,
            slit_y_right: 40.0,
            bin_size: 4.0,
            trials: 2000,
            master_seed: DEFAULT_SEED,
            mode: Mode::Interference,
            envelope_window: None,
            envelope_passes: 3,
            min_prominence: 0.1,
            cv_threshold: 0.15,
        }
    }
}

impl DoughConfig {
    /// Interference-destruction setting: 15 force levels and `t_I = 2`.
    pub fn no_interference() -> Self {
        Self {
            mode: Mode::NoInterference,
            force_levels: 15,
            t_interact: 2,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.total_mass > 0.0 && self.total_mass.is_finite()) {
            return Err(Error::invalid(format!("total_mass must be > 0, got {}", self.total_mass)));
        }
        if self.weight_levels < 1 || self.force_levels < 1 {
            return Err(Error::invalid("weight_levels and force_levels must be >= 1"));
        }
        if self.t_interact < 1 || self.t_interact > self.total_steps {
            return Err(Error::invalid(format!(
                "need 1 <= t_interact <= total_steps, got t_interact={} total_steps={}",
                self.t_interact, self.total_steps
            )));
        }
        if !(self.slit_y_left < self.slit_y_right)
            || !self.slit_y_left.is_finite()
            || !self.slit_y_right.is_finite()
        {
            return Err(Error::invalid(format!(
                "need slit_y_left < slit_y_right, got {} and {}",
                self.slit_y_left, self.slit_y_right
            )));
        }
        if !(self.bin_size > 0.0 && self.bin_size.is_finite()) {
            return Err(Error::invalid("bin_size must be > 0"));
        }
        if self.envelope_window == Some(0) || self.envelope_passes == 0 {
            return Err(Error::invalid("envelope window and passes must be >= 1"));
        }
        if !(0.0..1.0).contains(&self.min_prominence) {
            return Err(Error::invalid("min_prominence must be in [0, 1)"));
        }
        if !(self.cv_threshold > 0.0) {
            return Err(Error::invalid("cv_threshold must be > 0"));
        }
        Ok(())
    }

    /// Envelope window actually used: the configured one or the mode default.
    pub fn effective_envelope_window(&self) -> usize {
        self.envelope_window.unwrap_or(match self.mode {
            Mode::Interference => 9,
            Mode::NoInterference => 51,
        })
    }
}

impl KeyValueConfig for DoughConfig {
    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "total_mass" => self.total_mass = parse_num(key, value)?,
            "weight_levels" => self.weight_levels = parse_num(key, value)?,
            "force_levels" => self.force_levels = parse_num(key, value)?,
            "t_interact" => self.t_interact = parse_num(key, value)?,
            "total_steps" => self.total_steps = parse_num(key, value)?,
            "slit_y_left" => self.slit_y_left = parse_num(key, value)?,
            "slit_y_right" => self.slit_y_right = parse_num(key, value)?,
            "bin_size" => self.bin_size = parse_num(key, value)?,
            "trials" => self.trials = parse_num(key, value)?,
            "master_seed" => self.master_seed = parse_num(key, value)?,
            "mode" => self.mode = value.parse()?,
            "envelope_window" => {
                self.envelope_window = match value {
                    "auto" => None,
                    v => Some(parse_num(key, v)?),
                }
            }
            "envelope_passes" => self.envelope_passes = parse_num(key, value)?,
            "min_prominence" => self.min_prominence = parse_num(key, value)?,
            "cv_threshold" => self.cv_threshold = parse_num(key, value)?,
            _ => return Err(unknown(key)),
        }
        Ok(())
    }

    fn pairs(&self) -> Vec<(&'static str, String)> {
        vec![
            ("mode", self.mode.to_string()),
            ("total_mass", self.total_mass.to_string()),
            ("weight_levels", self.weight_levels.to_string()),
            ("force_levels", self.force_levels.to_string()),
            ("t_interact", self.t_interact.to_string()),
            ("total_steps", self.total_steps.to_string()),
            ("slit_y_left", self.slit_y_left.to_string()),
            ("slit_y_right", self.slit_y_right.to_string()),
            ("bin_size", self.bin_size.to_string()),
            ("trials", self.trials.to_string()),
            ("master_seed", self.master_seed.to_string()),
            (
                "envelope_window",
                self.envelope_window
                    .map_or_else(|| "auto".to_string(), |w| w.to_string()),
            ),
            ("envelope_passes", self.envelope_passes.to_string()),
            ("min_prominence", self.min_prominence.to_string()),
            ("cv_threshold", self.cv_threshold.to_string()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::keyvalue::{apply, parse_str, render};
    use std::path::Path;

    #[test]
    fn defaults_valid() {
        DoughConfig::default().validate().unwrap();
        DoughConfig::no_interference().validate().unwrap();
    }

    #[test]
    fn invariants_enforced() {
        let bad = [
            DoughConfig { total_mass: 0.0, ..Default::default() },
            DoughConfig { weight_levels: 0, ..Default::default() },
            DoughConfig { force_levels: 0, ..Default::default() },
            DoughConfig { t_interact: 0, ..Default::default() },
            DoughConfig { t_interact: 31, ..Default::default() },
            DoughConfig { slit_y_left: 40.0, slit_y_right: -40.0, ..Default::default() },
            DoughConfig { bin_size: 0.0, ..Default::default() },
        ];
        for c in bad {
            assert!(c.validate().is_err(), "{c:?}");
        }
        // N = 0 is a valid (empty) run.
        DoughConfig { trials: 0, ..Default::default() }.validate().unwrap();
    }

    #[test]
    fn key_value_round_trip() {
        let mut c = DoughConfig::no_interference();
        c.envelope_window = Some(25);
        c.master_seed = u64::MAX;
        let text = render(&c);
        let mut d = DoughConfig::default();
        apply(&mut d, &parse_str(&text, Path::new("d")).unwrap(), Path::new("d")).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("no-interference".parse::<Mode>().unwrap(), Mode::NoInterference);
        assert!("both".parse::<Mode>().is_err());
    }
}
