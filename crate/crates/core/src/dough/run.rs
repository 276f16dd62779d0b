use std::fmt::Write as _;

use rand::RngExt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{DoughConfig, Mode};
use super::model::{
    directed_forces, effective_forces, mass_split, merge_position, net_force, sample_event, trajectory, trial_rng,
    DoughEvent, Trajectory,
};
use crate::analysis::{envelope, fringe_metrics, histogram, detect_peaks, FringeMetrics, PeakList, ScreenHistogram};
use crate::error::{Error, Result};
use crate::keyvalue::comment_block;

#[derive(Debug, Clone, PartialEq)]
pub struct InterferenceTrial {
    pub index: usize,
    pub event: DoughEvent,
    pub m_l: f64,
    pub m_r: f64,
    pub y_c: f64,
    pub f_tot: i64,
    pub arrival: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Slit {
    Left,
    Right,
}

impl Slit {
    pub fn letter(self) -> char {
        match self {
            Slit::Left => 'L',
            Slit::Right => 'R',
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoInterferenceTrial {
    pub index: usize,
    pub event: DoughEvent,
    pub m_l: f64,
    pub m_r: f64,
    /// Acceleration magnitudes `(F_L + F_C) / M_L` and `(F_R + F_C) / M_R`.
    pub accel_left: f64,
    pub accel_right: f64,
    /// Branch that reaches the screen first and is recorded.
    pub first: Slit,
    /// Whether the order was decided by a coin flip.
    pub tie: bool,
    pub start_y: f64,
    pub arrival: f64,
}

#[derive(Debug, Clone)]
pub struct InterferenceRun {
    pub config: DoughConfig,
    pub trials: Vec<InterferenceTrial>,
    pub trajectories: Vec<Trajectory>,
    pub histogram: ScreenHistogram,
}

#[derive(Debug, Clone)]
pub struct NoInterferenceRun {
    pub config: DoughConfig,
    pub trials: Vec<NoInterferenceTrial>,
    pub trajectories: Vec<Trajectory>,
    pub left: ScreenHistogram,
    pub right: ScreenHistogram,
    pub combined: ScreenHistogram,
}

#[derive(Debug, Clone)]
pub enum DoughRun {
    Interference(InterferenceRun),
    NoInterference(NoInterferenceRun),
}

/// Histogram over `[min - bin, max + bin]` with an edge at zero.
fn screen_histogram(arrivals: &[f64], bin: f64) -> Result<ScreenHistogram> {
    Ok(histogram(arrivals, bin, 0.0)?.padded(1))
}

fn interference_trial(config: &DoughConfig, index: usize) -> Result<(InterferenceTrial, Trajectory)> {
    let mut rng = trial_rng(config.master_seed, index as u64);
    interference_event(config, index, sample_event(&mut rng, config))
}

/// Outcome of one given event in the merged-piece model.
pub fn interference_event(
    config: &DoughConfig,
    index: usize,
    event: DoughEvent,
) -> Result<(InterferenceTrial, Trajectory)> {
    let (m_l, m_r) = mass_split(event.w_l1, event.w_r1, config.total_mass)?;
    let y_c = merge_position(m_l, m_r, config.slit_y_left, config.slit_y_right)?;
    let f_tot = net_force(&event);
    let path = trajectory(y_c, f_tot as f64, m_l + m_r, config.t_interact, config.total_steps)?;
    let trial = InterferenceTrial { index, event, m_l, m_r, y_c, f_tot, arrival: path.arrival() };
    Ok((trial, path))
}

/// Merged-piece Monte Carlo: each trial recombines at the centre of mass and
/// moves under the net force.
pub fn run_interference(config: &DoughConfig) -> Result<InterferenceRun> {
    config.validate()?;
    let results: Vec<_> = (0..config.trials)
        .into_par_iter()
        .map(|i| interference_trial(config, i))
        .collect::<Result<_>>()?;
    let (trials, trajectories): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let arrivals: Vec<f64> = trials.iter().map(|t| t.arrival).collect();
    let histogram = screen_histogram(&arrivals, config.bin_size)?;
    Ok(InterferenceRun { config: config.clone(), trials, trajectories, histogram })
}

fn no_interference_trial(config: &DoughConfig, index: usize) -> Result<(NoInterferenceTrial, Trajectory)> {
    let mut rng = trial_rng(config.master_seed, index as u64);
    let event = sample_event(&mut rng, config);
    let coin: bool = rng.random();
    let (m_l, m_r) = mass_split(event.w_l1, event.w_r1, config.total_mass)?;
    let (mag_l, mag_r) = effective_forces(&event);
    // a_L < a_R  <=>  mag_l * w_r < mag_r * w_l, compared exactly.
    let lhs = u64::from(mag_l) * u64::from(event.w_r1);
    let rhs = u64::from(mag_r) * u64::from(event.w_l1);
    let tie = lhs == rhs;
    let first = match lhs.cmp(&rhs) {
        std::cmp::Ordering::Less => Slit::Left,
        std::cmp::Ordering::Greater => Slit::Right,
        std::cmp::Ordering::Equal if coin => Slit::Left,
        std::cmp::Ordering::Equal => Slit::Right,
    };
    let (dir_l, dir_r) = directed_forces(&event);
    let (start_y, force, mass) = match first {
        Slit::Left => (config.slit_y_left, dir_l, m_l),
        Slit::Right => (config.slit_y_right, dir_r, m_r),
    };
    let path = trajectory(start_y, force as f64, mass, config.t_interact, config.total_steps)?;
    let trial = NoInterferenceTrial {
        index,
        event,
        m_l,
        m_r,
        accel_left: f64::from(mag_l) / m_l,
        accel_right: f64::from(mag_r) / m_r,
        first,
        tie,
        start_y,
        arrival: path.arrival(),
    };
    Ok((trial, path))
}

/// Branch-resolved Monte Carlo: the two pieces never merge; the branch with
/// the smaller acceleration arrives first and alone marks the screen.
pub fn run_no_interference(config: &DoughConfig) -> Result<NoInterferenceRun> {
    config.validate()?;
    let results: Vec<_> = (0..config.trials)
        .into_par_iter()
        .map(|i| no_interference_trial(config, i))
        .collect::<Result<_>>()?;
    let (trials, trajectories): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let arrivals: Vec<f64> = trials.iter().map(|t| t.arrival).collect();
    let combined = screen_histogram(&arrivals, config.bin_size)?;
    let side = |s: Slit| -> Vec<f64> { trials.iter().filter(|t| t.first == s).map(|t| t.arrival).collect() };
    let left = combined.recount(&side(Slit::Left))?;
    let right = combined.recount(&side(Slit::Right))?;
    Ok(NoInterferenceRun { config: config.clone(), trials, trajectories, left, right, combined })
}

pub fn run(config: &DoughConfig) -> Result<DoughRun> {
    Ok(match config.mode {
        Mode::Interference => DoughRun::Interference(run_interference(config)?),
        Mode::NoInterference => DoughRun::NoInterference(run_no_interference(config)?),
    })
}

/// Runs each config in order.
pub fn run_batch(configs: &[DoughConfig]) -> Result<Vec<DoughRun>> {
    configs.iter().map(run).collect()
}

/// Copies of `base` differing only in `t_interact`.
pub fn t_interact_sweep(base: &DoughConfig, values: &[u32]) -> Vec<DoughConfig> {
    values.iter().map(|&t| DoughConfig { t_interact: t, ..base.clone() }).collect()
}

impl DoughRun {
    pub fn config(&self) -> &DoughConfig {
        match self {
            DoughRun::Interference(r) => &r.config,
            DoughRun::NoInterference(r) => &r.config,
        }
    }

    /// Histogram of every recorded arrival.
    pub fn histogram(&self) -> &ScreenHistogram {
        match self {
            DoughRun::Interference(r) => &r.histogram,
            DoughRun::NoInterference(r) => &r.combined,
        }
    }

    pub fn arrivals(&self) -> Vec<f64> {
        match self {
            DoughRun::Interference(r) => r.trials.iter().map(|t| t.arrival).collect(),
            DoughRun::NoInterference(r) => r.trials.iter().map(|t| t.arrival).collect(),
        }
    }

    pub fn trajectories(&self) -> &[Trajectory] {
        match self {
            DoughRun::Interference(r) => &r.trajectories,
            DoughRun::NoInterference(r) => &r.trajectories,
        }
    }

    /// `trial,W_L,W_R,F_L,F_C,F_R,Y_C,arrival[,first_slit]` with the config
    /// as leading comment lines.
    pub fn arrivals_csv(&self) -> String {
        let mut s = comment_block(self.config());
        match self {
            DoughRun::Interference(r) => {
                s.push_str("trial,W_L,W_R,F_L,F_C,F_R,Y_C,arrival\n");
                for t in &r.trials {
                    let e = t.event;
                    writeln!(s, "{},{},{},{},{},{},{},{}", t.index, e.w_l1, e.w_r1, e.f_l, e.f_c, e.f_r, t.y_c, t.arrival)
                        .unwrap();
                }
            }
            DoughRun::NoInterference(r) => {
                s.push_str("trial,W_L,W_R,F_L,F_C,F_R,Y_C,arrival,first_slit\n");
                for t in &r.trials {
                    let e = t.event;
                    writeln!(
                        s,
                        "{},{},{},{},{},{},{},{},{}",
                        t.index,
                        e.w_l1,
                        e.w_r1,
                        e.f_l,
                        e.f_c,
                        e.f_r,
                        t.start_y,
                        t.arrival,
                        t.first.letter()
                    )
                    .unwrap();
                }
            }
        }
        s
    }
}

/// Envelope, peaks and fringe metrics of one screen histogram.
#[derive(Debug, Clone, PartialEq)]
pub struct FringeReport {
    pub envelope: Vec<f64>,
    pub peaks: PeakList,
    pub metrics: FringeMetrics,
}

/// Fringe analysis of `h` with the envelope and thresholds from `config`.
/// Histograms with fewer than three bins have no peaks.
pub fn fringe_report(h: &ScreenHistogram, config: &DoughConfig) -> Result<FringeReport> {
    let env = envelope(&h.values(), config.effective_envelope_window(), config.envelope_passes);
    let peaks = match detect_peaks(&env, &h.centers(), config.min_prominence) {
        Ok(p) => p,
        Err(Error::TooFewBins(_)) => PeakList::default(),
        Err(e) => return Err(e),
    };
    let metrics = fringe_metrics(&peaks, config.cv_threshold);
    Ok(FringeReport { envelope: env, peaks, metrics })
}
