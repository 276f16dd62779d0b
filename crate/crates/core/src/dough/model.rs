use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::config::DoughConfig;
use crate::error::{Error, Result};

/// One sampled Monte Carlo event: relative weights at each slit and the three
/// force levels (left push, central interaction, right push).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoughEvent {
    pub w_l1: u32,
    pub w_r1: u32,
    pub f_l: u32,
    pub f_c: u32,
    pub f_r: u32,
}

/// Path of one dough piece: `positions[t]` for `t = 0..=T`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub start_y: f64,
    pub positions: Vec<f64>,
}

impl Trajectory {
    pub fn arrival(&self) -> f64 {
        *self.positions.last().expect("trajectory has at least one point")
    }
}

/// Splits the total mass in proportion to the slit weights.
pub fn mass_split(w_l1: u32, w_r1: u32, total_mass: f64) -> Result<(f64, f64)> {
    if w_l1 == 0 || w_r1 == 0 {
        return Err(Error::invalid(format!("weights must be >= 1, got {w_l1} and {w_r1}")));
    }
    if !(total_mass > 0.0 && total_mass.is_finite()) {
        return Err(Error::invalid(format!("total mass must be > 0, got {total_mass}")));
    }
    let sum = f64::from(w_l1) + f64::from(w_r1);
    Ok((total_mass * f64::from(w_l1) / sum, total_mass * f64::from(w_r1) / sum))
}

/// Force magnitudes felt by each branch: the branch's own push plus the
/// central interaction.
pub fn effective_forces(e: &DoughEvent) -> (u32, u32) {
    (e.f_l + e.f_c, e.f_r + e.f_c)
}

/// Signed forces along the screen axis. The left piece is pushed outward by
/// `F_L` and back toward the centre by `F_C`; mirrored on the right.
pub fn directed_forces(e: &DoughEvent) -> (i64, i64) {
    let (l, c, r) = (i64::from(e.f_l), i64::from(e.f_c), i64::from(e.f_r));
    (c - l, r - c)
}

/// Net force on the merged piece; the central interaction cancels.
pub fn net_force(e: &DoughEvent) -> i64 {
    let (l, r) = directed_forces(e);
    l + r
}

/// Centre of mass of the two pieces.
pub fn merge_position(m_l: f64, m_r: f64, y_l: f64, y_r: f64) -> Result<f64> {
    if m_l < 0.0 || m_r < 0.0 || !(m_l + m_r > 0.0) {
        return Err(Error::Degenerate(format!(
            "cannot merge masses {m_l} and {m_r}"
        )));
    }
    Ok((m_l * y_l + m_r * y_r) / (m_l + m_r))
}

/// Piecewise motion under constant force `force` on mass `mass`: uniform
/// acceleration before `t_interact`, then uniform velocity `t_I F / M`
/// continuing from the position at `t_interact - 1`.
pub fn trajectory(start_y: f64, force: f64, mass: f64, t_interact: u32, total_steps: u32) -> Result<Trajectory> {
    if !(mass > 0.0) {
        return Err(Error::invalid(format!("mass must be > 0, got {mass}")));
    }
    if t_interact < 1 || t_interact > total_steps {
        return Err(Error::invalid(format!(
            "need 1 <= t_interact <= total_steps, got {t_interact} and {total_steps}"
        )));
    }
    let a = force / mass;
    let ti = f64::from(t_interact);
    let accel = |t: f64| start_y + 0.5 * a * t * t;
    let y_before = accel(ti - 1.0);
    let positions = (0..=total_steps)
        .map(|t| {
            let t = f64::from(t);
            if t < ti {
                accel(t)
            } else {
                y_before + ti * a * (t - ti + 1.0)
            }
        })
        .collect();
    Ok(Trajectory { start_y, positions })
}

fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `index`; independent of how trials are scheduled.
pub fn trial_seed(master_seed: u64, index: u64) -> u64 {
    splitmix64(master_seed.wrapping_add(splitmix64(index.wrapping_add(0x9e37_79b9_7f4a_7c15))))
}

pub fn trial_rng(master_seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(master_seed, index))
}

/// Draws an event in the fixed order `W_L1, W_R1, F_L, F_C, F_R`.
pub fn sample_event<R: rand::Rng + ?Sized>(rng: &mut R, config: &DoughConfig) -> DoughEvent {
    let w = config.weight_levels;
    let f = config.force_levels;
    DoughEvent {
        w_l1: rng.random_range(1..=w),
        w_r1: rng.random_range(1..=w),
        f_l: rng.random_range(1..=f),
        f_c: rng.random_range(1..=f),
        f_r: rng.random_range(1..=f),
    }
}
