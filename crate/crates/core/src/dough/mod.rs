//! Dough-model Monte Carlo: an extended particle splits across both slits,
//! is pushed by discrete random forces and either recombines at its centre of
//! mass (interference) or registers one branch only (no interference).

mod config;
mod model;
mod run;
mod work;

pub use config::{DoughConfig, Mode, DEFAULT_SEED};
pub use model::{
    directed_forces, effective_forces, mass_split, merge_position, net_force, sample_event, trajectory, trial_rng,
    trial_seed, DoughEvent, Trajectory,
};
pub use run::{
    fringe_report, interference_event, run, run_batch, run_interference, run_no_interference, t_interact_sweep, DoughRun, FringeReport,
    InterferenceRun, InterferenceTrial, NoInterferenceRun, NoInterferenceTrial, Slit,
};
pub use work::{work_energy_ratio, Perturbation, WorkEnergy, HALF_HBAR};
