//! 2D time-dependent Schrödinger solver for the double-slit setup.

mod config;
mod grid;
mod packet;
mod potential;
mod profile;
mod solver;

pub use config::SimulationConfig;
pub use grid::{ComplexField2D, Grid, RealField};
pub use packet::{init_packet, WavePacketParams};
pub use potential::{build_potential, Barrier, Potential, SlitGeometry};
pub use profile::{screen_profile, select_stage_frames, transmitted_fraction, ScreenProfile, StageFrames};
pub use solver::{
    evolve, evolve_full, step, CrankNicolson, Evolution, FieldSeries, Frame, SolveStats, SolverOptions,
};
