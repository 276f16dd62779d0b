//! Double-slit toolkit.
//!
//! * [`qsolve`] integrates the 2D time-dependent Schrödinger equation through a
//!   double-slit barrier with a Crank–Nicolson scheme.
//! * [`dough`] is the stochastic "dough" Monte Carlo model of screen arrivals.
//! * [`analysis`] holds the similarity metric, histogram and fringe analysis,
//!   moment signatures and proximity-graph closeness centrality.
//! * [`dataset`] enumerates parameter sweeps and reads/writes the binary field
//!   formats, profiles and manifests.
//! * [`cli`] implements the `doughslit` command-line subcommands.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod csvio;
pub mod cli;
pub mod dataset;
pub mod dough;
pub mod error;
pub mod keyvalue;
pub mod plot;
pub mod qsolve;

pub use error::{Error, Result};

/// Toolkit version recorded in manifests and output headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
