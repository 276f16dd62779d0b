use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest uncertainty product allowed for `dX dP` and `dE dT` (hbar = 1).
pub const HALF_HBAR: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Perturbation {
    /// Slit work smaller than the energy uncertainty.
    Weak,
    /// Equal within 1e-12.
    Marginal,
    Strong,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorkEnergy {
    pub ratio: f64,
    pub class: Perturbation,
}

/// Ratio of the work done by the slit, `dW = (dP / dT) dX`, to the energy
/// uncertainty `dE`, given both uncertainty products satisfy the bound.
pub fn work_energy_ratio(dx: f64, dp: f64, dt: f64, de: f64) -> Result<WorkEnergy> {
    if [dx, dp, dt, de].iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::invalid("uncertainties must be finite and > 0"));
    }
    let a = dx * dp / HALF_HBAR;
    let b = de * dt / HALF_HBAR;
    if a < 1.0 || b < 1.0 {
        return Err(Error::invalid(format!(
            "uncertainty products must be >= 1/2, got dX dP = {} and dE dT = {}",
            dx * dp,
            de * dt
        )));
    }
    let ratio = a / b;
    let class = if (ratio - 1.0).abs() <= 1e-12 {
        Perturbation::Marginal
    } else if ratio < 1.0 {
        Perturbation::Weak
    } else {
        Perturbation::Strong
    };
    Ok(WorkEnergy { ratio, class })
}
