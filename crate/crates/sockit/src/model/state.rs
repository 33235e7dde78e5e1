use nalgebra::Vector4;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dynamic state of the cell model at one time step.
///
/// Order is fixed as `[z, i_r1, i_r2, h]` everywhere, including all filter
/// matrices. `z` is deliberately not clipped to `[0, 1]`: estimators must be
/// able to observe unphysical drift in order to correct it, so out-of-range
/// SOC is surfaced by diagnostics rather than clamped here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellState {
    /// State of charge (fraction).
    pub z: f64,
    /// Current through RC branch 1 (A).
    pub i_r1: f64,
    /// Current through RC branch 2 (A).
    pub i_r2: f64,
    /// Hysteresis state, bounded in [-1, 1].
    pub h: f64,
}

impl CellState {
    pub fn new(z: f64, i_r1: f64, i_r2: f64, h: f64) -> Self {
        Self { z, i_r1, i_r2, h }
    }

    /// Fully relaxed state: no RC currents, neutral hysteresis.
    pub fn rested(z: f64) -> Self {
        Self::new(z, 0.0, 0.0, 0.0)
    }

    /// Relaxed state as left by a full charge: hysteresis saturated at +1.
    pub fn charged(z: f64) -> Self {
        Self::new(z, 0.0, 0.0, 1.0)
    }

    pub fn as_vector(&self) -> Vector4<f64> {
        Vector4::new(self.z, self.i_r1, self.i_r2, self.h)
    }

    pub fn from_vector(v: &Vector4<f64>) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }
}

/// Static cell configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CellConfig {
    /// Charge capacity in ampere-seconds.
    pub capacity_q: f64,
    /// Coulombic efficiency (this work fixes it at 1).
    pub eta: f64,
    /// Sample period in seconds.
    pub dt: f64,
    /// Upper voltage limit (V).
    pub v_max: f64,
    /// Lower voltage limit (V).
    pub v_min: f64,
}

impl Default for CellConfig {
    /// 5 Ah cell sampled at 10 Hz with 2.5 V / 4.2 V operating limits.
    fn default() -> Self {
        Self {
            capacity_q: 5.0 * 3600.0,
            eta: 1.0,
            dt: 0.1,
            v_max: 4.2,
            v_min: 2.5,
        }
    }
}

impl CellConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.capacity_q > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "capacity_q must be positive, got {}",
                self.capacity_q
            )));
        }
        if !(self.eta > 0.0 && self.eta <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "eta must be in (0, 1], got {}",
                self.eta
            )));
        }
        if !(self.dt > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.v_min < self.v_max) {
            return Err(Error::InvalidConfig(format!(
                "v_min {} must be below v_max {}",
                self.v_min, self.v_max
            )));
        }
        Ok(())
    }

    /// Current in amperes corresponding to a C-rate for this cell.
    pub fn c_rate_current(&self, c_rate: f64) -> f64 {
        c_rate * self.capacity_q / 3600.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        let cfg = CellConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.capacity_q, 18000.0);
        assert_eq!(cfg.dt, 0.1);
    }

    #[test]
    fn c_rate_conversion() {
        let cfg = CellConfig::default();
        assert_eq!(cfg.c_rate_current(0.5), 2.5);
        assert_eq!(cfg.c_rate_current(1.0), 5.0);
    }

    #[test]
    fn invalid_configs_rejected() {
        let mut cfg = CellConfig::default();
        cfg.eta = 0.0;
        assert!(cfg.validate().is_err());
        cfg = CellConfig {
            dt: -0.1,
            ..CellConfig::default()
        };
        assert!(cfg.validate().is_err());
        cfg = CellConfig {
            v_min: 4.3,
            ..CellConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn state_vector_round_trip() {
        let s = CellState::new(0.7, 0.1, -0.2, 0.5);
        assert_eq!(CellState::from_vector(&s.as_vector()), s);
    }
}
