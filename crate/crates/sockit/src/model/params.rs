use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Identification box constraints for the circuit parameters.
///
/// The time-constant ranges are disjoint so that each RC branch captures a
/// distinct timescale; allowing `tau1` below 0.5 s lets the optimiser fold the
/// instantaneous series-resistance response into the first RC branch, which
/// destabilises the fit.
pub mod bounds {
    pub const R_MIN: f64 = 0.0;
    pub const R_MAX: f64 = 1.0;
    pub const TAU1_MIN: f64 = 0.5;
    pub const TAU1_MAX: f64 = 25.0;
    pub const TAU2_MIN: f64 = 50.0;
    pub const TAU2_MAX: f64 = 500.0;
    pub const M_MIN: f64 = 0.0;
    pub const GAMMA_MIN: f64 = 0.0;
    pub const GAMMA_MAX: f64 = 3000.0;
}

/// Circuit component values at a single SOC breakpoint.
///
/// Resistances in ohms, time constants in seconds, hysteresis overpotential
/// `m` in volts, hysteresis rate constant `gamma` dimensionless.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamSet {
    pub r0: f64,
    pub r1: f64,
    pub r2: f64,
    pub tau1: f64,
    pub tau2: f64,
    pub m: f64,
    pub gamma: f64,
}

impl ParamSet {
    pub fn validate(&self) -> Result<()> {
        let checks = [
            ("r0", self.r0, bounds::R_MIN, bounds::R_MAX),
            ("r1", self.r1, bounds::R_MIN, bounds::R_MAX),
            ("r2", self.r2, bounds::R_MIN, bounds::R_MAX),
            ("tau1", self.tau1, bounds::TAU1_MIN, bounds::TAU1_MAX),
            ("tau2", self.tau2, bounds::TAU2_MIN, bounds::TAU2_MAX),
            ("m", self.m, bounds::M_MIN, f64::INFINITY),
            ("gamma", self.gamma, bounds::GAMMA_MIN, bounds::GAMMA_MAX),
        ];
        for (name, value, min, max) in checks {
            if !value.is_finite() || value < min || value > max {
                return Err(Error::ParamOutOfBounds {
                    name,
                    value,
                    min,
                    max,
                });
            }
        }
        Ok(())
    }

    fn lerp(a: &ParamSet, b: &ParamSet, t: f64) -> ParamSet {
        let mix = |x: f64, y: f64| x + (y - x) * t;
        ParamSet {
            r0: mix(a.r0, b.r0),
            r1: mix(a.r1, b.r1),
            r2: mix(a.r2, b.r2),
            tau1: mix(a.tau1, b.tau1),
            tau2: mix(a.tau2, b.tau2),
            m: mix(a.m, b.m),
            gamma: mix(a.gamma, b.gamma),
        }
    }
}

/// Whether the model carries the hysteresis state.
///
/// `None` is the plain two-RC Thevenin model; `Esc` adds the bounded
/// single-state hysteresis voltage `m * h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HysteresisMode {
    None,
    Esc,
}

/// SOC-indexed lookup table of circuit parameters with linear interpolation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterTable {
    soc: Vec<f64>,
    entries: Vec<ParamSet>,
    hysteresis_mode: HysteresisMode,
}

impl ParameterTable {
    pub fn new(
        soc: Vec<f64>,
        entries: Vec<ParamSet>,
        hysteresis_mode: HysteresisMode,
    ) -> Result<Self> {
        if soc.len() < 2 {
            return Err(Error::InvalidTable(format!(
                "need at least 2 breakpoints, got {}",
                soc.len()
            )));
        }
        if soc.len() != entries.len() {
            return Err(Error::InvalidTable(format!(
                "{} breakpoints but {} entries",
                soc.len(),
                entries.len()
            )));
        }
        for w in soc.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::InvalidTable(format!(
                    "breakpoints not strictly ascending at {} -> {}",
                    w[0], w[1]
                )));
            }
        }
        for (i, e) in entries.iter().enumerate() {
            e.validate().map_err(|err| {
                Error::InvalidTable(format!("entry {i} (soc {}): {err}", soc[i]))
            })?;
            if hysteresis_mode == HysteresisMode::None && (e.m != 0.0 || e.gamma != 0.0) {
                return Err(Error::InvalidTable(format!(
                    "hysteresis disabled but entry {i} has m={} gamma={}",
                    e.m, e.gamma
                )));
            }
        }
        Ok(Self {
            soc,
            entries,
            hysteresis_mode,
        })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.soc
    }

    pub fn entries(&self) -> &[ParamSet] {
        &self.entries
    }

    pub fn hysteresis_mode(&self) -> HysteresisMode {
        self.hysteresis_mode
    }

    pub fn len(&self) -> usize {
        self.soc.len()
    }

    pub fn is_empty(&self) -> bool {
        self.soc.is_empty()
    }

    /// Linear interpolation between bracketing breakpoints, clamped to the end
    /// entries outside the breakpoint range.
    pub fn interp(&self, soc: f64) -> ParamSet {
        let n = self.soc.len();
        if soc <= self.soc[0] {
            return self.entries[0];
        }
        if soc >= self.soc[n - 1] {
            return self.entries[n - 1];
        }
        // partition_point returns the first index with breakpoint > soc.
        let hi = self.soc.partition_point(|&b| b <= soc);
        let lo = hi - 1;
        let t = (soc - self.soc[lo]) / (self.soc[hi] - self.soc[lo]);
        ParamSet::lerp(&self.entries[lo], &self.entries[hi], t)
    }

    /// Copy of the table with hysteresis removed (`m = gamma = 0`).
    pub fn without_hysteresis(&self) -> ParameterTable {
        let entries = self
            .entries
            .iter()
            .map(|e| ParamSet {
                m: 0.0,
                gamma: 0.0,
                ..*e
            })
            .collect();
        ParameterTable {
            soc: self.soc.clone(),
            entries,
            hysteresis_mode: HysteresisMode::None,
        }
    }

    /// Copy of the table with `gamma` replaced on every entry.
    pub fn with_gamma(&self, gamma: f64) -> ParameterTable {
        let entries = self
            .entries
            .iter()
            .map(|e| ParamSet { gamma, ..*e })
            .collect();
        ParameterTable {
            soc: self.soc.clone(),
            entries,
            hysteresis_mode: HysteresisMode::Esc,
        }
    }
}
