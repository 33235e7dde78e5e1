use serde::{Deserialize, Serialize};

use super::dynamics::{output_voltage, step_state};
use super::ocv::OcvData;
use super::params::ParameterTable;
use super::state::{CellConfig, CellState};
use crate::error::{Error, Result};

/// Which operating limit a sample crossed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LimitKind {
    BelowVMin,
    AboveVMax,
}

/// A voltage-limit crossing, reported as an annotation; the simulation is not
/// halted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitEvent {
    pub index: usize,
    pub voltage: f64,
    pub kind: LimitKind,
}

/// Result of a current-driven simulation: one voltage per input sample and
/// the state trajectory including the terminal state (`states.len() ==
/// voltage.len() + 1`).
#[derive(Debug, Clone)]
pub struct Simulation {
    pub voltage: Vec<f64>,
    pub states: Vec<CellState>,
    pub limit_events: Vec<LimitEvent>,
}

/// Run the model over a uniformly sampled current series from `x0`.
///
/// Parameters are interpolated from the table at the instantaneous SOC. The
/// voltage at sample `k` is evaluated at the pre-step state with current
/// `i_k`, then the state advances.
pub fn simulate(
    table: &ParameterTable,
    ocv: &OcvData,
    cfg: &CellConfig,
    current: &[f64],
    x0: CellState,
) -> Result<Simulation> {
    if let Some(index) = current.iter().position(|i| !i.is_finite()) {
        return Err(Error::NonFinite {
            channel: "current",
            index,
        });
    }
    let mut voltage = Vec::with_capacity(current.len());
    let mut states = Vec::with_capacity(current.len() + 1);
    let mut limit_events = Vec::new();
    let mut state = x0;
    states.push(state);
    for (k, &i) in current.iter().enumerate() {
        let params = table.interp(state.z);
        let v = output_voltage(&state, &params, ocv, i);
        if v < cfg.v_min {
            limit_events.push(LimitEvent {
                index: k,
                voltage: v,
                kind: LimitKind::BelowVMin,
            });
        } else if v > cfg.v_max {
            limit_events.push(LimitEvent {
                index: k,
                voltage: v,
                kind: LimitKind::AboveVMax,
            });
        }
        voltage.push(v);
        state = step_state(&state, &params, i, cfg);
        states.push(state);
    }
    Ok(Simulation {
        voltage,
        states,
        limit_events,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::params::{HysteresisMode, ParamSet};
    use approx::assert_abs_diff_eq;

    fn setup() -> (ParameterTable, OcvData, CellConfig) {
        let p = ParamSet {
            r0: 0.02,
            r1: 0.015,
            r2: 0.025,
            tau1: 2.0,
            tau2: 50.0,
            m: 0.02,
            gamma: 100.0,
        };
        let table =
            ParameterTable::new(vec![0.0, 1.0], vec![p, p], HysteresisMode::Esc).unwrap();
        let ocv = OcvData::from_mean(vec![0.0, 0.5, 1.0], vec![3.0, 3.7, 4.1]).unwrap();
        (table, ocv, CellConfig { dt: 1.0, ..CellConfig::default() })
    }

    #[test]
    fn zero_current_holds_ocv() {
        let (table, ocv, cfg) = setup();
        let sim = simulate(&table, &ocv, &cfg, &[0.0; 50], CellState::rested(0.5)).unwrap();
        for v in sim.voltage {
            assert_abs_diff_eq!(v, 3.7, epsilon = 1e-12);
        }
        assert!(sim.limit_events.is_empty());
        assert_eq!(sim.states.len(), 51);
    }

    #[test]
    fn matches_scalar_recomposition_on_a_pulse() {
        let (table, ocv, cfg) = setup();
        let mut current = vec![2.5; 60];
        current.extend_from_slice(&[0.0; 120]);
        let x0 = CellState::charged(1.0);
        let sim = simulate(&table, &ocv, &cfg, &current, x0).unwrap();

        // Independent scalar recomposition of the difference equations.
        let p = table.entries()[0];
        let (mut z, mut i1, mut i2, mut h) = (x0.z, x0.i_r1, x0.i_r2, x0.h);
        for (k, &i) in current.iter().enumerate() {
            let v = ocv.v_oc(z) + p.m * h - p.r1 * i1 - p.r2 * i2 - p.r0 * i;
            assert_abs_diff_eq!(sim.voltage[k], v, epsilon = 1e-12);
            let a1 = (-cfg.dt / p.tau1).exp();
            let a2 = (-cfg.dt / p.tau2).exp();
            let ah = (-(i * cfg.eta * p.gamma * cfg.dt / cfg.capacity_q).abs()).exp();
            z -= cfg.eta * cfg.dt / cfg.capacity_q * i;
            i1 = a1 * i1 + (1.0 - a1) * i;
            i2 = a2 * i2 + (1.0 - a2) * i;
            let s = if i > 0.0 { 1.0 } else if i < 0.0 { -1.0 } else { 0.0 };
            h = ah * h + (ah - 1.0) * s;
        }
    }

    #[test]
    fn charge_discharge_returns_to_initial_soc() {
        let (table, ocv, cfg) = setup();
        let mut current = vec![2.0; 100];
        current.extend_from_slice(&[-2.0; 100]);
        let sim = simulate(&table, &ocv, &cfg, &current, CellState::rested(0.6)).unwrap();
        assert_abs_diff_eq!(sim.states.last().unwrap().z, 0.6, epsilon = 1e-12);
    }

    #[test]
    fn rejects_non_finite_current() {
        let (table, ocv, cfg) = setup();
        let current = [1.0, 2.0, f64::NAN, 0.0];
        match simulate(&table, &ocv, &cfg, &current, CellState::rested(0.5)) {
            Err(Error::NonFinite { index: 2, .. }) => {}
            other => panic!("expected NonFinite at 2, got {other:?}"),
        }
    }

    #[test]
    fn limit_crossings_annotated_not_fatal() {
        let (table, ocv, cfg) = setup();
        // Huge discharge drives terminal voltage below v_min immediately.
        let sim = simulate(&table, &ocv, &cfg, &[100.0; 5], CellState::rested(0.05)).unwrap();
        assert!(!sim.limit_events.is_empty());
        assert_eq!(sim.limit_events[0].kind, LimitKind::BelowVMin);
        assert_eq!(sim.voltage.len(), 5);
    }
}
