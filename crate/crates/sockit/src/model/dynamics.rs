//! Discrete-time cell dynamics, output equation, and their analytic
//! linearisations.
//!
//! Sign convention: current `i > 0` discharges the cell. State update:
//!
//! ```text
//! z'    = z - (eta * dt / Q) * i
//! i_rj' = a_j * i_rj + (1 - a_j) * i      a_j = exp(-dt / tau_j)
//! h'    = a_h * h + (a_h - 1) * sgn(i)    a_h = exp(-|i * eta * gamma * dt / Q|)
//! ```
//!
//! and terminal voltage `v = v_oc(z) + m*h - r1*i_r1 - r2*i_r2 - r0*i`.
//! With `sgn(0) = 0` and `a_h(0) = 1`, rest periods leave `h` unchanged, and
//! sustained discharge drives `h` to -1 (charge to +1). `|h| <= 1` is
//! preserved by every step.

use nalgebra::{Matrix4, RowVector4, Vector4};

use super::ocv::OcvData;
use super::params::ParamSet;
use super::state::{CellConfig, CellState};
use crate::error::{Error, Result};

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// RC branch rate factor `exp(-dt / tau)`.
pub fn alpha_rc(tau: f64, dt: f64) -> f64 {
    (-dt / tau).exp()
}

/// Hysteresis evolution factor `exp(-|i * eta * gamma * dt / Q|)`.
pub fn alpha_h(i: f64, params: &ParamSet, cfg: &CellConfig) -> f64 {
    (-(i * cfg.eta * params.gamma * cfg.dt / cfg.capacity_q).abs()).exp()
}

/// One step of the state equations.
pub fn step_state(state: &CellState, params: &ParamSet, i: f64, cfg: &CellConfig) -> CellState {
    let a1 = alpha_rc(params.tau1, cfg.dt);
    let a2 = alpha_rc(params.tau2, cfg.dt);
    let ah = alpha_h(i, params, cfg);
    CellState {
        z: state.z - cfg.eta * cfg.dt / cfg.capacity_q * i,
        i_r1: a1 * state.i_r1 + (1.0 - a1) * i,
        i_r2: a2 * state.i_r2 + (1.0 - a2) * i,
        h: ah * state.h + (ah - 1.0) * sgn(i),
    }
}

/// Terminal voltage for the given state and applied current.
pub fn output_voltage(state: &CellState, params: &ParamSet, ocv: &OcvData, i: f64) -> f64 {
    ocv.v_oc(state.z) + params.m * state.h
        - params.r1 * state.i_r1
        - params.r2 * state.i_r2
        - params.r0 * i
}

/// Jacobian of the state update with respect to the state:
/// `diag(1, a_rc1, a_rc2, a_h)`.
pub fn state_jacobian(params: &ParamSet, i: f64, cfg: &CellConfig) -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(
        1.0,
        alpha_rc(params.tau1, cfg.dt),
        alpha_rc(params.tau2, cfg.dt),
        alpha_h(i, params, cfg),
    ))
}

/// Jacobian of the output equation with respect to the state:
/// `[d v_oc/dz, -r1, -r2, m]`. The OCV slope is the secant of the bracketing
/// table interval.
pub fn output_jacobian(state: &CellState, params: &ParamSet, ocv: &OcvData) -> RowVector4<f64> {
    RowVector4::new(ocv.docv_dz(state.z), -params.r1, -params.r2, params.m)
}

/// Jacobian of the state update with respect to the parameters
/// `[Q, tau1, tau2, gamma]` (columns, in that order).
pub fn param_jacobian(
    state: &CellState,
    params: &ParamSet,
    i: f64,
    cfg: &CellConfig,
) -> Matrix4<f64> {
    let q = cfg.capacity_q;
    let a1 = alpha_rc(params.tau1, cfg.dt);
    let a2 = alpha_rc(params.tau2, cfg.dt);
    let ah = alpha_h(i, params, cfg);
    let hs = state.h + sgn(i);

    let mut j = Matrix4::zeros();
    // dz'/dQ
    j[(0, 0)] = cfg.eta * cfg.dt * i / (q * q);
    // di_rj'/dtau_j
    j[(1, 1)] = (state.i_r1 - i) * a1 * cfg.dt / (params.tau1 * params.tau1);
    j[(2, 2)] = (state.i_r2 - i) * a2 * cfg.dt / (params.tau2 * params.tau2);
    // dh'/dQ and dh'/dgamma
    j[(3, 0)] = hs * ah * i.abs() * cfg.eta * params.gamma * cfg.dt / (q * q);
    j[(3, 3)] = -hs * ah * i.abs() * cfg.eta * cfg.dt / q;
    j
}

/// Jacobian of the state update with respect to the applied current.
///
/// The hysteresis row is the one-sided derivative away from `i = 0`; at
/// exactly zero current it is defined as 0 (the update is flat there).
pub fn input_jacobian(
    state: &CellState,
    params: &ParamSet,
    i: f64,
    cfg: &CellConfig,
) -> Vector4<f64> {
    let a1 = alpha_rc(params.tau1, cfg.dt);
    let a2 = alpha_rc(params.tau2, cfg.dt);
    let ah = alpha_h(i, params, cfg);
    let dh = if i == 0.0 {
        0.0
    } else {
        -(state.h + sgn(i)) * ah * sgn(i) * cfg.eta * params.gamma * cfg.dt / cfg.capacity_q
    };
    Vector4::new(-cfg.eta * cfg.dt / cfg.capacity_q, 1.0 - a1, 1.0 - a2, dh)
}

/// Gradient of the output voltage with respect to the output-side parameters
/// `[r0, r1, r2, m, ocv]`: `[-i, -i_r1, -i_r2, h, 1]`.
pub fn output_param_gradient(state: &CellState, i: f64) -> [f64; 5] {
    [-i, -state.i_r1, -state.i_r2, state.h, 1.0]
}

/// Open-circuit-side voltage with the RC branch currents held at their
/// pre-step values: `E = v_oc(z) + m*h - r1*i_r1 - r2*i_r2`.
pub fn source_voltage(state: &CellState, params: &ParamSet, ocv: &OcvData) -> f64 {
    ocv.v_oc(state.z) + params.m * state.h - params.r1 * state.i_r1 - params.r2 * state.i_r2
}

/// Largest power the cell can deliver in this state, `E^2 / (4 r0)`.
pub fn max_deliverable_power(state: &CellState, params: &ParamSet, ocv: &OcvData) -> f64 {
    let e = source_voltage(state, params, ocv);
    if params.r0 > 0.0 {
        e * e / (4.0 * params.r0)
    } else {
        f64::INFINITY
    }
}

/// Current `i` satisfying `(E - r0*i) * i = p` with the RC currents held at
/// their pre-step values. Of the quadratic's two roots the one with smaller
/// magnitude is returned (the physical branch, terminal voltage nearest `E`).
pub fn solve_current_for_power(
    state: &CellState,
    params: &ParamSet,
    ocv: &OcvData,
    p: f64,
) -> Result<f64> {
    let e = source_voltage(state, params, ocv);
    if e <= 0.0 {
        return Err(Error::PowerInfeasible {
            requested: p,
            max_deliverable: 0.0,
        });
    }
    let disc = e * e - 4.0 * params.r0 * p;
    if disc < 0.0 {
        return Err(Error::PowerInfeasible {
            requested: p,
            max_deliverable: max_deliverable_power(state, params, ocv),
        });
    }
    // Rationalised small-|i| root; exact for r0 = 0 as well (i = p / E).
    Ok(2.0 * p / (e + disc.sqrt()))
}
