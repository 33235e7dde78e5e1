//! Discrete-time equivalent-circuit cell model: two RC branches, series
//! resistance, an OCV source, and a bounded single-state hysteresis voltage,
//! with SOC-indexed parameter lookup and analytic linearisations.

mod dynamics;
mod ocv;
mod params;
mod simulate;
mod state;

pub use dynamics::{
    alpha_h, alpha_rc, input_jacobian, max_deliverable_power, output_jacobian,
    output_param_gradient, output_voltage, param_jacobian, solve_current_for_power,
    source_voltage, state_jacobian, step_state,
};
pub use ocv::OcvData;
pub use params::{bounds, HysteresisMode, ParamSet, ParameterTable};
pub use simulate::{simulate, LimitEvent, LimitKind, Simulation};
pub use state::{CellConfig, CellState};
