//! Battery cell modelling and state-of-charge estimation toolkit.
//!
//! The crate covers the full desk-scale workflow for equivalent-circuit
//! battery models with hysteresis:
//!
//! - [`model`] — discrete-time cell dynamics, output equation, parameter and
//!   OCV lookup tables, analytic Jacobians, and a power-to-current solver;
//! - [`protocol`] — generators for the GITT-family test schedules and
//!   drive-cycle load profiles;
//! - [`synth`] — synthetic ground-truth cells and sensor models for producing
//!   benchmark datasets with known internals;
//! - [`ident`] — two-stage parameter identification: OCV/hysteresis
//!   extraction, per-pulse ordinary least squares, bounded nonlinear
//!   refinement, and the outer hysteresis-rate search;
//! - [`ekf`] — extended Kalman filter SOC estimation with constant or
//!   adaptive covariance scheduling, plus the Coulomb-counting baseline;
//! - [`pipeline`] — end-to-end benchmark orchestration, dataset ingestion,
//!   and plot-data emission behind the `soctool` CLI.
//!
//! Start with the `examples/` directory: each example is a runnable
//! walkthrough of one capability.

pub mod data;
pub mod ekf;
pub mod error;
pub mod ident;
pub mod io;
pub mod model;
pub mod optim;
pub mod pipeline;
pub mod protocol;
pub mod synth;

pub use error::{Error, ErrorCategory, Result};
