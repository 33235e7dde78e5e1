//! Test-schedule generators: GITT variants for parameter identification and a
//! power-based drive-cycle profile for validation.
//!
//! A [`Profile`] is a pure, uniformly sampled schedule. Current-mode values
//! are in amperes (positive = discharge), power-mode values in watts.
//! CV-hold segments carry the target voltage in the value column and are only
//! interpreted closed-loop by the simulator.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::CellConfig;

/// What the sample values of a profile mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileMode {
    Current,
    Power,
}

impl fmt::Display for ProfileMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileMode::Current => write!(f, "current"),
            ProfileMode::Power => write!(f, "power"),
        }
    }
}

impl FromStr for ProfileMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "current" => Ok(ProfileMode::Current),
            "power" => Ok(ProfileMode::Power),
            other => Err(Error::Dataset(format!("unknown profile mode '{other}'"))),
        }
    }
}

/// Segment annotation for each sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SegmentLabel {
    PulseDischarge,
    PulseCharge,
    Rest,
    CvHold,
    Drive,
}

impl fmt::Display for SegmentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SegmentLabel::PulseDischarge => "pulse_discharge",
            SegmentLabel::PulseCharge => "pulse_charge",
            SegmentLabel::Rest => "rest",
            SegmentLabel::CvHold => "cv_hold",
            SegmentLabel::Drive => "drive",
        };
        write!(f, "{s}")
    }
}

impl FromStr for SegmentLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pulse_discharge" => Ok(SegmentLabel::PulseDischarge),
            "pulse_charge" => Ok(SegmentLabel::PulseCharge),
            "rest" => Ok(SegmentLabel::Rest),
            "cv_hold" => Ok(SegmentLabel::CvHold),
            "drive" => Ok(SegmentLabel::Drive),
            other => Err(Error::Dataset(format!("unknown segment label '{other}'"))),
        }
    }
}

/// Uniformly sampled load schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    dt: f64,
    mode: ProfileMode,
    values: Vec<f64>,
    labels: Vec<SegmentLabel>,
}

impl Profile {
    pub fn new(dt: f64, mode: ProfileMode) -> Self {
        Self {
            dt,
            mode,
            values: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn from_parts(
        dt: f64,
        mode: ProfileMode,
        values: Vec<f64>,
        labels: Vec<SegmentLabel>,
    ) -> Result<Self> {
        if values.len() != labels.len() {
            return Err(Error::LengthMismatch {
                left: values.len(),
                right: labels.len(),
            });
        }
        if !(dt > 0.0) {
            return Err(Error::InvalidConfig(format!("profile dt must be positive, got {dt}")));
        }
        let p = Self {
            dt,
            mode,
            values,
            labels,
        };
        p.validate()?;
        Ok(p)
    }

    /// Append `samples` samples of a constant value under one label.
    pub fn push_segment(&mut self, value: f64, label: SegmentLabel, samples: usize) {
        self.values.extend(std::iter::repeat(value).take(samples));
        self.labels.extend(std::iter::repeat(label).take(samples));
    }

    /// Append a varying segment under one label.
    pub fn push_series(&mut self, values: &[f64], label: SegmentLabel) {
        self.values.extend_from_slice(values);
        self.labels
            .extend(std::iter::repeat(label).take(values.len()));
    }

    /// Append another profile of the same dt and mode.
    pub fn concat(&mut self, other: &Profile) -> Result<()> {
        if other.dt != self.dt || other.mode != self.mode {
            return Err(Error::InvalidConfig(
                "cannot concatenate profiles with different dt or mode".into(),
            ));
        }
        self.values.extend_from_slice(&other.values);
        self.labels.extend_from_slice(&other.labels);
        Ok(())
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn mode(&self) -> ProfileMode {
        self.mode
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn labels(&self) -> &[SegmentLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.values.len() as f64 * self.dt
    }

    /// Label/value consistency: rest samples are exactly zero, and in
    /// current mode a zero sample can only be a rest or CV hold.
    pub fn validate(&self) -> Result<()> {
        for (k, (&v, &l)) in self.values.iter().zip(&self.labels).enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    channel: "profile",
                    index: k,
                });
            }
            if l == SegmentLabel::Rest && v != 0.0 {
                return Err(Error::Dataset(format!(
                    "rest sample {k} has non-zero value {v}"
                )));
            }
            if self.mode == ProfileMode::Current
                && v == 0.0
                && !matches!(l, SegmentLabel::Rest | SegmentLabel::CvHold)
            {
                return Err(Error::Dataset(format!(
                    "zero-current sample {k} labelled {l}"
                )));
            }
        }
        Ok(())
    }
}

fn samples_for(duration_s: f64, dt: f64) -> usize {
    ((duration_s / dt).round() as usize).max(1)
}

/// Pulse count for a full 0-100% traversal at a given per-pulse SOC step.
fn pulse_count(soc_step: f64) -> usize {
    ((1.0 / soc_step) + 1e-9).floor() as usize
}

fn check_step_consistency(c_rate: f64, minutes: f64, soc_step: f64) -> Result<()> {
    let implied = c_rate * minutes / 60.0;
    if (implied - soc_step).abs() > 1e-9 {
        return Err(Error::InconsistentSocStep {
            implied,
            configured: soc_step,
        });
    }
    Ok(())
}

/// GITT: constant-current discharge pulses with rests in between.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct GittConfig {
    pub pulse_c_rate: f64,
    pub pulse_minutes: f64,
    pub rest_hours: f64,
    pub soc_step: f64,
}

impl Default for GittConfig {
    /// 6 minute 0.5 C pulses removing 5% SOC each, 1 hour rests.
    fn default() -> Self {
        Self {
            pulse_c_rate: 0.5,
            pulse_minutes: 6.0,
            rest_hours: 1.0,
            soc_step: 0.05,
        }
    }
}

pub fn gen_gitt(cfg: &GittConfig, cell: &CellConfig) -> Result<Profile> {
    if cfg.pulse_c_rate <= 0.0 || cfg.pulse_minutes <= 0.0 || cfg.rest_hours <= 0.0 {
        return Err(Error::InvalidConfig("GITT rates and durations must be positive".into()));
    }
    check_step_consistency(cfg.pulse_c_rate, cfg.pulse_minutes, cfg.soc_step)?;
    let i = cell.c_rate_current(cfg.pulse_c_rate);
    let pulse_n = samples_for(cfg.pulse_minutes * 60.0, cell.dt);
    let rest_n = samples_for(cfg.rest_hours * 3600.0, cell.dt);
    let mut p = Profile::new(cell.dt, ProfileMode::Current);
    for _ in 0..pulse_count(cfg.soc_step) {
        p.push_segment(i, SegmentLabel::PulseDischarge, pulse_n);
        p.push_segment(0.0, SegmentLabel::Rest, rest_n);
    }
    Ok(p)
}

/// GITT for OCV: a slow discharge ladder followed by the mirrored charge
/// ladder.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct GittOcvConfig {
    pub c_rate: f64,
    pub pulse_minutes: f64,
    pub rest_hours: f64,
    pub soc_step: f64,
}

impl Default for GittOcvConfig {
    /// 12 minute 0.1 C pulses moving 2% SOC each, 1 hour rests.
    fn default() -> Self {
        Self {
            c_rate: 0.1,
            pulse_minutes: 12.0,
            rest_hours: 1.0,
            soc_step: 0.02,
        }
    }
}

pub fn gen_gitt_ocv(cfg: &GittOcvConfig, cell: &CellConfig) -> Result<Profile> {
    if cfg.c_rate <= 0.0 || cfg.pulse_minutes <= 0.0 || cfg.rest_hours <= 0.0 {
        return Err(Error::InvalidConfig("GITT rates and durations must be positive".into()));
    }
    check_step_consistency(cfg.c_rate, cfg.pulse_minutes, cfg.soc_step)?;
    let i = cell.c_rate_current(cfg.c_rate);
    let pulse_n = samples_for(cfg.pulse_minutes * 60.0, cell.dt);
    let rest_n = samples_for(cfg.rest_hours * 3600.0, cell.dt);
    let n = pulse_count(cfg.soc_step);
    let mut p = Profile::new(cell.dt, ProfileMode::Current);
    for _ in 0..n {
        p.push_segment(i, SegmentLabel::PulseDischarge, pulse_n);
        p.push_segment(0.0, SegmentLabel::Rest, rest_n);
    }
    for _ in 0..n {
        p.push_segment(-i, SegmentLabel::PulseCharge, pulse_n);
        p.push_segment(0.0, SegmentLabel::Rest, rest_n);
    }
    Ok(p)
}

/// Alternating discharge/charge GITT, used to excite the hysteresis state.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct ChargePulseConfig {
    pub c_rate: f64,
    pub discharge_minutes: f64,
    pub charge_minutes: f64,
    pub rest_hours: f64,
}

impl Default for ChargePulseConfig {
    /// 12 minute 0.5 C discharge (-10% SOC), 6 minute 0.5 C charge (+5%),
    /// 1 hour rests: net -5% SOC per block.
    fn default() -> Self {
        Self {
            c_rate: 0.5,
            discharge_minutes: 12.0,
            charge_minutes: 6.0,
            rest_hours: 1.0,
        }
    }
}

pub fn gen_gitt_charge_pulse(cfg: &ChargePulseConfig, cell: &CellConfig) -> Result<Profile> {
    if cfg.c_rate <= 0.0
        || cfg.discharge_minutes <= 0.0
        || cfg.charge_minutes <= 0.0
        || cfg.rest_hours <= 0.0
    {
        return Err(Error::InvalidConfig("GITT rates and durations must be positive".into()));
    }
    let discharge_step = cfg.c_rate * cfg.discharge_minutes / 60.0;
    let charge_step = cfg.c_rate * cfg.charge_minutes / 60.0;
    let net = discharge_step - charge_step;
    if net <= 0.0 {
        return Err(Error::InconsistentSocStep {
            implied: net,
            configured: discharge_step,
        });
    }
    let i = cell.c_rate_current(cfg.c_rate);
    let dis_n = samples_for(cfg.discharge_minutes * 60.0, cell.dt);
    let chg_n = samples_for(cfg.charge_minutes * 60.0, cell.dt);
    let rest_n = samples_for(cfg.rest_hours * 3600.0, cell.dt);
    let mut p = Profile::new(cell.dt, ProfileMode::Current);
    for _ in 0..pulse_count(net) {
        p.push_segment(i, SegmentLabel::PulseDischarge, dis_n);
        p.push_segment(0.0, SegmentLabel::Rest, rest_n);
        p.push_segment(-i, SegmentLabel::PulseCharge, chg_n);
        p.push_segment(0.0, SegmentLabel::Rest, rest_n);
    }
    Ok(p)
}

/// Drive-cycle validation profile: repeated one-hour power blocks, each
/// rescaled to discharge a fixed fraction of the nominal cell energy,
/// separated by rests.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct DriveCycleConfig {
    pub block_hours: f64,
    pub rest_hours: f64,
    pub depth_per_block: f64,
    /// Voltage used to convert capacity (A s) into nominal energy (J) for the
    /// block rescaling.
    pub nominal_voltage: f64,
}

impl Default for DriveCycleConfig {
    fn default() -> Self {
        Self {
            block_hours: 1.0,
            rest_hours: 1.0,
            depth_per_block: 0.10,
            nominal_voltage: 3.7,
        }
    }
}

pub fn gen_drive_cycle(
    power_trace: &[f64],
    cfg: &DriveCycleConfig,
    cell: &CellConfig,
) -> Result<Profile> {
    if cfg.block_hours <= 0.0 || cfg.rest_hours < 0.0 || cfg.depth_per_block <= 0.0 {
        return Err(Error::InvalidConfig("drive-cycle durations must be positive".into()));
    }
    if let Some(index) = power_trace.iter().position(|p| !p.is_finite()) {
        return Err(Error::NonFinite {
            channel: "power_trace",
            index,
        });
    }
    let block_n = samples_for(cfg.block_hours * 3600.0, cell.dt);
    if power_trace.len() < block_n {
        return Err(Error::InvalidConfig(format!(
            "power trace covers {:.1} s but one block needs {:.1} s",
            power_trace.len() as f64 * cell.dt,
            block_n as f64 * cell.dt
        )));
    }
    let slice = &power_trace[..block_n];
    let raw_energy: f64 = slice.iter().sum::<f64>() * cell.dt;
    if raw_energy <= 0.0 {
        return Err(Error::InvalidConfig(
            "power trace block has non-positive net energy; cannot rescale".into(),
        ));
    }
    let nominal_energy = cell.capacity_q * cfg.nominal_voltage;
    let scale = cfg.depth_per_block * nominal_energy / raw_energy;
    let scaled: Vec<f64> = slice.iter().map(|&p| p * scale).collect();

    let rest_n = samples_for(cfg.rest_hours * 3600.0, cell.dt);
    let blocks = pulse_count(cfg.depth_per_block);
    let mut p = Profile::new(cell.dt, ProfileMode::Power);
    for _ in 0..blocks {
        p.push_series(&scaled, SegmentLabel::Drive);
        p.push_segment(0.0, SegmentLabel::Rest, rest_n);
    }
    Ok(p)
}

/// Bundled stand-in drive power trace: a sum of band-limited random bursts
/// with occasional regenerative (negative) intervals. This is a synthetic
/// placeholder for a vehicle-derived per-cell power series, deterministic in
/// the seed.
pub fn pseudo_drive_trace(duration_s: f64, dt: f64, seed: u64) -> Vec<f64> {
    let n = samples_for(duration_s, dt);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut raw = vec![0.0f64; n];
    let mut t = 0usize;
    while t < n {
        let idle = samples_for(rng.random_range(5.0..30.0), dt);
        t += idle;
        if t >= n {
            break;
        }
        let burst_len = samples_for(rng.random_range(30.0..180.0), dt);
        let regen = rng.random_range(0.0..1.0) < 0.15;
        let amp = if regen {
            -rng.random_range(2.0..8.0)
        } else {
            rng.random_range(3.0..18.0)
        };
        for k in 0..burst_len {
            if t + k >= n {
                break;
            }
            // Raised-cosine envelope keeps the trace band-limited.
            let phase = (k as f64 + 0.5) / burst_len as f64;
            let env = 0.5 * (1.0 - (2.0 * std::f64::consts::PI * phase).cos());
            let jitter = 1.0 + 0.2 * (rng.random_range(-1.0..1.0));
            raw[t + k] += amp * env * jitter;
        }
        t += burst_len;
    }
    // Short moving average removes the sample-scale jitter.
    let w = samples_for(5.0, dt).min(raw.len());
    let mut out = vec![0.0f64; n];
    let mut acc = 0.0;
    for k in 0..n {
        acc += raw[k];
        if k >= w {
            acc -= raw[k - w];
        }
        out[k] = acc / w.min(k + 1) as f64;
    }
    out
}

/// SOC reset preamble: CC charge to the upper limit, a CV hold (target
/// voltage carried in the value column), then a long rest. Intended for
/// export to real hardware; the synthetic cell can simply be initialised.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct SocResetConfig {
    pub charge_c_rate: f64,
    pub cv_voltage: f64,
    pub cv_hold_hours: f64,
    pub rest_hours: f64,
}

impl Default for SocResetConfig {
    fn default() -> Self {
        Self {
            charge_c_rate: 0.3,
            cv_voltage: 4.2,
            cv_hold_hours: 1.0,
            rest_hours: 4.0,
        }
    }
}

pub fn soc_reset_preamble(cfg: &SocResetConfig, cell: &CellConfig) -> Result<Profile> {
    if cfg.charge_c_rate <= 0.0 || cfg.cv_hold_hours <= 0.0 || cfg.rest_hours <= 0.0 {
        return Err(Error::InvalidConfig("reset durations must be positive".into()));
    }
    // CC segment sized for a full 0 -> 100% traversal.
    let cc_hours = 1.0 / cfg.charge_c_rate;
    let mut p = Profile::new(cell.dt, ProfileMode::Current);
    p.push_segment(
        -cell.c_rate_current(cfg.charge_c_rate),
        SegmentLabel::PulseCharge,
        samples_for(cc_hours * 3600.0, cell.dt),
    );
    p.push_segment(
        cfg.cv_voltage,
        SegmentLabel::CvHold,
        samples_for(cfg.cv_hold_hours * 3600.0, cell.dt),
    );
    p.push_segment(0.0, SegmentLabel::Rest, samples_for(cfg.rest_hours * 3600.0, cell.dt));
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn cell() -> CellConfig {
        CellConfig {
            dt: 1.0,
            ..CellConfig::default()
        }
    }

    #[test]
    fn gitt_defaults_remove_five_percent_per_pulse() {
        let p = gen_gitt(&GittConfig::default(), &cell()).unwrap();
        let pulses = p
            .labels()
            .iter()
            .zip(p.values())
            .filter(|(l, _)| **l == SegmentLabel::PulseDischarge)
            .count();
        // 20 pulses of 2.5 A x 360 s = 900 A s = 5% of 18000 A s.
        assert_eq!(pulses, 20 * 360);
        let first_pulse: f64 = p.values()[..360].iter().sum::<f64>() * p.dt();
        assert_abs_diff_eq!(first_pulse, 900.0, epsilon = 1e-9);
        assert_abs_diff_eq!(first_pulse / 18000.0, 0.05, epsilon = 1e-12);
        p.validate().unwrap();
    }

    #[test]
    fn gitt_pulse_segment_count() {
        let p = gen_gitt(&GittConfig::default(), &cell()).unwrap();
        let mut pulse_segments = 0;
        let mut prev = SegmentLabel::Rest;
        for &l in p.labels() {
            if l == SegmentLabel::PulseDischarge && prev != SegmentLabel::PulseDischarge {
                pulse_segments += 1;
            }
            prev = l;
        }
        assert_eq!(pulse_segments, 20);
    }

    #[test]
    fn gitt_single_full_pulse() {
        let cfg = GittConfig {
            pulse_c_rate: 0.5,
            pulse_minutes: 120.0,
            rest_hours: 1.0,
            soc_step: 1.0,
        };
        let p = gen_gitt(&cfg, &cell()).unwrap();
        let pulses = p
            .labels()
            .iter()
            .filter(|l| **l == SegmentLabel::PulseDischarge)
            .count();
        assert_eq!(pulses, 7200);
        assert_eq!(p.len(), 7200 + 3600);
    }

    #[test]
    fn gitt_rejects_inconsistent_step() {
        let cfg = GittConfig {
            soc_step: 0.04,
            ..GittConfig::default()
        };
        match gen_gitt(&cfg, &cell()) {
            Err(Error::InconsistentSocStep { implied, configured }) => {
                assert_abs_diff_eq!(implied, 0.05, epsilon = 1e-12);
                assert_eq!(configured, 0.04);
            }
            other => panic!("expected inconsistency error, got {other:?}"),
        }
    }

    #[test]
    fn gitt_ocv_ladder_counts_and_mirror() {
        let p = gen_gitt_ocv(&GittOcvConfig::default(), &cell()).unwrap();
        let discharge = p
            .labels()
            .iter()
            .filter(|l| **l == SegmentLabel::PulseDischarge)
            .count();
        let charge = p
            .labels()
            .iter()
            .filter(|l| **l == SegmentLabel::PulseCharge)
            .count();
        // 50 pulses each way; each pulse is 0.5 A x 720 s = 360 A s = 2%.
        assert_eq!(discharge, 50 * 720);
        assert_eq!(charge, 50 * 720);
        let i_dis = p.values()[0];
        assert_abs_diff_eq!(i_dis * 720.0 / 18000.0, 0.02, epsilon = 1e-12);
        let first_charge = p
            .labels()
            .iter()
            .position(|l| *l == SegmentLabel::PulseCharge)
            .unwrap();
        assert_eq!(p.values()[first_charge], -i_dis);
    }

    #[test]
    fn charge_pulse_blocks_and_net_step() {
        let c = cell();
        let p = gen_gitt_charge_pulse(&ChargePulseConfig::default(), &c).unwrap();
        // 20 blocks, each netting -5% SOC.
        let block_len = 720 + 3600 + 360 + 3600;
        assert_eq!(p.len(), 20 * block_len);
        let block_charge: f64 = p.values()[..block_len].iter().sum::<f64>() * p.dt();
        assert_abs_diff_eq!(block_charge / c.capacity_q, 0.05, epsilon = 1e-12);
        // Charge samples are negative under the discharge-positive convention.
        let first_charge = p
            .labels()
            .iter()
            .position(|l| *l == SegmentLabel::PulseCharge)
            .unwrap();
        assert!(p.values()[first_charge] < 0.0);
    }

    #[test]
    fn drive_cycle_scaling_and_rests() {
        let c = cell();
        let trace = pseudo_drive_trace(3600.0, c.dt, 7);
        let cfg = DriveCycleConfig::default();
        let p = gen_drive_cycle(&trace, &cfg, &c).unwrap();
        // 10 blocks of (1 h drive + 1 h rest) = 20 h.
        assert_abs_diff_eq!(p.duration_s(), 20.0 * 3600.0, epsilon = 1e-9);
        for (l, v) in p.labels().iter().zip(p.values()) {
            if *l == SegmentLabel::Rest {
                assert_eq!(*v, 0.0);
            }
        }
        // Each drive block carries depth * nominal energy.
        let drive_energy: f64 = p.values()[..3600].iter().sum::<f64>() * c.dt;
        let nominal = c.capacity_q * cfg.nominal_voltage;
        assert_abs_diff_eq!(drive_energy, 0.10 * nominal, epsilon = 1e-6);
        // And matches the definition of the rescaling factor.
        let raw: f64 = trace[..3600].iter().sum::<f64>() * c.dt;
        let scale = 0.10 * nominal / raw;
        assert_abs_diff_eq!(p.values()[10], trace[10] * scale, epsilon = 1e-12);
    }

    #[test]
    fn drive_cycle_rejects_short_or_bad_traces() {
        let c = cell();
        let cfg = DriveCycleConfig::default();
        assert!(gen_drive_cycle(&[1.0; 100], &cfg, &c).is_err());
        let mut trace = pseudo_drive_trace(3600.0, c.dt, 7);
        trace[5] = f64::INFINITY;
        match gen_drive_cycle(&trace, &cfg, &c) {
            Err(Error::NonFinite { index: 5, .. }) => {}
            other => panic!("expected NonFinite, got {other:?}"),
        }
    }

    #[test]
    fn pseudo_trace_deterministic() {
        let a = pseudo_drive_trace(600.0, 1.0, 42);
        let b = pseudo_drive_trace(600.0, 1.0, 42);
        assert_eq!(a, b);
        let c = pseudo_drive_trace(600.0, 1.0, 43);
        assert_ne!(a, c);
    }

    #[test]
    fn reset_preamble_shape() {
        let c = cell();
        let p = soc_reset_preamble(&SocResetConfig::default(), &c).unwrap();
        assert_eq!(p.labels()[0], SegmentLabel::PulseCharge);
        assert!(p.values()[0] < 0.0);
        let cv_at = p
            .labels()
            .iter()
            .position(|l| *l == SegmentLabel::CvHold)
            .unwrap();
        assert_eq!(p.values()[cv_at], 4.2);
        assert_eq!(*p.labels().last().unwrap(), SegmentLabel::Rest);
        p.validate().unwrap();
    }
}
