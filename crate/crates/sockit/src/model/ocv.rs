use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Open-circuit-voltage curves over SOC.
///
/// Stores the charge-branch and discharge-branch rest voltages plus the
/// derived mean curve and hysteresis overpotential table:
/// `v_mean = (v_charge + v_discharge) / 2`, `m = (v_charge - v_discharge) / 2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OcvData {
    soc: Vec<f64>,
    v_charge: Vec<f64>,
    v_discharge: Vec<f64>,
    v_mean: Vec<f64>,
    m_table: Vec<f64>,
}

impl OcvData {
    /// Build from the two branch curves; the mean and hysteresis tables are
    /// derived exactly. The mean curve must be monotonically non-decreasing
    /// and the charge branch must not dip below the discharge branch.
    pub fn from_branches(soc: Vec<f64>, v_charge: Vec<f64>, v_discharge: Vec<f64>) -> Result<Self> {
        if soc.len() < 2 {
            return Err(Error::InvalidTable(format!(
                "OCV needs at least 2 breakpoints, got {}",
                soc.len()
            )));
        }
        if v_charge.len() != soc.len() || v_discharge.len() != soc.len() {
            return Err(Error::InvalidTable(
                "OCV branch lengths do not match breakpoints".into(),
            ));
        }
        for w in soc.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::InvalidTable(format!(
                    "OCV breakpoints not strictly ascending at {} -> {}",
                    w[0], w[1]
                )));
            }
        }
        for (i, (&vc, &vd)) in v_charge.iter().zip(&v_discharge).enumerate() {
            if !vc.is_finite() || !vd.is_finite() {
                return Err(Error::NonFinite {
                    channel: "ocv",
                    index: i,
                });
            }
            if vc < vd {
                return Err(Error::InvalidTable(format!(
                    "charge OCV below discharge OCV at soc {}: {} < {}",
                    soc[i], vc, vd
                )));
            }
        }
        let v_mean: Vec<f64> = v_charge
            .iter()
            .zip(&v_discharge)
            .map(|(&c, &d)| (c + d) / 2.0)
            .collect();
        let m_table: Vec<f64> = v_charge
            .iter()
            .zip(&v_discharge)
            .map(|(&c, &d)| (c - d) / 2.0)
            .collect();
        for w in v_mean.windows(2) {
            if w[1] < w[0] {
                return Err(Error::InvalidTable(format!(
                    "mean OCV not monotone: {} -> {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self {
            soc,
            v_charge,
            v_discharge,
            v_mean,
            m_table,
        })
    }

    /// Zero-hysteresis curve from a single rest-voltage table.
    pub fn from_mean(soc: Vec<f64>, v_mean: Vec<f64>) -> Result<Self> {
        Self::from_branches(soc, v_mean.clone(), v_mean)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.soc
    }

    pub fn v_charge(&self) -> &[f64] {
        &self.v_charge
    }

    pub fn v_discharge(&self) -> &[f64] {
        &self.v_discharge
    }

    pub fn v_mean(&self) -> &[f64] {
        &self.v_mean
    }

    pub fn m_table(&self) -> &[f64] {
        &self.m_table
    }

    pub fn len(&self) -> usize {
        self.soc.len()
    }

    pub fn is_empty(&self) -> bool {
        self.soc.is_empty()
    }

    fn interp(&self, values: &[f64], soc: f64) -> f64 {
        let n = self.soc.len();
        if soc <= self.soc[0] {
            return values[0];
        }
        if soc >= self.soc[n - 1] {
            return values[n - 1];
        }
        let hi = self.soc.partition_point(|&b| b <= soc);
        let lo = hi - 1;
        let t = (soc - self.soc[lo]) / (self.soc[hi] - self.soc[lo]);
        values[lo] + (values[hi] - values[lo]) * t
    }

    /// Mean open-circuit voltage at `soc` (linear interpolation, clamped).
    pub fn v_oc(&self, soc: f64) -> f64 {
        self.interp(&self.v_mean, soc)
    }

    /// Same lookup with a temperature argument in the signature. Only a single
    /// 25 degC table is carried, so the temperature is accepted and ignored.
    pub fn v_oc_at(&self, soc: f64, _temperature_c: f64) -> f64 {
        self.v_oc(soc)
    }

    /// Hysteresis overpotential at `soc` (linear interpolation, clamped).
    pub fn m_at(&self, soc: f64) -> f64 {
        self.interp(&self.m_table, soc)
    }

    /// Local secant slope `d v_oc / d soc` of the bracketing interval.
    ///
    /// Exactly at an interior breakpoint the right interval is used; at the
    /// last breakpoint the left interval; outside the table the clamped value
    /// is flat so the slope is 0.
    pub fn docv_dz(&self, soc: f64) -> f64 {
        let n = self.soc.len();
        if soc < self.soc[0] || soc > self.soc[n - 1] {
            return 0.0;
        }
        let hi = if soc >= self.soc[n - 1] {
            n - 1
        } else {
            self.soc.partition_point(|&b| b <= soc).max(1)
        };
        let lo = hi - 1;
        (self.v_mean[hi] - self.v_mean[lo]) / (self.soc[hi] - self.soc[lo])
    }

    /// SOC whose mean OCV equals `v` (inverse lookup on the monotone mean
    /// curve, clamped to the table range). Flat segments resolve to their
    /// left edge.
    pub fn invert_v_oc(&self, v: f64) -> f64 {
        let n = self.soc.len();
        if v <= self.v_mean[0] {
            return self.soc[0];
        }
        if v >= self.v_mean[n - 1] {
            return self.soc[n - 1];
        }
        let hi = self.v_mean.partition_point(|&b| b <= v);
        let lo = hi - 1;
        let dv = self.v_mean[hi] - self.v_mean[lo];
        if dv <= 0.0 {
            return self.soc[lo];
        }
        let t = (v - self.v_mean[lo]) / dv;
        self.soc[lo] + (self.soc[hi] - self.soc[lo]) * t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sample() -> OcvData {
        OcvData::from_branches(
            vec![0.0, 0.5, 1.0],
            vec![3.02, 3.72, 4.12],
            vec![3.00, 3.68, 4.10],
        )
        .unwrap()
    }

    #[test]
    fn derived_tables_exact() {
        let ocv = sample();
        assert_eq!(ocv.v_mean(), &[3.01, 3.70, 4.11]);
        assert_abs_diff_eq!(ocv.m_table()[1], 0.02, epsilon = 1e-15);
    }

    #[test]
    fn lookup_interpolates_and_clamps() {
        let ocv = sample();
        assert_abs_diff_eq!(ocv.v_oc(0.25), (3.01 + 3.70) / 2.0, epsilon = 1e-12);
        assert_eq!(ocv.v_oc(-0.5), 3.01);
        assert_eq!(ocv.v_oc(1.5), 4.11);
        assert_eq!(ocv.v_oc_at(0.25, 45.0), ocv.v_oc(0.25));
    }

    #[test]
    fn slope_uses_right_interval_at_breakpoints() {
        let ocv = sample();
        let left = (3.70 - 3.01) / 0.5;
        let right = (4.11 - 3.70) / 0.5;
        assert_abs_diff_eq!(ocv.docv_dz(0.5), right, epsilon = 1e-12);
        assert_abs_diff_eq!(ocv.docv_dz(0.25), left, epsilon = 1e-12);
        assert_abs_diff_eq!(ocv.docv_dz(1.0), right, epsilon = 1e-12);
        assert_eq!(ocv.docv_dz(1.2), 0.0);
    }

    #[test]
    fn inverse_round_trips_in_range() {
        let ocv = sample();
        for soc in [0.0, 0.2, 0.5, 0.8, 1.0] {
            let v = ocv.v_oc(soc);
            assert_abs_diff_eq!(ocv.invert_v_oc(v), soc, epsilon = 1e-12);
        }
        assert_eq!(ocv.invert_v_oc(2.0), 0.0);
        assert_eq!(ocv.invert_v_oc(5.0), 1.0);
    }

    #[test]
    fn rejects_crossed_branches() {
        let err = OcvData::from_branches(vec![0.0, 1.0], vec![3.0, 4.0], vec![3.1, 4.0]);
        assert!(err.is_err());
    }

    #[test]
    fn rejects_non_monotone_mean() {
        let err = OcvData::from_branches(vec![0.0, 0.5, 1.0], vec![3.5, 3.2, 4.0], vec![3.5, 3.2, 4.0]);
        assert!(err.is_err());
    }
}
