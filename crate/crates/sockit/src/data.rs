//! Uniformly sampled measurement datasets.

use crate::error::{Error, Result};
use crate::model::CellState;
use crate::protocol::SegmentLabel;

/// Noiseless internals of a synthesised run, kept in a side channel so error
/// metrics can be computed without exposing truth through the measurement
/// accessors that estimators use.
///
/// Synthesised datasets carry the full pre-noise trajectory; datasets
/// ingested from CSV carry at most the true-SOC column.
#[derive(Debug, Clone, PartialEq)]
pub struct TruthChannel {
    /// Exact SOC at each sample time (Coulomb integration of the pre-noise
    /// current).
    pub soc: Vec<f64>,
    /// Full pre-noise state at each sample time.
    pub states: Option<Vec<CellState>>,
    /// Pre-noise terminal voltage.
    pub voltage: Option<Vec<f64>>,
    /// Pre-noise applied current.
    pub current: Option<Vec<f64>>,
}

impl TruthChannel {
    pub fn soc_only(soc: Vec<f64>) -> Self {
        Self {
            soc,
            states: None,
            voltage: None,
            current: None,
        }
    }
}

/// Uniformly sampled time series of measured channels.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    dt: f64,
    time_s: Vec<f64>,
    current_a: Vec<f64>,
    voltage_v: Vec<f64>,
    power_w: Vec<f64>,
    labels: Vec<SegmentLabel>,
    truth: Option<TruthChannel>,
    annotations: Vec<String>,
}

impl Dataset {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        dt: f64,
        time_s: Vec<f64>,
        current_a: Vec<f64>,
        voltage_v: Vec<f64>,
        power_w: Vec<f64>,
        labels: Vec<SegmentLabel>,
    ) -> Result<Self> {
        let n = time_s.len();
        if n == 0 {
            return Err(Error::Empty("dataset"));
        }
        for (name, len) in [
            ("current_a", current_a.len()),
            ("voltage_v", voltage_v.len()),
            ("power_w", power_w.len()),
            ("labels", labels.len()),
        ] {
            if len != n {
                return Err(Error::Dataset(format!(
                    "channel {name} has {len} samples, expected {n}"
                )));
            }
        }
        if !(dt > 0.0) {
            return Err(Error::Dataset(format!("dt must be positive, got {dt}")));
        }
        Ok(Self {
            dt,
            time_s,
            current_a,
            voltage_v,
            power_w,
            labels,
            truth: None,
            annotations: Vec::new(),
        })
    }

    pub fn with_truth(mut self, truth: TruthChannel) -> Result<Self> {
        let n = self.len();
        let ok = truth.soc.len() == n
            && truth.states.as_ref().is_none_or(|v| v.len() == n)
            && truth.voltage.as_ref().is_none_or(|v| v.len() == n)
            && truth.current.as_ref().is_none_or(|v| v.len() == n);
        if !ok {
            return Err(Error::Dataset("truth channel length mismatch".into()));
        }
        self.truth = Some(truth);
        Ok(self)
    }

    pub fn push_annotation(&mut self, note: impl Into<String>) {
        self.annotations.push(note.into());
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.time_s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.time_s.is_empty()
    }

    pub fn time_s(&self) -> &[f64] {
        &self.time_s
    }

    pub fn current_a(&self) -> &[f64] {
        &self.current_a
    }

    pub fn voltage_v(&self) -> &[f64] {
        &self.voltage_v
    }

    pub fn power_w(&self) -> &[f64] {
        &self.power_w
    }

    pub fn labels(&self) -> &[SegmentLabel] {
        &self.labels
    }

    pub fn annotations(&self) -> &[String] {
        &self.annotations
    }

    /// Ground-truth side channel, present only on synthesised data. This is
    /// for validation metrics; estimation code paths must not read it.
    pub fn truth(&self) -> Option<&TruthChannel> {
        self.truth.as_ref()
    }

    /// Owned copy of the sample range `[start, end)`, truth included.
    pub fn slice(&self, start: usize, end: usize) -> Result<Dataset> {
        if start >= end || end > self.len() {
            return Err(Error::Dataset(format!(
                "invalid slice {start}..{end} of {} samples",
                self.len()
            )));
        }
        let truth = self.truth.as_ref().map(|t| TruthChannel {
            soc: t.soc[start..end].to_vec(),
            states: t.states.as_ref().map(|v| v[start..end].to_vec()),
            voltage: t.voltage.as_ref().map(|v| v[start..end].to_vec()),
            current: t.current.as_ref().map(|v| v[start..end].to_vec()),
        });
        let mut ds = Dataset {
            dt: self.dt,
            time_s: self.time_s[start..end].to_vec(),
            current_a: self.current_a[start..end].to_vec(),
            voltage_v: self.voltage_v[start..end].to_vec(),
            power_w: self.power_w[start..end].to_vec(),
            labels: self.labels[start..end].to_vec(),
            truth: None,
            annotations: self.annotations.clone(),
        };
        if let Some(t) = truth {
            ds = ds.with_truth(t)?;
        }
        Ok(ds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> Dataset {
        Dataset::new(
            1.0,
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, -1.0],
            vec![3.7, 3.71, 3.72],
            vec![3.7, 0.0, -3.72],
            vec![
                SegmentLabel::PulseDischarge,
                SegmentLabel::Rest,
                SegmentLabel::PulseCharge,
            ],
        )
        .unwrap()
    }

    #[test]
    fn rejects_mismatched_channels() {
        let err = Dataset::new(
            1.0,
            vec![0.0, 1.0],
            vec![1.0],
            vec![3.7, 3.7],
            vec![0.0, 0.0],
            vec![SegmentLabel::Rest, SegmentLabel::Rest],
        );
        assert!(err.is_err());
    }

    #[test]
    fn slice_preserves_channels() {
        let ds = tiny();
        let s = ds.slice(1, 3).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.current_a(), &[0.0, -1.0]);
        assert_eq!(s.labels()[0], SegmentLabel::Rest);
        assert!(ds.slice(2, 2).is_err());
        assert!(ds.slice(0, 9).is_err());
    }
}
