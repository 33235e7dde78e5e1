//! Plain-text table formats. Column orders are normative:
//!
//! - parameter table: `soc,r0,r1,r2,tau1,tau2,m,gamma` (ohms, seconds, volts)
//! - OCV table: `soc,v_charge,v_discharge` (volts)
//! - profile: `time_s,mode,value,label` (A in current mode, W in power mode)
//! - dataset: `time_s,current_a,voltage_v,power_w,label[,true_soc]`
//!
//! Floats are written in Rust's shortest round-trip representation, so a
//! write/read cycle reproduces values bit-exactly.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use crate::data::{Dataset, TruthChannel};
use crate::error::{Error, Result};
use crate::model::{HysteresisMode, OcvData, ParamSet, ParameterTable};
use crate::protocol::{Profile, ProfileMode, SegmentLabel};

pub const PARAM_TABLE_HEADER: &str = "soc,r0,r1,r2,tau1,tau2,m,gamma";
pub const OCV_HEADER: &str = "soc,v_charge,v_discharge";
pub const PROFILE_HEADER: &str = "time_s,mode,value,label";
pub const DATASET_HEADER: &str = "time_s,current_a,voltage_v,power_w,label";
pub const DATASET_HEADER_TRUTH: &str = "time_s,current_a,voltage_v,power_w,label,true_soc";

fn parse_f64(field: &str, line: usize) -> Result<f64> {
    field.trim().parse::<f64>().map_err(|_| Error::Csv {
        line,
        msg: format!("cannot parse '{field}' as a number"),
    })
}

fn expect_fields(fields: &[&str], n: usize, line: usize) -> Result<()> {
    if fields.len() != n {
        return Err(Error::Csv {
            line,
            msg: format!("expected {n} fields, found {}", fields.len()),
        });
    }
    Ok(())
}

fn read_lines<R: Read>(reader: R) -> Result<Vec<String>> {
    let mut lines = Vec::new();
    for (k, line) in BufReader::new(reader).lines().enumerate() {
        let line = line.map_err(|e| Error::Csv {
            line: k + 1,
            msg: e.to_string(),
        })?;
        lines.push(line);
    }
    Ok(lines)
}

fn check_header(lines: &[String], expected: &str) -> Result<()> {
    match lines.first() {
        Some(h) if h.trim() == expected => Ok(()),
        Some(h) => Err(Error::Csv {
            line: 1,
            msg: format!("expected header '{expected}', found '{}'", h.trim()),
        }),
        None => Err(Error::Csv {
            line: 1,
            msg: "empty file".into(),
        }),
    }
}

// ---------------------------------------------------------------- parameters

pub fn write_param_table<W: Write>(mut w: W, table: &ParameterTable) -> Result<()> {
    let io_err = |e: std::io::Error| Error::Csv {
        line: 0,
        msg: e.to_string(),
    };
    writeln!(w, "{PARAM_TABLE_HEADER}").map_err(io_err)?;
    for (soc, p) in table.breakpoints().iter().zip(table.entries()) {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            soc, p.r0, p.r1, p.r2, p.tau1, p.tau2, p.m, p.gamma
        )
        .map_err(io_err)?;
    }
    Ok(())
}

/// Hysteresis mode is inferred: a table whose `m` and `gamma` columns are all
/// zero loads as a plain (hysteresis-free) table.
pub fn read_param_table<R: Read>(reader: R) -> Result<ParameterTable> {
    let lines = read_lines(reader)?;
    check_header(&lines, PARAM_TABLE_HEADER)?;
    let mut soc = Vec::new();
    let mut entries = Vec::new();
    for (k, line) in lines.iter().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let lineno = k + 1;
        expect_fields(&fields, 8, lineno)?;
        soc.push(parse_f64(fields[0], lineno)?);
        entries.push(ParamSet {
            r0: parse_f64(fields[1], lineno)?,
            r1: parse_f64(fields[2], lineno)?,
            r2: parse_f64(fields[3], lineno)?,
            tau1: parse_f64(fields[4], lineno)?,
            tau2: parse_f64(fields[5], lineno)?,
            m: parse_f64(fields[6], lineno)?,
            gamma: parse_f64(fields[7], lineno)?,
        });
    }
    let mode = if entries.iter().all(|e| e.m == 0.0 && e.gamma == 0.0) {
        HysteresisMode::None
    } else {
        HysteresisMode::Esc
    };
    ParameterTable::new(soc, entries, mode)
}

// ----------------------------------------------------------------------- ocv

pub fn write_ocv<W: Write>(mut w: W, ocv: &OcvData) -> Result<()> {
    let io_err = |e: std::io::Error| Error::Csv {
        line: 0,
        msg: e.to_string(),
    };
    writeln!(w, "{OCV_HEADER}").map_err(io_err)?;
    for ((soc, vc), vd) in ocv
        .breakpoints()
        .iter()
        .zip(ocv.v_charge())
        .zip(ocv.v_discharge())
    {
        writeln!(w, "{soc},{vc},{vd}").map_err(io_err)?;
    }
    Ok(())
}

pub fn read_ocv<R: Read>(reader: R) -> Result<OcvData> {
    let lines = read_lines(reader)?;
    check_header(&lines, OCV_HEADER)?;
    let mut soc = Vec::new();
    let mut vc = Vec::new();
    let mut vd = Vec::new();
    for (k, line) in lines.iter().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let lineno = k + 1;
        expect_fields(&fields, 3, lineno)?;
        soc.push(parse_f64(fields[0], lineno)?);
        vc.push(parse_f64(fields[1], lineno)?);
        vd.push(parse_f64(fields[2], lineno)?);
    }
    OcvData::from_branches(soc, vc, vd)
}

// ------------------------------------------------------------------- profile

pub fn write_profile<W: Write>(mut w: W, profile: &Profile) -> Result<()> {
    let io_err = |e: std::io::Error| Error::Csv {
        line: 0,
        msg: e.to_string(),
    };
    writeln!(w, "{PROFILE_HEADER}").map_err(io_err)?;
    let mode = profile.mode();
    for (k, (&v, &l)) in profile.values().iter().zip(profile.labels()).enumerate() {
        let t = k as f64 * profile.dt();
        writeln!(w, "{t},{mode},{v},{l}").map_err(io_err)?;
    }
    Ok(())
}

pub fn read_profile<R: Read>(reader: R) -> Result<Profile> {
    let lines = read_lines(reader)?;
    check_header(&lines, PROFILE_HEADER)?;
    let mut times = Vec::new();
    let mut values = Vec::new();
    let mut labels = Vec::new();
    let mut mode: Option<ProfileMode> = None;
    for (k, line) in lines.iter().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let lineno = k + 1;
        expect_fields(&fields, 4, lineno)?;
        times.push(parse_f64(fields[0], lineno)?);
        let row_mode = ProfileMode::from_str(fields[1].trim()).map_err(|e| Error::Csv {
            line: lineno,
            msg: e.to_string(),
        })?;
        match mode {
            None => mode = Some(row_mode),
            Some(m) if m == row_mode => {}
            Some(m) => {
                return Err(Error::Csv {
                    line: lineno,
                    msg: format!("mixed profile modes: {m} then {row_mode}"),
                })
            }
        }
        values.push(parse_f64(fields[2], lineno)?);
        labels.push(SegmentLabel::from_str(fields[3].trim()).map_err(|e| Error::Csv {
            line: lineno,
            msg: e.to_string(),
        })?);
    }
    let mode = mode.ok_or(Error::Empty("profile"))?;
    if times.len() < 2 {
        return Err(Error::Csv {
            line: 2,
            msg: "profile needs at least 2 samples".into(),
        });
    }
    let dt = times[1] - times[0];
    if !(dt > 0.0) {
        return Err(Error::Csv {
            line: 3,
            msg: format!("non-increasing time axis, dt = {dt}"),
        });
    }
    Profile::from_parts(dt, mode, values, labels)
}

// ------------------------------------------------------------------- dataset

/// Write the measured channels; `with_truth` adds the `true_soc` column when
/// the dataset carries it.
pub fn write_dataset<W: Write>(mut w: W, ds: &Dataset, with_truth: bool) -> Result<()> {
    let io_err = |e: std::io::Error| Error::Csv {
        line: 0,
        msg: e.to_string(),
    };
    let truth = if with_truth { ds.truth() } else { None };
    match truth {
        Some(_) => writeln!(w, "{DATASET_HEADER_TRUTH}").map_err(io_err)?,
        None => writeln!(w, "{DATASET_HEADER}").map_err(io_err)?,
    }
    for k in 0..ds.len() {
        let t = ds.time_s()[k];
        let i = ds.current_a()[k];
        let v = ds.voltage_v()[k];
        let p = ds.power_w()[k];
        let l = ds.labels()[k];
        match truth {
            Some(tr) => writeln!(w, "{t},{i},{v},{p},{l},{}", tr.soc[k]).map_err(io_err)?,
            None => writeln!(w, "{t},{i},{v},{p},{l}").map_err(io_err)?,
        }
    }
    Ok(())
}

pub struct DatasetReadOutcome {
    pub dataset: Dataset,
    pub warnings: Vec<String>,
}

/// Read and validate a dataset: monotone time axis, uniform sampling within
/// 1% of the nominal period. Jitter inside the tolerance is accepted with a
/// resample warning; duplicates and gaps are errors naming the row.
pub fn read_dataset<R: Read>(reader: R) -> Result<DatasetReadOutcome> {
    let lines = read_lines(reader)?;
    let with_truth = match lines.first().map(|h| h.trim()) {
        Some(h) if h == DATASET_HEADER => false,
        Some(h) if h == DATASET_HEADER_TRUTH => true,
        Some(h) => {
            return Err(Error::Csv {
                line: 1,
                msg: format!("unrecognised dataset header '{h}'"),
            })
        }
        None => {
            return Err(Error::Csv {
                line: 1,
                msg: "empty file".into(),
            })
        }
    };
    let ncols = if with_truth { 6 } else { 5 };
    let mut time = Vec::new();
    let mut current = Vec::new();
    let mut voltage = Vec::new();
    let mut power = Vec::new();
    let mut labels = Vec::new();
    let mut true_soc = Vec::new();
    for (k, line) in lines.iter().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let lineno = k + 1;
        expect_fields(&fields, ncols, lineno)?;
        time.push(parse_f64(fields[0], lineno)?);
        current.push(parse_f64(fields[1], lineno)?);
        voltage.push(parse_f64(fields[2], lineno)?);
        power.push(parse_f64(fields[3], lineno)?);
        labels.push(SegmentLabel::from_str(fields[4].trim()).map_err(|e| Error::Csv {
            line: lineno,
            msg: e.to_string(),
        })?);
        if with_truth {
            true_soc.push(parse_f64(fields[5], lineno)?);
        }
    }
    if time.len() < 2 {
        return Err(Error::Csv {
            line: lines.len(),
            msg: "dataset needs at least 2 samples".into(),
        });
    }

    let n = time.len();
    let dt = (time[n - 1] - time[0]) / (n - 1) as f64;
    if !(dt > 0.0) {
        return Err(Error::Csv {
            line: 2,
            msg: "time axis does not advance".into(),
        });
    }
    let mut warnings = Vec::new();
    let mut max_jitter = 0.0f64;
    for k in 1..n {
        let diff = time[k] - time[k - 1];
        let lineno = k + 2; // header + 1-based data rows
        if diff == 0.0 {
            return Err(Error::Csv {
                line: lineno,
                msg: format!("duplicated timestamp {}", time[k]),
            });
        }
        if diff < 0.0 {
            return Err(Error::Csv {
                line: lineno,
                msg: format!("non-monotone time: {} after {}", time[k], time[k - 1]),
            });
        }
        let jitter = (diff - dt).abs() / dt;
        if jitter > 0.01 {
            return Err(Error::Csv {
                line: lineno,
                msg: format!(
                    "sample period {diff:.6} s deviates {:.2}% from nominal {dt:.6} s",
                    jitter * 100.0
                ),
            });
        }
        max_jitter = max_jitter.max(jitter);
    }
    if max_jitter > 1e-6 {
        warnings.push(format!(
            "time axis jitter up to {:.3}% of dt; consider resampling",
            max_jitter * 100.0
        ));
    }

    let mut ds = Dataset::new(dt, time, current, voltage, power, labels)?;
    if with_truth {
        ds = ds.with_truth(TruthChannel::soc_only(true_soc))?;
    }
    Ok(DatasetReadOutcome {
        dataset: ds,
        warnings,
    })
}

// -------------------------------------------------------------- path helpers

pub fn save_param_table(path: impl AsRef<Path>, table: &ParameterTable) -> Result<()> {
    let f = File::create(&path).map_err(|e| Error::io(&path, e))?;
    write_param_table(BufWriter::new(f), table)
}

pub fn load_param_table(path: impl AsRef<Path>) -> Result<ParameterTable> {
    let f = File::open(&path).map_err(|e| Error::io(&path, e))?;
    read_param_table(f)
}

pub fn save_ocv(path: impl AsRef<Path>, ocv: &OcvData) -> Result<()> {
    let f = File::create(&path).map_err(|e| Error::io(&path, e))?;
    write_ocv(BufWriter::new(f), ocv)
}

pub fn load_ocv(path: impl AsRef<Path>) -> Result<OcvData> {
    let f = File::open(&path).map_err(|e| Error::io(&path, e))?;
    read_ocv(f)
}

pub fn save_profile(path: impl AsRef<Path>, profile: &Profile) -> Result<()> {
    let f = File::create(&path).map_err(|e| Error::io(&path, e))?;
    write_profile(BufWriter::new(f), profile)
}

pub fn load_profile(path: impl AsRef<Path>) -> Result<Profile> {
    let f = File::open(&path).map_err(|e| Error::io(&path, e))?;
    read_profile(f)
}

pub fn save_dataset(path: impl AsRef<Path>, ds: &Dataset, with_truth: bool) -> Result<()> {
    let f = File::create(&path).map_err(|e| Error::io(&path, e))?;
    write_dataset(BufWriter::new(f), ds, with_truth)
}

pub fn load_dataset(path: impl AsRef<Path>) -> Result<DatasetReadOutcome> {
    let f = File::open(&path).map_err(|e| Error::io(&path, e))?;
    read_dataset(f)
}
