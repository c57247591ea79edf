//! Target states as text: one amplitude per line as `re im`. Blank lines and
//! lines starting with `#` are skipped.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use qas_core::qsim::{PureState, NORM_TOLERANCE};

use crate::{HarnessError, Result};

pub fn parse_target(text: &str) -> std::result::Result<PureState, String> {
    let mut amps = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [re, im] = fields[..] else {
            return Err(format!("line {}: expected `re im`, found {line:?}", lineno + 1));
        };
        let parse = |s: &str| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("line {}: bad number {s:?}", lineno + 1))
        };
        amps.push(Complex64::new(parse(re)?, parse(im)?));
    }
    if amps.len() < 2 || !amps.len().is_power_of_two() {
        return Err(format!(
            "{} amplitudes; expected a power of two, at least 2",
            amps.len()
        ));
    }
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(format!("norm² is {norm}, not 1 within {NORM_TOLERANCE:e}"));
    }
    PureState::from_amplitudes(amps).map_err(|e| e.to_string())
}

pub fn load_target(path: &Path) -> Result<PureState> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::TargetFile {
        path: path.to_owned(),
        reason: e.to_string(),
    })?;
    parse_target(&text).map_err(|reason| HarnessError::TargetFile {
        path: path.to_owned(),
        reason,
    })
}

pub fn format_target(state: &PureState) -> String {
    let mut out = String::new();
    for a in state.amplitudes() {
        writeln!(out, "{:?} {:?}", a.re, a.im).unwrap();
    }
    out
}
