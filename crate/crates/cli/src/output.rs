//! Locale-independent number formatting shared by every output format.

use serde::{Serialize, Serializer};

/// 17 significant digits in scientific notation with a signed exponent,
/// e.g. `2.5000000000000000e-1`; round-trips any f64.
pub fn fmt_num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let s = format!("{x:.16e}");
    match s.split_once('e') {
        Some((m, e)) if !e.starts_with('-') => format!("{m}e+{e}"),
        _ => s,
    }
}

/// An f64 that serializes to JSON with [`fmt_num`] digits. Non-finite
/// values become `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let n: serde_json::Number = fmt_num(self.0).parse().map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct EstimateOut {
    pub value: Num,
    pub stderr: Num,
}

impl From<qbc_core::protocol::Estimate> for EstimateOut {
    fn from(e: qbc_core::protocol::Estimate) -> Self {
        Self {
            value: Num(e.value),
            stderr: Num(e.stderr),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}
