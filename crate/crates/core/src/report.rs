//! Serialization helpers shared by every machine-readable report.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Significant digits used for every floating-point value written to a report.
pub const SIGNIFICANT_DIGITS: usize = 15;

/// Round to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .unwrap_or(x)
}

pub fn sig15<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x))
}

pub fn sig15_vec<S: Serializer>(xs: &[f64], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| round_sig(*x)))
}

pub fn sig15_opt<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&round_sig(*v)),
        None => s.serialize_none(),
    }
}

/// A value of α in `[0, 1)` that remembers the decimal text it was given as.
///
/// Reports echo the original text so runs are reproducible byte-for-byte.
#[derive(Debug, Clone, PartialEq)]
pub struct Alpha {
    text: String,
    value: f64,
}

impl Alpha {
    pub fn new(value: f64) -> Result<Self> {
        Self::check(value)?;
        Ok(Alpha {
            text: format!("{value}"),
            value,
        })
    }

    fn check(value: f64) -> Result<()> {
        if value.is_finite() && (0.0..1.0).contains(&value) {
            Ok(())
        } else {
            Err(Error::AlphaDomain(value))
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// The default sweep grid: tenths from 0 to 0.9 plus 0.25 and 0.75.
    pub fn default_grid() -> Vec<Alpha> {
        [
            "0", "0.1", "0.2", "0.25", "0.3", "0.4", "0.5", "0.6", "0.7", "0.75", "0.8", "0.9",
        ]
        .iter()
        .map(|s| s.parse().expect("grid literal"))
        .collect()
    }
}

impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let value: f64 = text
            .parse()
            .map_err(|_| Error::Config(format!("alpha {text:?} is not a number")))?;
        Self::check(value)?;
        Ok(Alpha {
            text: text.to_string(),
            value,
        })
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // Shortest round-trip formatting reproduces any decimal with <= 15 digits.
        s.serialize_f64(self.value)
    }
}

impl<'de> Deserialize<'de> for Alpha {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Alpha::new(v).map_err(serde::de::Error::custom),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}
