use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Numerical tolerances shared by the spectral, bounds and verify layers.
///
/// All bands scale with the magnitude of the quantity being compared.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Eigen-residual band is `residual * (1 + T_max)`.
    pub residual: f64,
    /// A strict inequality `a < b` is accepted when `b - a > strict * (1 + |b|)`.
    pub strict: f64,
    /// Two bound values are "equal" when within `tie * (1 + |value|)`.
    pub tie: f64,
    /// Power iteration step cap is `power_cap_factor * n`.
    pub power_cap_factor: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            residual: 1e-10,
            strict: 1e-9,
            tie: 1e-7,
            power_cap_factor: 100,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("residual", self.residual),
            ("strict", self.strict),
            ("tie", self.tie),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("tolerance {name} must be positive, got {v}")));
            }
        }
        if self.power_cap_factor == 0 {
            return Err(Error::Config("power_cap_factor must be positive".into()));
        }
        Ok(())
    }

    pub fn residual_band(&self, t_max: f64) -> f64 {
        self.residual * (1.0 + t_max.abs())
    }

    pub fn strict_band(&self, reference: f64) -> f64 {
        self.strict * (1.0 + reference.abs())
    }

    pub fn tie_band(&self, value: f64) -> f64 {
        self.tie * (1.0 + value.abs())
    }

    /// `true` when `lo < hi` by more than the strict band.
    pub fn strictly_less(&self, lo: f64, hi: f64) -> bool {
        hi - lo > self.strict_band(hi)
    }
}
