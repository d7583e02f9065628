use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical thresholds used when the exact statements are checked in floating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Relative threshold below which an eigenvalue counts as zero.
    pub eig_zero: f64,
    /// Allowed (relative) negative dip of the smallest eigenvalue in PSD verdicts.
    pub psd_slack: f64,
    /// Inner-product matching tolerance.
    pub angle_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eig_zero: 1e-8, psd_slack: 1e-9, angle_tol: 1e-9 }
    }
}

impl Tolerance {
    pub fn new(eig_zero: f64, psd_slack: f64, angle_tol: f64) -> Result<Self> {
        let tol = Tolerance { eig_zero, psd_slack, angle_tol };
        tol.check()?;
        Ok(tol)
    }

    fn check(&self) -> Result<()> {
        for (name, v) in [("eig_zero", self.eig_zero), ("psd_slack", self.psd_slack), ("angle_tol", self.angle_tol)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParams(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// Parses overrides on top of the defaults.
    ///
    /// Accepts either a bare number (sets `angle_tol`) or comma-separated
    /// `key=value` pairs, e.g. `eig_zero=1e-7,angle_tol=1e-8`.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut tol = Tolerance::default();
        let spec = spec.trim();
        if spec.is_empty() {
            return Ok(tol);
        }
        if let Ok(v) = spec.parse::<f64>() {
            tol.angle_tol = v;
            tol.check()?;
            return Ok(tol);
        }
        for part in spec.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad number in {part:?}")))?;
            match key.trim() {
                "eig_zero" => tol.eig_zero = value,
                "psd_slack" => tol.psd_slack = value,
                "angle_tol" => tol.angle_tol = value,
                other => return Err(Error::Parse(format!("unknown tolerance key {other:?}"))),
            }
        }
        tol.check()?;
        Ok(tol)
    }

    /// Defaults, overridden by the `EQUICODE_TOL` environment variable when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var("EQUICODE_TOL") {
            Ok(spec) => Tolerance::parse(&spec),
            Err(_) => Ok(Tolerance::default()),
        }
    }
}
