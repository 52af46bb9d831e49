//! Run settings shared by the command-line tools.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::poly::Tolerances;

/// Which walk direction to number lobes in; `Both` computes the two and
/// insists that they agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OrientationChoice {
    Ccw,
    Cw,
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub tol_green: f64,
    pub tol_angle: f64,
    pub max_iter: usize,
    pub esc_radius_factor: f64,
    pub resolution: usize,
    pub depth: usize,
    pub orientation: OrientationChoice,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let t = Tolerances::default();
        Self {
            tol_green: t.tol_green,
            tol_angle: t.tol_angle,
            max_iter: t.max_iter,
            esc_radius_factor: t.esc_radius_factor,
            resolution: 1024,
            depth: 2,
            orientation: OrientationChoice::Ccw,
            output: None,
        }
    }
}

impl RunConfig {
    pub fn from_json(s: &str) -> Result<Self, String> {
        serde_json::from_str(s).map_err(|e| e.to_string())
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), String> {
        for (name, v) in [
            ("tol_green", self.tol_green),
            ("tol_angle", self.tol_angle),
            ("esc_radius_factor", self.esc_radius_factor),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(format!("{name} must be positive, got {v}"));
            }
        }
        if self.max_iter == 0 {
            return Err("max_iter must be positive".into());
        }
        if self.resolution < 64 {
            return Err(format!("resolution must be at least 64, got {}", self.resolution));
        }
        Ok(())
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            tol_green: self.tol_green,
            tol_angle: self.tol_angle,
            max_iter: self.max_iter,
            esc_radius_factor: self.esc_radius_factor,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_files_keep_defaults() {
        let c = RunConfig::from_json(r#"{"resolution": 2048, "orientation": "both"}"#).unwrap();
        assert_eq!(c.resolution, 2048);
        assert_eq!(c.orientation, OrientationChoice::Both);
        assert_eq!(c.tol_green, 1e-12);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn bad_values_rejected() {
        assert!(RunConfig::from_json(r#"{"colour": 1}"#).is_err());
        let c = RunConfig { resolution: 32, ..RunConfig::default() };
        assert!(c.validate().is_err());
        let c = RunConfig { tol_angle: 0.0, ..RunConfig::default() };
        assert!(c.validate().is_err());
    }
}
