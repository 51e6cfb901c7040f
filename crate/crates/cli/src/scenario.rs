//! TOML scenario files for `polar simulate`.
//!
//! ```toml
//! seed = 7            # optional
//! trials = 1000000    # optional
//! tolerance = 1e-12   # optional
//!
//! [initial]
//! theta_deg = 0
//! alpha_deg = 0
//! branch = "+"
//!
//! [[stages]]
//! theta_deg = 45
//! alpha_deg = 0
//! ```
//!
//! Angles are degrees. Unknown keys are rejected with their line and column.

use std::path::Path;

use polarization_core::simulate::MeasurementScenario;
use polarization_core::{Branch, Direction};
use serde::Deserialize;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub initial: InitialEntry,
    pub stages: Vec<StageEntry>,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialEntry {
    pub theta_deg: f64,
    pub alpha_deg: f64,
    pub branch: String,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StageEntry {
    pub theta_deg: f64,
    pub alpha_deg: f64,
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn scenario(&self) -> Result<MeasurementScenario, String> {
        let branch = parse_branch(&self.initial.branch)
            .map_err(|e| format!("initial.branch: {e}"))?;
        let initial = Direction::from_degrees(self.initial.theta_deg, self.initial.alpha_deg);
        let stages = self
            .stages
            .iter()
            .map(|s| Direction::from_degrees(s.theta_deg, s.alpha_deg))
            .collect();
        MeasurementScenario::new(initial.with(branch), stages).map_err(|e| e.to_string())
    }
}

/// Accepts `+`, `-`, `−` (U+2212), `plus`, `minus`, `parallel`,
/// `perpendicular`.
pub fn parse_branch(s: &str) -> Result<Branch, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "+" | "plus" | "parallel" | "p" => Ok(Branch::Plus),
        "-" | "\u{2212}" | "minus" | "perpendicular" | "m" => Ok(Branch::Minus),
        other => Err(format!("invalid branch `{other}`, expected `+` or `-`")),
    }
}
