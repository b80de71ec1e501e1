//! Scenario files: the versioned JSON input every subcommand consumes.

use khframe::units::{AtomSpec, LaserParams};
use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::AppError;

pub const SCHEMA_VERSION: u32 = 1;

/// Fixtures shipped with the binary, addressable by bare name.
pub const BUNDLED: &[(&str, &str)] = &[
    ("he", include_str!("../fixtures/he.json")),
    ("ne", include_str!("../fixtures/ne.json")),
];

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub version: u32,
    pub atom: AtomSection,
    pub laser: LaserSection,
    #[serde(default, skip_serializing_if = "RunSection::is_default")]
    pub run: RunSection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub z: u32,
    pub ionization_ev: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaserSection {
    pub photon_ev: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intensity_w_cm2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ponderomotive_ev: Option<f64>,
}

/// Optional tuning knobs; every field has a command-side default.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    /// Relative tail bound at which the channel sum stops.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_rel_tol: Option<f64>,
    /// Leading ionization channels kept in CSV output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub store_channels: Option<usize>,
    /// Cap on summed ionization channels.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_channels: Option<u32>,
    /// Cap on emitted harmonic lines.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_lines: Option<usize>,
    /// Drive periods covered by time-series output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub periods: Option<u32>,
    /// Time-series samples per drive period.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples_per_period: Option<usize>,
}

impl RunSection {
    fn is_default(&self) -> bool {
        *self == Self::default()
    }
}

impl Scenario {
    /// Load from a path, or from a bundled fixture when `source` names one
    /// and no such file exists.
    pub fn load(source: &str) -> Result<Self, AppError> {
        let path = Path::new(source);
        let (text, origin) = if path.exists() {
            (
                std::fs::read_to_string(path).map_err(|e| {
                    AppError::Io(format!("reading {}: {e}", path.display()))
                })?,
                source.to_string(),
            )
        } else if let Some((name, body)) =
            BUNDLED.iter().find(|(name, _)| *name == source)
        {
            ((*body).to_string(), format!("bundled fixture '{name}'"))
        } else {
            return Err(AppError::Io(format!(
                "scenario '{source}' is neither a readable file nor a bundled \
                 fixture ({})",
                BUNDLED
                    .iter()
                    .map(|(n, _)| *n)
                    .collect::<Vec<_>>()
                    .join(", ")
            )));
        };
        let scenario: Scenario = serde_json::from_str(&text)
            .map_err(|e| AppError::Schema(format!("{origin}: {e}")))?;
        scenario.validate().map_err(|problems| {
            AppError::Schema(format!("{origin}: {}", problems.join("; ")))
        })?;
        Ok(scenario)
    }

    /// Collect every field-level problem instead of stopping at the first.
    fn validate(&self) -> Result<(), Vec<String>> {
        let mut problems = Vec::new();
        if self.version != SCHEMA_VERSION {
            problems.push(format!(
                "version: expected {SCHEMA_VERSION}, got {}",
                self.version
            ));
        }
        if self.atom.z == 0 {
            problems.push("atom.z: must be at least 1".into());
        }
        if !(self.atom.ionization_ev.is_finite() && self.atom.ionization_ev > 0.0) {
            problems.push(format!(
                "atom.ionization_ev: must be positive, got {}",
                self.atom.ionization_ev
            ));
        }
        if !(self.laser.photon_ev.is_finite() && self.laser.photon_ev > 0.0) {
            problems.push(format!(
                "laser.photon_ev: must be positive, got {}",
                self.laser.photon_ev
            ));
        }
        match (self.laser.intensity_w_cm2, self.laser.ponderomotive_ev) {
            (Some(_), Some(_)) => problems.push(
                "laser: give exactly one of intensity_w_cm2 and \
                 ponderomotive_ev, not both"
                    .into(),
            ),
            (None, None) => problems.push(
                "laser: one of intensity_w_cm2 or ponderomotive_ev is required"
                    .into(),
            ),
            (Some(i), None) if !(i.is_finite() && i > 0.0) => problems.push(
                format!("laser.intensity_w_cm2: must be positive, got {i}"),
            ),
            (None, Some(u)) if !(u.is_finite() && u > 0.0) => problems.push(
                format!("laser.ponderomotive_ev: must be positive, got {u}"),
            ),
            _ => {}
        }
        for (field, value) in [
            ("run.tail_rel_tol", self.run.tail_rel_tol),
            ("run.periods", self.run.periods.map(f64::from)),
            (
                "run.samples_per_period",
                self.run.samples_per_period.map(|v| v as f64),
            ),
        ] {
            if let Some(v) = value {
                if !(v.is_finite() && v > 0.0) {
                    problems.push(format!("{field}: must be positive, got {v}"));
                }
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(problems)
        }
    }

    pub fn atom(&self) -> Result<AtomSpec, AppError> {
        AtomSpec::new(self.atom.z, self.atom.ionization_ev).map_err(AppError::Lib)
    }

    pub fn laser(&self) -> Result<LaserParams, AppError> {
        match (self.laser.intensity_w_cm2, self.laser.ponderomotive_ev) {
            (Some(i), None) => {
                LaserParams::from_intensity(self.laser.photon_ev, i)
                    .map_err(AppError::Lib)
            }
            (None, Some(u)) => {
                LaserParams::from_ponderomotive(self.laser.photon_ev, u)
                    .map_err(AppError::Lib)
            }
            // validate() rules the remaining combinations out.
            _ => unreachable!("scenario validated on load"),
        }
    }

    pub fn label(&self) -> String {
        self.atom
            .name
            .clone()
            .unwrap_or_else(|| format!("z = {}", self.atom.z))
    }
}
