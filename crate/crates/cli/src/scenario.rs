//! Declarative scenario configuration.
//!
//! Scenarios are flat TOML with sections; unknown keys are rejected so typos
//! fail loudly instead of silently running defaults. Several entries are
//! calibration parameters rather than measured quantities (coincidence
//! window, integration time, illuminance-to-background conversion, residual
//! polarization rotation); the shipped files mark them as such.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use entlink_core::apt::AptPreset;
use entlink_core::optics::SkyCondition;
use entlink_core::qstate::AnalyzerAngles;

use crate::HarnessError;

/// One full session description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub seed: u64,
    pub trials: u64,
    pub source: SourceCfg,
    #[serde(default)]
    pub angles: AnglesCfg,
    pub links: LinksCfg,
    pub counting: CountingCfg,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceCfg {
    /// Pair rate at the source, pairs/s.
    pub pair_rate: f64,
    /// Source visibility (fringe contrast of the generated state).
    pub v_src: f64,
}

/// Analyzer settings in radians; defaults to the canonical projection groups.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnglesCfg {
    pub a: f64,
    pub a_prime: f64,
    pub b: f64,
    pub b_prime: f64,
}

impl Default for AnglesCfg {
    fn default() -> Self {
        let canonical = AnalyzerAngles::<f64>::canonical();
        Self {
            a: canonical.a,
            a_prime: canonical.a_prime,
            b: canonical.b,
            b_prime: canonical.b_prime,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinksCfg {
    pub alice: LinkCfg,
    pub bob: LinkCfg,
}

/// One air-to-ground (or bench) channel.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkCfg {
    /// Link length, m.
    pub distance: f64,
    /// Pupil diameter of both terminals, m.
    pub aperture: f64,
    /// Wavelength, m.
    pub wavelength: f64,
    /// Transmit beam FWHM, m; omitted means per-distance optimal waist.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub waist_fwhm: Option<f64>,
    pub condition: SkyCondition,
    /// Fixed coupling loss, dB (calibration residual).
    pub static_db: f64,
    /// Tracking preset: "ground", "flight", or "none" (bench).
    pub apt_preset: TrackingCfg,
    /// Receiver fiber mode field diameter, m.
    pub mode_field_diameter: f64,
    /// Background conversion, counts/s per lux (calibration).
    #[serde(default)]
    pub lx_to_counts: f64,
    /// Residual polarization rotation after correction, rad (calibration).
    #[serde(default)]
    pub residual_rotation: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrackingCfg {
    /// No tracking chain in the path (bench measurement).
    None,
    Ground,
    Flight,
}

impl TrackingCfg {
    pub fn preset(&self) -> Option<AptPreset> {
        match self {
            TrackingCfg::None => None,
            TrackingCfg::Ground => Some(AptPreset::Ground),
            TrackingCfg::Flight => Some(AptPreset::Flight),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountingCfg {
    /// Coincidence window, s (calibration); 3 ns when omitted.
    #[serde(default = "default_window")]
    pub window: f64,
    /// Integration per analyzer setting, s (calibration).
    pub integration: f64,
    /// Scene illuminance, lx; background = illuminance * lx_to_counts.
    #[serde(default)]
    pub illuminance_lx: f64,
}

fn default_window() -> f64 {
    entlink_core::counting::DEFAULT_COINCIDENCE_WINDOW_S
}

impl Scenario {
    pub fn validate(&self) -> Result<(), HarnessError> {
        let field = |name: &str, ok: bool| {
            if ok {
                Ok(())
            } else {
                Err(HarnessError::Validation(format!("field '{name}' is out of range")))
            }
        };
        field("trials", self.trials >= 1)?;
        field("source.pair_rate", self.source.pair_rate >= 0.0)?;
        field("source.v_src", (0.0..=1.0).contains(&self.source.v_src))?;
        field("counting.window", self.counting.window > 0.0)?;
        field("counting.integration", self.counting.integration > 0.0)?;
        field("counting.illuminance_lx", self.counting.illuminance_lx >= 0.0)?;
        for (label, link) in [("alice", &self.links.alice), ("bob", &self.links.bob)] {
            field(&format!("links.{label}.distance"), link.distance > 0.0)?;
            field(&format!("links.{label}.aperture"), link.aperture > 0.0)?;
            field(&format!("links.{label}.wavelength"), link.wavelength > 0.0)?;
            field(&format!("links.{label}.static_db"), link.static_db >= 0.0)?;
            field(
                &format!("links.{label}.mode_field_diameter"),
                link.mode_field_diameter > 0.0,
            )?;
            field(&format!("links.{label}.lx_to_counts"), link.lx_to_counts >= 0.0)?;
            if let Some(w) = link.waist_fwhm {
                field(&format!("links.{label}.waist_fwhm"), w > 0.0)?;
            }
        }
        self.analyzer_angles()?;
        Ok(())
    }

    pub fn analyzer_angles(&self) -> Result<AnalyzerAngles<f64>, HarnessError> {
        AnalyzerAngles::new(
            self.angles.a,
            self.angles.a_prime,
            self.angles.b,
            self.angles.b_prime,
        )
        .map_err(|e| HarnessError::Validation(format!("field 'angles': {e}")))
    }

    /// Canonical serialized form; field order is fixed by the struct.
    pub fn canonical_toml(&self) -> String {
        toml::to_string(self).expect("scenario serializes")
    }

    /// SHA-256 of the canonical form, for report provenance.
    pub fn config_hash(&self) -> String {
        let digest = Sha256::digest(self.canonical_toml().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn parse_scenario(text: &str, origin: &str) -> Result<Scenario, HarnessError> {
    let scenario: Scenario = toml::from_str(text).map_err(|e| HarnessError::Parse {
        path: origin.to_string(),
        message: e.to_string(),
    })?;
    scenario.validate()?;
    Ok(scenario)
}

pub fn load_scenario(path: &Path) -> Result<Scenario, HarnessError> {
    let text = crate::read_to_string(path)?;
    parse_scenario(&text, &path.display().to_string())
}

// ---------------------------------------------------------------------------
// Built-ins
// ---------------------------------------------------------------------------

pub const BUILTIN_SCENARIOS: &[(&str, &str)] = &[
    ("lab", include_str!("../scenarios/lab.toml")),
    ("field-day", include_str!("../scenarios/field-day.toml")),
    (
        "field-clear-night",
        include_str!("../scenarios/field-clear-night.toml"),
    ),
    (
        "field-rainy-night",
        include_str!("../scenarios/field-rainy-night.toml"),
    ),
];

pub fn builtin_scenario(name: &str) -> Option<&'static str> {
    BUILTIN_SCENARIOS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
}

/// Resolve a CLI argument: builtin scenario name first, then filesystem path.
pub fn resolve_scenario(arg: &str) -> Result<Scenario, HarnessError> {
    if let Some(text) = builtin_scenario(arg) {
        return parse_scenario(text, &format!("builtin:{arg}"));
    }
    load_scenario(Path::new(arg))
}
