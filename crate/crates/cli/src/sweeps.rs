//! Link-budget sweep tables (diffraction loss vs distance or aperture).

use std::path::Path;

use serde::{Deserialize, Serialize};

use entlink_core::optics::{diffraction_loss_db, fwhm_to_waist, BeamGeometry, WaistMode};

use crate::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    /// Loss vs link distance at fixed aperture.
    Distance,
    /// Loss vs pupil diameter at fixed distance.
    Aperture,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WaistCfg {
    /// Per-distance optimal waist under the pupil constraint.
    Optimal,
    /// Fixed transmit FWHM given by `waist_fwhm`.
    Fixed,
    /// Transmit FWHM equal to the pupil diameter (symmetric-beam reading).
    MatchAperture,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub kind: SweepKind,
    pub wavelength: f64,
    pub waist: WaistCfg,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub waist_fwhm: Option<f64>,
    /// Fixed pupil diameter, m (distance sweeps).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aperture: Option<f64>,
    /// Fixed link distance, m (aperture sweeps).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<f64>,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl SweepSpec {
    fn validate(&self) -> Result<(), HarnessError> {
        if !(self.start > 0.0 && self.stop > self.start && self.steps >= 2) {
            return Err(HarnessError::Validation(
                "sweep needs 0 < start < stop and steps >= 2".into(),
            ));
        }
        match self.kind {
            SweepKind::Distance if self.aperture.is_none() => Err(HarnessError::Validation(
                "field 'aperture' required for a distance sweep".into(),
            )),
            SweepKind::Aperture if self.distance.is_none() => Err(HarnessError::Validation(
                "field 'distance' required for an aperture sweep".into(),
            )),
            _ => match (self.waist, self.waist_fwhm) {
                (WaistCfg::Fixed, None) => Err(HarnessError::Validation(
                    "field 'waist_fwhm' required when waist = \"fixed\"".into(),
                )),
                _ => Ok(()),
            },
        }
    }

    fn waist_mode(&self, aperture: f64) -> WaistMode<f64> {
        match self.waist {
            WaistCfg::Optimal => WaistMode::Optimal,
            WaistCfg::Fixed => WaistMode::Fixed(fwhm_to_waist(
                self.waist_fwhm.expect("validated: fixed waist has a value"),
            )),
            WaistCfg::MatchAperture => WaistMode::Fixed(fwhm_to_waist(aperture)),
        }
    }
}

/// Compute the sweep and verify the expected monotone shape (loss cannot
/// drop with distance or grow with aperture under this model).
pub fn run_linkbudget(spec: &SweepSpec) -> Result<Vec<(f64, f64)>, HarnessError> {
    spec.validate()?;
    let step = (spec.stop - spec.start) / (spec.steps - 1) as f64;
    let mut rows = Vec::with_capacity(spec.steps);
    for i in 0..spec.steps {
        let x = spec.start + step * i as f64;
        let loss = match spec.kind {
            SweepKind::Distance => {
                let aperture = spec.aperture.expect("validated");
                let geometry =
                    BeamGeometry::symmetric(spec.wavelength, aperture, spec.waist_mode(aperture))
                        .map_err(|e| HarnessError::Validation(e.to_string()))?;
                diffraction_loss_db(&geometry, x)
            }
            SweepKind::Aperture => {
                let geometry =
                    BeamGeometry::symmetric(spec.wavelength, x, spec.waist_mode(x))
                        .map_err(|e| HarnessError::Validation(e.to_string()))?;
                diffraction_loss_db(&geometry, spec.distance.expect("validated"))
            }
        };
        rows.push((x, loss));
    }
    for pair in rows.windows(2) {
        let ok = match spec.kind {
            SweepKind::Distance => pair[1].1 >= pair[0].1 - 1e-9,
            SweepKind::Aperture => pair[1].1 <= pair[0].1 + 1e-9,
        };
        if !ok {
            return Err(HarnessError::Divergence(format!(
                "sweep lost monotonicity near x = {}",
                pair[1].0
            )));
        }
    }
    Ok(rows)
}

pub fn sweep_csv(spec: &SweepSpec, rows: &[(f64, f64)]) -> String {
    let header = match spec.kind {
        SweepKind::Distance => "distance_m,loss_db\n",
        SweepKind::Aperture => "aperture_m,loss_db\n",
    };
    let mut out = String::from(header);
    for (x, loss) in rows {
        out.push_str(&format!("{x},{loss}\n"));
    }
    out
}

pub const BUILTIN_SWEEPS: &[(&str, &str)] = &[
    ("widearea", include_str!("../scenarios/sweep-widearea.toml")),
    (
        "local-distance",
        include_str!("../scenarios/sweep-local-distance.toml"),
    ),
    (
        "local-aperture",
        include_str!("../scenarios/sweep-local-aperture.toml"),
    ),
];

pub fn resolve_sweep(arg: &str) -> Result<SweepSpec, HarnessError> {
    let (text, origin) = match BUILTIN_SWEEPS.iter().find(|(n, _)| *n == arg) {
        Some((name, text)) => (text.to_string(), format!("builtin:{name}")),
        None => (
            crate::read_to_string(Path::new(arg))?,
            arg.to_string(),
        ),
    };
    toml::from_str(&text).map_err(|e| HarnessError::Parse {
        path: origin,
        message: e.to_string(),
    })
}
