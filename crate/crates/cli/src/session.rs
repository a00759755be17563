//! Seeded Monte Carlo CHSH sessions over a scenario.
//!
//! Per trial: simulate the tracking chain of each station, turn the residual
//! jitter into a pointing penalty, compose link budgets, generate the four
//! coincidence records of the Bell settings, and estimate S. Trials fan out
//! in parallel; per-trial seeds derive from (scenario seed, trial index), so
//! the report is independent of scheduling. Tracking-lock loss marks the
//! trial failed instead of aborting the session.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use entlink_core::apt::{self, AptError};
use entlink_core::counting::{
    self, accidental_rate, estimate_s, singles_rates, CoincidenceRecord, CountingConfig,
};
use entlink_core::optics::{
    fwhm_to_waist, total_link_budget, BeamGeometry, FiberMode, LinkBudget, WaistMode,
};
use entlink_core::qstate::{rotation_unitary, werner, TwoQubitState};
use entlink_core::seed;

use crate::scenario::{LinkCfg, Scenario};
use crate::HarnessError;

/// Per-station numbers of one trial.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StationStats {
    /// Per-axis residual jitter at the fiber plane, m (0 for bench links).
    pub jitter_rms_m: f64,
    pub budget: LinkBudget<f64>,
}

/// Measurement outcome of one completed trial.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub s_signed: f64,
    pub s_abs: f64,
    pub sigma_s: f64,
    pub violation_sigmas: f64,
    /// Accidental coincidence rate per setting (all four combinations), /s.
    pub accidental_rate_per_setting: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub trial: u64,
    /// Tracking lock lost on some station; no measurement for this trial.
    pub failed: bool,
    pub alice: Option<StationStats>,
    pub bob: Option<StationStats>,
    pub measurement: Option<Measurement>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateStats {
    pub completed: u64,
    pub failed: u64,
    pub mean_s_abs: f64,
    pub std_s_abs: f64,
    pub mean_sigma_s: f64,
    pub mean_violation_sigmas: f64,
    pub mean_accidental_rate: f64,
}

/// Full session output; aggregates are recomputable from the rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub name: String,
    pub version: String,
    pub config_hash: String,
    pub seed: u64,
    pub trials: u64,
    pub rows: Vec<TrialOutcome>,
    pub aggregate: Option<AggregateStats>,
}

fn link_geometry(link: &LinkCfg) -> Result<BeamGeometry<f64>, HarnessError> {
    let waist_mode = match link.waist_fwhm {
        Some(fwhm) => WaistMode::Fixed(fwhm_to_waist(fwhm)),
        None => WaistMode::Optimal,
    };
    BeamGeometry::symmetric(link.wavelength, link.aperture, waist_mode)
        .map_err(|e| HarnessError::Validation(e.to_string()))
}

/// Simulate one station's tracking and budget. `Ok(None)` means lock lost.
fn station(link: &LinkCfg, seed_value: u64) -> Result<Option<StationStats>, HarnessError> {
    let jitter = match link.apt_preset.preset() {
        None => 0.0,
        Some(preset) => {
            let trace = apt::simulate_apt(
                &preset.config::<f64>(),
                &preset.disturbance::<f64>(),
                link.distance,
                apt::DEFAULT_DURATION_S,
                apt::DEFAULT_DT_S,
                seed_value,
            )
            .map_err(|e| match e {
                AptError::Divergence { .. } => HarnessError::Divergence(e.to_string()),
                other => HarnessError::Validation(other.to_string()),
            })?;
            match apt::jitter_summary(&trace) {
                Ok(sigma) => sigma,
                Err(AptError::LockLost { .. }) => return Ok(None),
                Err(other) => return Err(HarnessError::Validation(other.to_string())),
            }
        }
    };
    let geometry = link_geometry(link)?;
    let fiber = FiberMode::new(link.mode_field_diameter)
        .map_err(|e| HarnessError::Validation(e.to_string()))?;
    let budget = total_link_budget(
        &geometry,
        link.distance,
        link.condition,
        jitter,
        &fiber,
        link.static_db,
    )
    .map_err(|e| HarnessError::Validation(e.to_string()))?;
    Ok(Some(StationStats {
        jitter_rms_m: jitter,
        budget,
    }))
}

fn distributed_state(scenario: &Scenario) -> Result<TwoQubitState<f64>, HarnessError> {
    let source = werner::<f64>(scenario.source.v_src)
        .map_err(|e| HarnessError::Validation(e.to_string()))?;
    Ok(source.apply_local(
        &rotation_unitary(scenario.links.alice.residual_rotation),
        &rotation_unitary(scenario.links.bob.residual_rotation),
    ))
}

fn run_trial(scenario: &Scenario, trial: u64) -> Result<TrialOutcome, HarnessError> {
    let trial_seed = seed::derive(scenario.seed, trial);
    let alice = station(&scenario.links.alice, seed::derive(trial_seed, 1))?;
    let bob = station(&scenario.links.bob, seed::derive(trial_seed, 2))?;
    let (Some(alice), Some(bob)) = (alice, bob) else {
        return Ok(TrialOutcome {
            trial,
            failed: true,
            alice,
            bob,
            measurement: None,
        });
    };

    let bg_a = scenario.counting.illuminance_lx * scenario.links.alice.lx_to_counts;
    let bg_b = scenario.counting.illuminance_lx * scenario.links.bob.lx_to_counts;
    let config = CountingConfig::new(
        scenario.source.pair_rate,
        alice.budget.transmittance(),
        bob.budget.transmittance(),
        bg_a,
        bg_b,
        scenario.counting.window,
        scenario.counting.integration,
    )
    .map_err(|e| HarnessError::Validation(e.to_string()))?;

    let state = distributed_state(scenario)?;
    let angles = scenario.analyzer_angles()?;
    let pairs = angles.setting_pairs();
    let records: Vec<CoincidenceRecord<f64>> = pairs
        .iter()
        .enumerate()
        .map(|(i, (ta, tb))| {
            counting::simulate_record(&state, *ta, *tb, &config, seed::derive(trial_seed, 16 + i as u64))
        })
        .collect();
    let records: [CoincidenceRecord<f64>; 4] = records.try_into().expect("four settings");
    let est = estimate_s(&records).map_err(|e| HarnessError::Validation(e.to_string()))?;
    let violation = counting::violation_sigmas(&est)
        .map_err(|e| HarnessError::Validation(e.to_string()))?;
    let (s_a, s_b) = singles_rates(&state, angles.a, angles.b, &config);
    let accidental = 4.0 * accidental_rate(s_a, s_b, config.window);

    Ok(TrialOutcome {
        trial,
        failed: false,
        alice: Some(alice),
        bob: Some(bob),
        measurement: Some(Measurement {
            s_signed: est.value,
            s_abs: est.value.abs(),
            sigma_s: est.sigma,
            violation_sigmas: violation,
            accidental_rate_per_setting: accidental,
        }),
    })
}

fn aggregate(rows: &[TrialOutcome]) -> Option<AggregateStats> {
    let measurements: Vec<&Measurement> =
        rows.iter().filter_map(|r| r.measurement.as_ref()).collect();
    if measurements.is_empty() {
        return None;
    }
    let n = measurements.len() as f64;
    let mean_s_abs = measurements.iter().map(|m| m.s_abs).sum::<f64>() / n;
    let var = measurements
        .iter()
        .map(|m| (m.s_abs - mean_s_abs).powi(2))
        .sum::<f64>()
        / n;
    Some(AggregateStats {
        completed: measurements.len() as u64,
        failed: (rows.len() - measurements.len()) as u64,
        mean_s_abs,
        std_s_abs: var.sqrt(),
        mean_sigma_s: measurements.iter().map(|m| m.sigma_s).sum::<f64>() / n,
        mean_violation_sigmas: measurements.iter().map(|m| m.violation_sigmas).sum::<f64>() / n,
        mean_accidental_rate: measurements
            .iter()
            .map(|m| m.accidental_rate_per_setting)
            .sum::<f64>()
            / n,
    })
}

/// Run every trial of the scenario and assemble the report.
pub fn run_chsh_session(scenario: &Scenario) -> Result<RunReport, HarnessError> {
    scenario.validate()?;
    let rows: Vec<TrialOutcome> = (0..scenario.trials)
        .into_par_iter()
        .map(|trial| run_trial(scenario, trial))
        .collect::<Result<_, _>>()?;
    Ok(RunReport {
        name: scenario.name.clone(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        config_hash: scenario.config_hash(),
        seed: scenario.seed,
        trials: scenario.trials,
        aggregate: aggregate(&rows),
        rows,
    })
}

/// Render the per-trial rows as CSV (aggregates are recomputable from them).
pub fn report_csv(report: &RunReport) -> String {
    let mut out = String::from(
        "trial,failed,s_signed,s_abs,sigma_s,violation_sigmas,alice_total_db,bob_total_db,alice_jitter_m,bob_jitter_m,accidental_rate_per_setting\n",
    );
    for row in &report.rows {
        let station = |s: &Option<StationStats>| -> (String, String) {
            match s {
                Some(st) => (format!("{}", st.budget.total_db), format!("{}", st.jitter_rms_m)),
                None => (String::new(), String::new()),
            }
        };
        let (a_db, a_jit) = station(&row.alice);
        let (b_db, b_jit) = station(&row.bob);
        match &row.measurement {
            Some(m) => out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                row.trial,
                row.failed,
                m.s_signed,
                m.s_abs,
                m.sigma_s,
                m.violation_sigmas,
                a_db,
                b_db,
                a_jit,
                b_jit,
                m.accidental_rate_per_setting
            )),
            None => out.push_str(&format!(
                "{},{},,,,,{},{},{},{},\n",
                row.trial, row.failed, a_db, b_db, a_jit, b_jit
            )),
        }
    }
    out
}

/// One human-readable line per aggregate, for terminal use.
pub fn summarize(report: &RunReport) -> String {
    let mut lines = vec![format!(
        "scenario {} | seed {} | {} trials | config {}",
        report.name,
        report.seed,
        report.trials,
        &report.config_hash[..12.min(report.config_hash.len())]
    )];
    match &report.aggregate {
        Some(agg) => {
            lines.push(format!(
                "|S| = {:.4} +/- {:.4} (spread over {} trials; {} failed)",
                agg.mean_s_abs, agg.mean_sigma_s, agg.completed, agg.failed
            ));
            lines.push(format!(
                "violation: {:.2} standard deviations above the classical bound",
                agg.mean_violation_sigmas
            ));
        }
        None => lines.push("no completed trials (tracking lock lost everywhere)".into()),
    }
    lines.join("\n")
}
