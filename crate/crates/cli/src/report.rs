//! Re-load a session report and verify its aggregates against the rows.

use std::path::Path;

use crate::session::{AggregateStats, RunReport};
use crate::HarnessError;

pub fn load_report(path: &Path) -> Result<RunReport, HarnessError> {
    let text = crate::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| HarnessError::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}

/// Recompute the aggregate block from the per-trial rows and demand
/// agreement with what the report claims.
pub fn verify_report(report: &RunReport) -> Result<(), HarnessError> {
    if report.rows.len() as u64 != report.trials {
        return Err(HarnessError::Inconsistent(format!(
            "{} rows for {} trials",
            report.rows.len(),
            report.trials
        )));
    }
    let measurements: Vec<_> = report
        .rows
        .iter()
        .filter_map(|r| r.measurement.as_ref())
        .collect();
    match (&report.aggregate, measurements.is_empty()) {
        (None, true) => Ok(()),
        (None, false) => Err(HarnessError::Inconsistent(
            "rows contain measurements but the aggregate block is missing".into(),
        )),
        (Some(_), true) => Err(HarnessError::Inconsistent(
            "aggregate block present without any completed trial".into(),
        )),
        (Some(agg), false) => {
            let n = measurements.len() as f64;
            let mean = measurements.iter().map(|m| m.s_abs).sum::<f64>() / n;
            let var = measurements
                .iter()
                .map(|m| (m.s_abs - mean).powi(2))
                .sum::<f64>()
                / n;
            let recomputed = AggregateStats {
                completed: measurements.len() as u64,
                failed: (report.rows.len() - measurements.len()) as u64,
                mean_s_abs: mean,
                std_s_abs: var.sqrt(),
                mean_sigma_s: measurements.iter().map(|m| m.sigma_s).sum::<f64>() / n,
                mean_violation_sigmas: measurements
                    .iter()
                    .map(|m| m.violation_sigmas)
                    .sum::<f64>()
                    / n,
                mean_accidental_rate: measurements
                    .iter()
                    .map(|m| m.accidental_rate_per_setting)
                    .sum::<f64>()
                    / n,
            };
            let consistent = agg.completed == recomputed.completed
                && agg.failed == recomputed.failed
                && close(agg.mean_s_abs, recomputed.mean_s_abs)
                && close(agg.std_s_abs, recomputed.std_s_abs)
                && close(agg.mean_sigma_s, recomputed.mean_sigma_s)
                && close(agg.mean_violation_sigmas, recomputed.mean_violation_sigmas)
                && close(agg.mean_accidental_rate, recomputed.mean_accidental_rate);
            if consistent {
                Ok(())
            } else {
                Err(HarnessError::Inconsistent(
                    "aggregate block does not match the per-trial rows".into(),
                ))
            }
        }
    }
}
