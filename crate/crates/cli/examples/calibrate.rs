// Aggregate statistics for the shipped scenarios; used when fitting the
// calibration entries (static_db, lx_to_counts, rotations, integration)
// and kept for re-checking them after model changes.

use entlink_cli::scenario::resolve_scenario;
use entlink_cli::session::run_chsh_session;

fn main() {
    for name in ["lab", "field-day", "field-clear-night", "field-rainy-night"] {
        let scenario = resolve_scenario(name).unwrap();
        let report = run_chsh_session(&scenario).unwrap();
        let agg = report.aggregate.unwrap();
        let alice = report.rows[0].alice.unwrap();
        let bob = report.rows[0].bob.unwrap();
        println!(
            "{name:18} |S|={:.4} std={:.4} sigma={:.4} viol={:.2} acc/set={:>9.1} A={:.2} dB B={:.2} dB jitA={:.2}um failed={}",
            agg.mean_s_abs,
            agg.std_s_abs,
            agg.mean_sigma_s,
            agg.mean_violation_sigmas,
            agg.mean_accidental_rate,
            alice.budget.total_db,
            bob.budget.total_db,
            alice.jitter_rms_m * 1e6,
            agg.failed
        );
    }
}
