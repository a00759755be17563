// Residual tracking statistics for the preset calibrations: per-seed fine
// RMS and lock fraction, open-loop scale, disturbance-scaling linearity,
// and step-size sensitivity.

use entlink_core::apt::*;

fn stats(label: &str, trace: &AptTrace<f64>) {
    let fine = rms(&trace.fine_error).unwrap();
    let coarse = rms(&trace.coarse_error).unwrap();
    let sigma = jitter_summary(trace)
        .map(|s| format!("{:.3} um", s * 1e6))
        .unwrap_or_else(|e| format!("err: {e}"));
    println!(
        "{label:32} fine_rms={:8.3} um  coarse_rms={:8.2} urad  locked={:.4}  sigma={}",
        fine * 1e6,
        coarse * 1e6,
        trace.locked_fraction,
        sigma
    );
}

fn main() {
    for preset in [AptPreset::Ground, AptPreset::Flight] {
        for seed in 1u64..=10 {
            let trace = simulate_preset::<f64>(preset, seed);
            match trace {
                Ok(t) => stats(&format!("{preset:?} seed {seed}"), &t),
                Err(e) => println!("{preset:?} seed {seed}: {e}"),
            }
        }
    }

    // open loop scale
    let mut open = AptPreset::Flight.config::<f64>();
    open.coarse.gains = PidGains::disabled();
    open.fine.gains = PidGains::disabled();
    match simulate_apt(
        &open,
        &AptPreset::Flight.disturbance::<f64>(),
        100.0,
        3.0,
        1e-4,
        21,
    ) {
        Ok(t) => stats("open loop", &t),
        Err(e) => println!("open loop: {e}"),
    }

    // fine loop disabled
    let mut fine_off = AptPreset::Flight.config::<f64>();
    fine_off.fine.gains = PidGains::disabled();
    match simulate_apt(
        &fine_off,
        &AptPreset::Flight.disturbance::<f64>(),
        100.0,
        3.0,
        1e-4,
        8,
    ) {
        Ok(t) => stats("fine disabled", &t),
        Err(e) => println!("fine disabled: {e}"),
    }

    // doubled broadband
    let cfg = AptPreset::Ground.config::<f64>();
    let mut d1 = AptPreset::Ground.disturbance::<f64>();
    d1.sinusoids.clear();
    let d2 = d1.scaled(2.0);
    let t1 = simulate_apt(&cfg, &d1, 100.0, 6.0, 1e-4, 17).unwrap();
    let t2 = simulate_apt(&cfg, &d2, 100.0, 6.0, 1e-4, 17).unwrap();
    println!(
        "broadband x2 ratio = {:.3}",
        rms(&t2.fine_error).unwrap() / rms(&t1.fine_error).unwrap()
    );

    // dt refinement
    let td1 = simulate_apt(
        &cfg,
        &AptPreset::Ground.disturbance::<f64>(),
        100.0,
        10.0,
        DEFAULT_DT_S,
        33,
    )
    .unwrap();
    let td2 = simulate_apt(
        &cfg,
        &AptPreset::Ground.disturbance::<f64>(),
        100.0,
        10.0,
        DEFAULT_DT_S / 2.0,
        33,
    )
    .unwrap();
    println!(
        "dt refine: {:.4} um -> {:.4} um ({:+.2}%)",
        rms(&td1.fine_error).unwrap() * 1e6,
        rms(&td2.fine_error).unwrap() * 1e6,
        100.0 * (rms(&td2.fine_error).unwrap() / rms(&td1.fine_error).unwrap() - 1.0)
    );
}
