//! Two-stage acquiring/pointing/tracking simulation.
//!
//! Airframe and turbulence motion displace the apparent beacon; a coarse
//! gimbal loop keeps the telescope pointed at it, and the residual — mapped
//! through an effective focal length to the fiber plane — is taken out by a
//! fine loop closing a fast steering mirror on a position-sensitive detector.
//! The two orthogonal error axes are independent and statistically identical,
//! so a single axis is simulated and all reported errors are per-axis.
//!
//! Plants are first-order lags with rate and range saturation; controllers
//! are discrete PID with an anti-windup clamp on the integral state. The
//! broadband disturbance is an Ornstein-Uhlenbeck process (exact
//! discretization, so its stationary RMS does not depend on the step size)
//! plus deterministic sinusoid lines. Traces are bit-reproducible for a
//! given configuration and seed.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::{scalar, seed, Real};

#[derive(Debug, Error, PartialEq)]
pub enum AptError {
    #[error("loop diverged at t = {at_s} s (error exceeded 1000x the disturbance scale)")]
    Divergence { at_s: f64 },
    #[error("tracking lock lost: locked fraction {locked_fraction} < 0.99")]
    LockLost { locked_fraction: f64 },
    #[error("series is empty")]
    EmptySeries,
    #[error("invalid timing: {0}")]
    InvalidTiming(&'static str),
    #[error("unknown tracking preset '{0}' (expected 'ground' or 'flight')")]
    UnknownPreset(String),
}

// ---------------------------------------------------------------------------
// Configuration types
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlantKind {
    Gimbal,
    Fsm,
}

/// First-order actuator: pole bandwidth, travel range, slew-rate limit, and
/// the RMS of the sensor observing its loop error.
///
/// Units are radians for the gimbal stage and meters at the fiber plane for
/// the fast steering mirror.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlantParams<T> {
    pub kind: PlantKind,
    pub bandwidth_hz: T,
    pub range: T,
    pub rate_limit: T,
    pub sensor_noise_rms: T,
}

/// Discrete PID gains with an anti-windup clamp on the integral state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PidGains<T> {
    pub kp: T,
    pub ki: T,
    pub kd: T,
    pub integral_limit: T,
}

impl<T: Real> PidGains<T> {
    pub fn disabled() -> Self {
        Self {
            kp: T::zero(),
            ki: T::zero(),
            kd: T::zero(),
            integral_limit: T::one(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoopStage<T> {
    pub plant: PlantParams<T>,
    pub gains: PidGains<T>,
}

/// Apparent transverse motion of the far terminal, in meters at the link
/// distance: low-pass-filtered white noise plus deterministic lines.
///
/// The broadband part is white noise through two cascaded first-order
/// stages (40 dB/decade rolloff above the corner — airframe motion is
/// inertia-filtered), normalized to the requested stationary RMS.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DisturbanceModel<T> {
    /// (amplitude m, frequency Hz, phase rad)
    pub sinusoids: Vec<(T, T, T)>,
    /// Stationary RMS of the broadband component, m.
    pub broadband_rms: T,
    /// Corner frequency of the broadband low-pass, Hz.
    pub broadband_corner_hz: T,
}

impl<T: Real> DisturbanceModel<T> {
    /// Worst-case transverse scale (RMS plus all line amplitudes), m.
    pub fn amplitude_scale(&self) -> T {
        self.sinusoids
            .iter()
            .fold(self.broadband_rms, |acc, (a, _, _)| acc + *a)
    }

    pub fn scaled(&self, factor: T) -> Self {
        Self {
            sinusoids: self
                .sinusoids
                .iter()
                .map(|(a, f, p)| (*a * factor, *f, *p))
                .collect(),
            broadband_rms: self.broadband_rms * factor,
            broadband_corner_hz: self.broadband_corner_hz,
        }
    }
}

/// Full two-stage loop configuration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AptConfig<T> {
    pub coarse: LoopStage<T>,
    pub fine: LoopStage<T>,
    /// Effective focal length mapping angular error to fiber-plane
    /// displacement, m.
    pub focal_length: T,
    /// Half-width of the PSD capture region at the fiber plane, m; the fine
    /// loop only sees the beacon while the input stays inside it.
    pub capture_range: T,
    /// Initial pointing error, rad (acquisition modeled as an offset).
    pub initial_offset: T,
}

/// Time series produced by one simulation run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AptTrace<T> {
    pub dt: T,
    /// Residual angular error seen by the coarse stage, rad.
    pub coarse_error: Vec<T>,
    /// Residual fiber-plane displacement after the fine stage, m.
    pub fine_error: Vec<T>,
    /// Gimbal actuator state, rad.
    pub gimbal_angle: Vec<T>,
    /// Steering-mirror actuator state, m at the fiber plane.
    pub fsm_position: Vec<T>,
    /// Fraction of samples with the beacon inside the PSD capture region.
    pub locked_fraction: T,
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

/// Named calibrations: octocopter parked on the ground vs hovering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AptPreset {
    Ground,
    Flight,
}

impl std::str::FromStr for AptPreset {
    type Err = AptError;

    fn from_str(s: &str) -> Result<Self, AptError> {
        match s {
            "ground" => Ok(AptPreset::Ground),
            "flight" => Ok(AptPreset::Flight),
            other => Err(AptError::UnknownPreset(other.to_string())),
        }
    }
}

pub const DEFAULT_DT_S: f64 = 5e-5;
pub const DEFAULT_DURATION_S: f64 = 3.0;
pub const DEFAULT_LINK_DISTANCE_M: f64 = 100.0;

impl AptPreset {
    pub fn config<T: Real>(&self) -> AptConfig<T> {
        // Shared two-stage hardware model; only the disturbance differs
        // between ground and flight.
        AptConfig {
            coarse: LoopStage {
                plant: PlantParams {
                    kind: PlantKind::Gimbal,
                    bandwidth_hz: scalar(30.0),
                    range: scalar(0.35),
                    rate_limit: scalar(1.0),
                    sensor_noise_rms: scalar(5e-6),
                },
                gains: PidGains {
                    kp: scalar(1.34),
                    ki: scalar(84.0),
                    kd: scalar(0.0),
                    integral_limit: scalar(2e-2),
                },
            },
            fine: LoopStage {
                plant: PlantParams {
                    kind: PlantKind::Fsm,
                    bandwidth_hz: scalar(700.0),
                    range: scalar(3e-4),
                    rate_limit: scalar(0.1),
                    sensor_noise_rms: scalar(5e-8),
                },
                gains: PidGains {
                    kp: scalar(0.43),
                    ki: scalar(202.0),
                    kd: scalar(0.0),
                    integral_limit: scalar(5e-7),
                },
            },
            focal_length: scalar(0.2),
            capture_range: scalar(2e-4),
            initial_offset: scalar(2e-5),
        }
    }

    pub fn disturbance<T: Real>(&self) -> DisturbanceModel<T> {
        match self {
            AptPreset::Ground => DisturbanceModel {
                sinusoids: vec![(scalar(0.02), scalar(2.5), scalar(0.4))],
                broadband_rms: scalar(0.30),
                broadband_corner_hz: scalar(2.0),
            },
            AptPreset::Flight => DisturbanceModel {
                sinusoids: vec![
                    (scalar(0.05), scalar(1.4), scalar(0.9)),
                    (scalar(0.004), scalar(23.0), scalar(0.0)),
                ],
                broadband_rms: scalar(0.36),
                broadband_corner_hz: scalar(2.0),
            },
        }
    }
}

/// Run a preset at its default timing and link distance.
pub fn simulate_preset<T: Real>(preset: AptPreset, seed_value: u64) -> Result<AptTrace<T>, AptError> {
    simulate_apt(
        &preset.config(),
        &preset.disturbance(),
        scalar(DEFAULT_LINK_DISTANCE_M),
        scalar(DEFAULT_DURATION_S),
        scalar(DEFAULT_DT_S),
        seed_value,
    )
}

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

struct Pid<T> {
    integral: T,
    prev_error: Option<T>,
}

impl<T: Real> Pid<T> {
    fn new() -> Self {
        Self {
            integral: T::zero(),
            prev_error: None,
        }
    }

    fn step(&mut self, error: T, dt: T, gains: &PidGains<T>) -> T {
        self.integral = (self.integral + error * dt)
            .max(-gains.integral_limit)
            .min(gains.integral_limit);
        let derivative = match self.prev_error {
            Some(prev) => (error - prev) / dt,
            None => T::zero(),
        };
        self.prev_error = Some(error);
        gains.kp * error + gains.ki * self.integral + gains.kd * derivative
    }
}

struct Actuator<T> {
    position: T,
}

impl<T: Real> Actuator<T> {
    fn new() -> Self {
        Self { position: T::zero() }
    }

    /// First-order lag toward `command` with rate and range saturation.
    /// The per-step gain is `omega * dt` (clamped at 1), keeping the loop's
    /// effective velocity gain independent of the step size.
    fn step(&mut self, command: T, dt: T, plant: &PlantParams<T>) {
        let alpha = (scalar::<T>(2.0) * T::PI() * plant.bandwidth_hz * dt).min(T::one());
        let wanted = alpha * (command - self.position);
        let max_step = plant.rate_limit * dt;
        let step = wanted.max(-max_step).min(max_step);
        self.position = (self.position + step).max(-plant.range).min(plant.range);
    }
}

/// Simulate the nested coarse/fine chain.
///
/// Controllers command a position offset from the current actuator state, so
/// even pure-P gains act through the plant as a velocity drive. When the
/// beacon leaves the PSD capture region the fine stage holds position (it has
/// no measurement). Requires `dt <= 1/(10 * max bandwidth)` and
/// `duration >= 1000 * dt`.
pub fn simulate_apt<T: Real>(
    config: &AptConfig<T>,
    disturbance: &DisturbanceModel<T>,
    link_distance: T,
    duration: T,
    dt: T,
    seed_value: u64,
) -> Result<AptTrace<T>, AptError> {
    let max_bw = config
        .coarse
        .plant
        .bandwidth_hz
        .max(config.fine.plant.bandwidth_hz);
    if dt <= T::zero() || dt > T::one() / (scalar::<T>(10.0) * max_bw) {
        return Err(AptError::InvalidTiming("dt must satisfy dt <= 1/(10 max bandwidth)"));
    }
    if duration < scalar::<T>(1000.0) * dt {
        return Err(AptError::InvalidTiming("duration must cover at least 1000 steps"));
    }
    let steps = (duration / dt).to_usize().ok_or(AptError::InvalidTiming("duration overflow"))?;

    let mut rng = seed::rng(seed_value);
    let mut draw = |rms: T| -> T {
        let xi: f64 = rng.sample(StandardNormal);
        rms * scalar::<T>(xi)
    };

    // Two cascaded first-order stages driven by white noise, exact
    // discretization per stage so the stationary RMS does not depend on dt.
    // With equal poles the cascade output variance is
    // var(x2) = sigma1^2 (1 + phi^2) / (1 + phi)^2, used to normalize.
    let phi = (-scalar::<T>(2.0) * T::PI() * disturbance.broadband_corner_hz * dt).exp();
    let stage1_rms =
        disturbance.broadband_rms * (T::one() + phi) / (T::one() + phi * phi).sqrt();
    let stage1_scale = (T::one() - phi * phi).sqrt() * stage1_rms;
    let mut stage1 = draw(stage1_rms);
    let mut broadband = draw(disturbance.broadband_rms); // near-stationary start

    let mut coarse_pid = Pid::new();
    let mut fine_pid = Pid::new();
    // Tracking starts acquired: the gimbal initially points at the beacon up
    // to the configured acquisition offset.
    let mut initial_transverse = broadband;
    for (amp, _freq, phase) in &disturbance.sinusoids {
        initial_transverse = initial_transverse + *amp * (*phase).sin();
    }
    let mut gimbal = Actuator::new();
    gimbal.position = (initial_transverse / link_distance)
        .max(-config.coarse.plant.range)
        .min(config.coarse.plant.range);
    let mut fsm = Actuator::new();

    let angle_scale = disturbance.amplitude_scale() / link_distance + config.initial_offset.abs();
    let blowup = angle_scale * scalar::<T>(1e3);

    let mut trace = AptTrace {
        dt,
        coarse_error: Vec::with_capacity(steps),
        fine_error: Vec::with_capacity(steps),
        gimbal_angle: Vec::with_capacity(steps),
        fsm_position: Vec::with_capacity(steps),
        locked_fraction: T::zero(),
    };
    let mut locked_samples = 0usize;
    let two_pi = scalar::<T>(2.0) * T::PI();

    for k in 0..steps {
        let t = dt * T::from_usize(k).expect("step index fits scalar");

        // apparent beacon angle
        let mut transverse = broadband;
        for (amp, freq, phase) in &disturbance.sinusoids {
            transverse = transverse + *amp * (two_pi * *freq * t + *phase).sin();
        }
        let beacon = transverse / link_distance + config.initial_offset;

        // coarse stage
        let coarse_error = beacon - gimbal.position;
        let coarse_meas = coarse_error + draw(config.coarse.plant.sensor_noise_rms);
        let coarse_cmd = gimbal.position + coarse_pid.step(coarse_meas, dt, &config.coarse.gains);
        gimbal.step(coarse_cmd, dt, &config.coarse.plant);

        // fine stage input: residual mapped to the fiber plane
        let fine_input = config.focal_length * coarse_error;
        let locked = fine_input.abs() <= config.capture_range;
        let fine_error = fine_input - fsm.position;
        if locked {
            locked_samples += 1;
            let fine_meas = fine_error + draw(config.fine.plant.sensor_noise_rms);
            let fine_cmd = fsm.position + fine_pid.step(fine_meas, dt, &config.fine.gains);
            fsm.step(fine_cmd, dt, &config.fine.plant);
        } else {
            // beacon off the PSD: hold position
            fsm.step(fsm.position, dt, &config.fine.plant);
        }

        if !coarse_error.is_finite()
            || !fine_error.is_finite()
            || (blowup > T::zero()
                && (coarse_error.abs() > blowup
                    || fine_error.abs() > blowup * config.focal_length))
        {
            return Err(AptError::Divergence {
                at_s: t.to_f64().unwrap_or(f64::NAN),
            });
        }

        trace.coarse_error.push(coarse_error);
        trace.fine_error.push(fine_error);
        trace.gimbal_angle.push(gimbal.position);
        trace.fsm_position.push(fsm.position);

        // advance the broadband states for the next sample
        stage1 = phi * stage1 + draw(stage1_scale);
        broadband = phi * broadband + (T::one() - phi) * stage1;
    }

    trace.locked_fraction =
        T::from_usize(locked_samples).expect("count fits scalar") / T::from_usize(steps).unwrap();
    Ok(trace)
}

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

/// Root mean square of a series.
pub fn rms<T: Real>(series: &[T]) -> Result<T, AptError> {
    if series.is_empty() {
        return Err(AptError::EmptySeries);
    }
    let sum_sq = series.iter().fold(T::zero(), |acc, x| acc + *x * *x);
    Ok((sum_sq / T::from_usize(series.len()).unwrap()).sqrt())
}

/// Per-axis residual jitter (standard deviation of the fine error), valid
/// only while tracking lock held (locked fraction >= 0.99).
pub fn jitter_summary<T: Real>(trace: &AptTrace<T>) -> Result<T, AptError> {
    if trace.fine_error.is_empty() {
        return Err(AptError::EmptySeries);
    }
    if trace.locked_fraction < scalar::<T>(0.99) {
        return Err(AptError::LockLost {
            locked_fraction: trace.locked_fraction.to_f64().unwrap_or(f64::NAN),
        });
    }
    let n = T::from_usize(trace.fine_error.len()).unwrap();
    let mean = trace.fine_error.iter().fold(T::zero(), |a, x| a + *x) / n;
    let var = trace
        .fine_error
        .iter()
        .fold(T::zero(), |a, x| a + (*x - mean) * (*x - mean))
        / n;
    Ok(var.sqrt())
}
