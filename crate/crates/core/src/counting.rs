//! Stochastic coincidence counting and CHSH estimation.
//!
//! A counting run takes an analytic state from [`crate::qstate`], a channel
//! throughput, and a background model, and produces Poisson-distributed
//! coincidence counts per analyzer setting. Accidental coincidences are
//! modeled (never subtracted): uncorrelated singles falling inside the
//! coincidence window add an unpolarized Poisson rate to every projector
//! combination. Estimator error bars are first-order (delta-method)
//! propagation of independent Poisson variances.

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qstate::TwoQubitState;
use crate::{scalar, seed, Real};

/// Default coincidence window in seconds (not stated by the source data;
/// exposed in the config).
pub const DEFAULT_COINCIDENCE_WINDOW_S: f64 = 3e-9;

#[derive(Debug, Error, PartialEq)]
pub enum CountingError {
    #[error("invalid counting config: {0}")]
    InvalidConfig(&'static str),
    #[error("estimator requires at least one count in the record")]
    EmptyRecord,
    #[error("violation significance undefined for sigma = 0")]
    ZeroSigma,
    #[error("effective visibility undefined: both coincidence rates are zero")]
    DegenerateRates,
    #[error("rates and visibilities must be nonnegative (visibility <= 1)")]
    InvalidRate,
    #[error("fringe sweep needs at least 8 angles, got {0}")]
    SweepTooShort(usize),
    #[error("fringe fit is degenerate (singular system or nonpositive offset)")]
    FitDegenerate,
}

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Source, channel, and timing parameters for one counting session.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountingConfig<T> {
    /// Entangled-pair generation rate at the source, pairs/s.
    pub pair_rate: T,
    /// End-to-end transmittance of the first arm (channel + detector), 0..=1.
    pub eta_a: T,
    /// End-to-end transmittance of the second arm, 0..=1.
    pub eta_b: T,
    /// Background singles rate at station A, counts/s.
    pub bg_a: T,
    /// Background singles rate at station B, counts/s.
    pub bg_b: T,
    /// Coincidence window, s.
    pub window: T,
    /// Integration time per analyzer setting, s (split equally over the four
    /// projector combinations of that setting).
    pub integration: T,
}

impl<T: Real> CountingConfig<T> {
    pub fn new(
        pair_rate: T,
        eta_a: T,
        eta_b: T,
        bg_a: T,
        bg_b: T,
        window: T,
        integration: T,
    ) -> Result<Self, CountingError> {
        let cfg = Self {
            pair_rate,
            eta_a,
            eta_b,
            bg_a,
            bg_b,
            window,
            integration,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CountingError> {
        if self.pair_rate < T::zero() || self.bg_a < T::zero() || self.bg_b < T::zero() {
            return Err(CountingError::InvalidConfig("rates must be nonnegative"));
        }
        for eta in [self.eta_a, self.eta_b] {
            if eta < T::zero() || eta > T::one() {
                return Err(CountingError::InvalidConfig("eta must be in [0, 1]"));
            }
        }
        if self.window <= T::zero() {
            return Err(CountingError::InvalidConfig("window must be positive"));
        }
        if self.integration <= T::zero() {
            return Err(CountingError::InvalidConfig("integration must be positive"));
        }
        Ok(())
    }
}

/// The four coincidence counts for one analyzer-angle setting.
///
/// `perp` marks the orthogonal analyzer (angle + pi/2): `n_ab_perp` is the
/// (a, b-perp) combination, `n_aperp_b` is (a-perp, b).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoincidenceRecord<T> {
    pub n_ab: u64,
    pub n_ab_perp: u64,
    pub n_aperp_b: u64,
    pub n_aperp_bperp: u64,
    /// (theta_a, theta_b) in radians.
    pub setting: (T, T),
}

impl<T: Real> CoincidenceRecord<T> {
    pub fn total(&self) -> u64 {
        self.n_ab + self.n_ab_perp + self.n_aperp_b + self.n_aperp_bperp
    }
}

/// A point estimate with its one-standard-deviation uncertainty.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateWithError<T> {
    pub value: T,
    pub sigma: T,
}

impl<T: Real> EstimateWithError<T> {
    /// Same uncertainty, absolute value of the estimate (for |S| reporting).
    pub fn abs(&self) -> Self {
        Self {
            value: self.value.abs(),
            sigma: self.sigma,
        }
    }
}

/// One fringe scan: counts per sweep angle plus the sinusoid-fit visibility.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FringeScan<T> {
    /// (sweep angle rad, counts with sqrt(N) error bar)
    pub points: Vec<(T, EstimateWithError<T>)>,
    pub fitted_visibility: T,
}

// ---------------------------------------------------------------------------
// Rates
// ---------------------------------------------------------------------------

/// Accidental-coincidence rate of two independent click streams within a
/// coincidence window: s1 * s2 * window.
pub fn accidental_rate<T: Real>(s1: T, s2: T, window: T) -> T {
    s1 * s2 * window
}

/// Singles rates at the two stations with analyzers at the given angles:
/// pair_rate * eta * (polarizer marginal) + background.
pub fn singles_rates<T: Real>(
    state: &TwoQubitState<T>,
    theta_a: T,
    theta_b: T,
    config: &CountingConfig<T>,
) -> (T, T) {
    let sa = config.pair_rate * config.eta_a * state.marginal_probability_a(theta_a) + config.bg_a;
    let sb = config.pair_rate * config.eta_b * state.marginal_probability_b(theta_b) + config.bg_b;
    (sa, sb)
}

/// True + accidental coincidence rate for one projector combination.
fn combo_rate<T: Real>(
    state: &TwoQubitState<T>,
    theta_a: T,
    theta_b: T,
    config: &CountingConfig<T>,
) -> T {
    let (sa, sb) = singles_rates(state, theta_a, theta_b, config);
    config.pair_rate * config.eta_a * config.eta_b * state.joint_probability(theta_a, theta_b)
        + accidental_rate(sa, sb, config.window)
}

fn sample_poisson<T: Real, R: Rng>(rng: &mut R, mean: T) -> u64 {
    let lambda = mean.to_f64().unwrap_or(0.0);
    if lambda <= 0.0 {
        return 0;
    }
    let draw: f64 = Poisson::new(lambda)
        .expect("positive finite Poisson mean")
        .sample(rng);
    draw as u64
}

// ---------------------------------------------------------------------------
// Simulation and estimation
// ---------------------------------------------------------------------------

/// Simulate the four coincidence counts of one analyzer setting.
///
/// Each projector combination is integrated for `integration / 4` and its
/// count drawn as an independent Poisson variate of (true + accidental)
/// rate. Identical seeds produce bit-identical records.
pub fn simulate_record<T: Real>(
    state: &TwoQubitState<T>,
    theta_a: T,
    theta_b: T,
    config: &CountingConfig<T>,
    seed_value: u64,
) -> CoincidenceRecord<T> {
    let mut rng = seed::rng(seed_value);
    let quarter = T::FRAC_PI_2();
    let t_combo = config.integration / scalar::<T>(4.0);
    let combos = [
        (theta_a, theta_b),
        (theta_a, theta_b + quarter),
        (theta_a + quarter, theta_b),
        (theta_a + quarter, theta_b + quarter),
    ];
    let mut counts = [0u64; 4];
    for (slot, (ta, tb)) in counts.iter_mut().zip(combos) {
        *slot = sample_poisson(&mut rng, t_combo * combo_rate(state, ta, tb, config));
    }
    CoincidenceRecord {
        n_ab: counts[0],
        n_ab_perp: counts[1],
        n_aperp_b: counts[2],
        n_aperp_bperp: counts[3],
        setting: (theta_a, theta_b),
    }
}

/// Correlation estimate E = (n_ab + n_a+b+ - n_ab+ - n_a+b) / total with
/// delta-method Poisson error.
pub fn estimate_e<T: Real>(record: &CoincidenceRecord<T>) -> Result<EstimateWithError<T>, CountingError> {
    let total_u = record.total();
    if total_u == 0 {
        return Err(CountingError::EmptyRecord);
    }
    let n = |c: u64| T::from_u64(c).expect("count fits scalar");
    let total = n(total_u);
    let value = (n(record.n_ab) + n(record.n_aperp_bperp) - n(record.n_ab_perp) - n(record.n_aperp_b))
        / total;
    // Var(E) = sum_i n_i (s_i - E)^2 / total^2 for sign pattern (+,-,-,+)
    let plus = T::one() - value;
    let minus = -T::one() - value;
    let var = (n(record.n_ab) + n(record.n_aperp_bperp)) * plus * plus
        + (n(record.n_ab_perp) + n(record.n_aperp_b)) * minus * minus;
    Ok(EstimateWithError {
        value,
        sigma: var.sqrt() / total,
    })
}

/// CHSH estimate from four records ordered [(a,b), (a,b'), (a',b), (a',b')]:
/// signed S = E1 - E2 + E3 + E4, sigma in quadrature.
pub fn estimate_s<T: Real>(
    records: &[CoincidenceRecord<T>; 4],
) -> Result<EstimateWithError<T>, CountingError> {
    let e: Vec<EstimateWithError<T>> = records
        .iter()
        .map(estimate_e)
        .collect::<Result<_, _>>()?;
    let value = e[0].value - e[1].value + e[2].value + e[3].value;
    let var = e.iter().fold(T::zero(), |acc, x| acc + x.sigma * x.sigma);
    Ok(EstimateWithError {
        value,
        sigma: var.sqrt(),
    })
}

/// Number of standard deviations by which |S| exceeds the classical bound 2.
pub fn violation_sigmas<T: Real>(est: &EstimateWithError<T>) -> Result<T, CountingError> {
    if est.sigma <= T::zero() {
        return Err(CountingError::ZeroSigma);
    }
    Ok((est.value.abs() - scalar::<T>(2.0)) / est.sigma)
}

/// Visibility after dilution by accidental coincidences:
/// v_src * true / (true + accidental).
///
/// Both rates are totals over the four projector combinations of a setting,
/// matching what [`simulate_record`] produces; with that convention
/// `2*sqrt(2) * v_eff` is the closed-form prediction of the measured |S|.
pub fn effective_visibility<T: Real>(
    v_src: T,
    true_cc_rate: T,
    acc_cc_rate: T,
) -> Result<T, CountingError> {
    if v_src < T::zero() || v_src > T::one() || true_cc_rate < T::zero() || acc_cc_rate < T::zero()
    {
        return Err(CountingError::InvalidRate);
    }
    let denom = true_cc_rate + acc_cc_rate;
    if denom <= T::zero() {
        return Err(CountingError::DegenerateRates);
    }
    Ok(v_src * true_cc_rate / denom)
}

/// Simulate a coincidence fringe: the first-arm analyzer fixed, the second
/// swept, `integration` seconds per sweep point; fit
/// `c0 + c1 cos(2 theta) + c2 sin(2 theta)` and report
/// sqrt(c1^2 + c2^2) / c0 as the fitted visibility.
pub fn visibility_fringe<T: Real>(
    state: &TwoQubitState<T>,
    theta_fixed: T,
    sweep: &[T],
    config: &CountingConfig<T>,
    seed_value: u64,
) -> Result<FringeScan<T>, CountingError> {
    if sweep.len() < 8 {
        return Err(CountingError::SweepTooShort(sweep.len()));
    }
    let mut rng = seed::rng(seed_value);
    let mut points = Vec::with_capacity(sweep.len());
    for &theta in sweep {
        let mean = config.integration * combo_rate(state, theta_fixed, theta, config);
        let count = sample_poisson(&mut rng, mean);
        let value = T::from_u64(count).expect("count fits scalar");
        points.push((
            theta,
            EstimateWithError {
                value,
                sigma: value.sqrt(),
            },
        ));
    }

    // Linear least squares on the three Fourier coefficients.
    let mut ata = [[T::zero(); 3]; 3];
    let mut aty = [T::zero(); 3];
    for (theta, est) in &points {
        let two = scalar::<T>(2.0);
        let row = [T::one(), (two * *theta).cos(), (two * *theta).sin()];
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] = ata[i][j] + row[i] * row[j];
            }
            aty[i] = aty[i] + row[i] * est.value;
        }
    }
    let coeff = solve3(ata, aty).ok_or(CountingError::FitDegenerate)?;
    let c0 = coeff[0];
    if c0 <= T::zero() {
        return Err(CountingError::FitDegenerate);
    }
    let amplitude = (coeff[1] * coeff[1] + coeff[2] * coeff[2]).sqrt();
    Ok(FringeScan {
        points,
        fitted_visibility: amplitude / c0,
    })
}

/// 3x3 linear solve with partial pivoting; None when singular.
fn solve3<T: Real>(mut a: [[T; 3]; 3], mut b: [T; 3]) -> Option<[T; 3]> {
    for col in 0..3 {
        let pivot = (col..3).fold(col, |best, r| {
            if a[r][col].abs() > a[best][col].abs() {
                r
            } else {
                best
            }
        });
        if a[pivot][col].abs() < T::epsilon() {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in (col + 1)..3 {
            let f = a[r][col] / a[col][col];
            for c in col..3 {
                a[r][c] = a[r][c] - f * a[col][c];
            }
            b[r] = b[r] - f * b[col];
        }
    }
    let mut x = [T::zero(); 3];
    for row in (0..3).rev() {
        let mut acc = b[row];
        for c in (row + 1)..3 {
            acc = acc - a[row][c] * x[c];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{bell_psi_minus, werner, AnalyzerAngles};

    fn lossless_config(integration: f64) -> CountingConfig<f64> {
        CountingConfig::new(2.4e6, 1.0, 1.0, 0.0, 0.0, 1e-12, integration).unwrap()
    }

    #[test]
    fn accidental_rate_arithmetic() {
        assert_eq!(accidental_rate(0.0f64, 5.0e4, 3e-9), 0.0);
        assert!((accidental_rate(1e5f64, 1e5, 1e-9) - 10.0).abs() < 1e-9);
        let base = accidental_rate(3e4f64, 7e4, 2e-9);
        assert!((accidental_rate(6e4f64, 7e4, 2e-9) - 2.0 * base).abs() < 1e-9);
        assert!((accidental_rate(3e4f64, 1.4e5, 2e-9) - 2.0 * base).abs() < 1e-9);
    }

    #[test]
    fn singles_rates_marginals() {
        let state = bell_psi_minus::<f64>();
        let cfg = CountingConfig::new(2.0e6, 0.2, 0.5, 300.0, 400.0, 3e-9, 1.0).unwrap();
        for theta in [0.0, 0.4, 1.3] {
            let (sa, sb) = singles_rates(&state, theta, theta + 0.2, &cfg);
            assert!((sa - (2.0e6 * 0.2 * 0.5 + 300.0)).abs() < 1e-6);
            assert!((sb - (2.0e6 * 0.5 * 0.5 + 400.0)).abs() < 1e-6);
        }
        let bg_only = CountingConfig::new(0.0, 0.2, 0.5, 300.0, 400.0, 3e-9, 1.0).unwrap();
        assert_eq!(singles_rates(&state, 0.0, 0.0, &bg_only), (300.0, 400.0));
        let dark_a = CountingConfig::new(2.0e6, 0.0, 0.5, 300.0, 400.0, 3e-9, 1.0).unwrap();
        assert_eq!(singles_rates(&state, 0.0, 0.0, &dark_a).0, 300.0);
    }

    #[test]
    fn config_validation() {
        assert!(CountingConfig::new(1.0, 1.1, 0.5, 0.0, 0.0, 1e-9, 1.0).is_err());
        assert!(CountingConfig::new(-1.0, 0.5, 0.5, 0.0, 0.0, 1e-9, 1.0).is_err());
        assert!(CountingConfig::new(1.0, 0.5, 0.5, 0.0, 0.0, 0.0, 1.0).is_err());
        assert!(CountingConfig::new(1.0, 0.5, 0.5, 0.0, 0.0, 1e-9, 0.0).is_err());
    }

    #[test]
    fn simulate_record_determinism_and_zero() {
        let state = werner::<f64>(0.9).unwrap();
        let cfg = CountingConfig::new(1e5, 0.3, 0.3, 100.0, 100.0, 3e-9, 1.0).unwrap();
        let r1 = simulate_record(&state, 0.0, 0.3, &cfg, 99);
        let r2 = simulate_record(&state, 0.0, 0.3, &cfg, 99);
        assert_eq!(r1, r2);
        let r3 = simulate_record(&state, 0.0, 0.3, &cfg, 100);
        assert_ne!(r1, r3); // overwhelmingly likely at these counts

        let silent = CountingConfig::new(0.0, 0.3, 0.3, 0.0, 0.0, 3e-9, 1.0).unwrap();
        let r = simulate_record(&state, 0.0, 0.3, &silent, 1);
        assert_eq!(r.total(), 0);
    }

    #[test]
    fn simulated_ratios_match_analytic_probabilities() {
        let state = werner::<f64>(0.95).unwrap();
        let cfg = lossless_config(4.0);
        let (ta, tb) = (0.15, 0.55);
        let record = simulate_record(&state, ta, tb, &cfg, 7);
        let total = record.total() as f64;
        let quarter = std::f64::consts::FRAC_PI_2;
        let combos = [
            (record.n_ab, state.joint_probability(ta, tb)),
            (record.n_ab_perp, state.joint_probability(ta, tb + quarter)),
            (record.n_aperp_b, state.joint_probability(ta + quarter, tb)),
            (
                record.n_aperp_bperp,
                state.joint_probability(ta + quarter, tb + quarter),
            ),
        ];
        for (count, p) in combos {
            let sigma = (p * (1.0 - p) / total).sqrt();
            assert!(
                (count as f64 / total - p).abs() < 3.0 * sigma + 1e-6,
                "ratio {} vs p {}",
                count as f64 / total,
                p
            );
        }
    }

    #[test]
    fn estimate_e_basics() {
        let rec = CoincidenceRecord::<f64> {
            n_ab: 100,
            n_ab_perp: 0,
            n_aperp_b: 0,
            n_aperp_bperp: 100,
            setting: (0.0, 0.0),
        };
        let est = estimate_e(&rec).unwrap();
        assert_eq!(est.value, 1.0);
        assert!(est.sigma.is_finite());

        let flat = CoincidenceRecord::<f64> {
            n_ab: 50,
            n_ab_perp: 50,
            n_aperp_b: 50,
            n_aperp_bperp: 50,
            setting: (0.0, 0.0),
        };
        let est = estimate_e(&flat).unwrap();
        assert_eq!(est.value, 0.0);
        assert!((est.sigma - (200.0f64).sqrt() / 200.0).abs() < 1e-12);

        let empty = CoincidenceRecord::<f64> {
            n_ab: 0,
            n_ab_perp: 0,
            n_aperp_b: 0,
            n_aperp_bperp: 0,
            setting: (0.0, 0.0),
        };
        assert_eq!(estimate_e(&empty), Err(CountingError::EmptyRecord));
    }

    #[test]
    fn estimate_e_sigma_matches_empirical_spread() {
        let state = werner::<f64>(0.9).unwrap();
        let cfg = CountingConfig::new(1e5, 0.5, 0.5, 2e3, 2e3, 3e-9, 0.02).unwrap();
        let mut values = Vec::new();
        let mut sigma_sum = 0.0;
        let n = 4000;
        for i in 0..n {
            let rec = simulate_record(&state, 0.0, std::f64::consts::FRAC_PI_8, &cfg, crate::seed::derive(11, i));
            let est = estimate_e(&rec).unwrap();
            values.push(est.value);
            sigma_sum += est.sigma;
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
        let empirical = var.sqrt();
        let predicted = sigma_sum / n as f64;
        assert!(
            (predicted / empirical - 1.0).abs() < 0.10,
            "predicted {predicted} empirical {empirical}"
        );
    }

    #[test]
    fn estimate_s_limits() {
        let angles = AnalyzerAngles::<f64>::canonical();
        let state = bell_psi_minus::<f64>();
        let cfg = lossless_config(1.0);
        let records: Vec<_> = angles
            .setting_pairs()
            .iter()
            .enumerate()
            .map(|(i, (ta, tb))| simulate_record(&state, *ta, *tb, &cfg, crate::seed::derive(5, i as u64)))
            .collect();
        let records: [CoincidenceRecord<f64>; 4] = records.try_into().unwrap();
        let est = estimate_s(&records).unwrap();
        let root8 = 8.0f64.sqrt();
        assert!(est.value < 0.0, "signed S follows the analytic sign");
        assert!(
            (est.value.abs() - root8).abs() < 3.0 * est.sigma + 1e-3,
            "|S| = {} sigma {}",
            est.value.abs(),
            est.sigma
        );

        let w = werner::<f64>(0.974).unwrap();
        let records: Vec<_> = angles
            .setting_pairs()
            .iter()
            .enumerate()
            .map(|(i, (ta, tb))| simulate_record(&w, *ta, *tb, &cfg, crate::seed::derive(6, i as u64)))
            .collect();
        let records: [CoincidenceRecord<f64>; 4] = records.try_into().unwrap();
        let est = estimate_s(&records).unwrap();
        assert!((est.value.abs() - root8 * 0.974).abs() < 3.0 * est.sigma + 1e-3);
    }

    #[test]
    fn violation_sigma_values() {
        let est = EstimateWithError::<f64> {
            value: 2.49,
            sigma: 0.09,
        };
        assert!((violation_sigmas(&est).unwrap() - 5.444).abs() < 1e-2);
        let est = EstimateWithError::<f64> {
            value: 2.41,
            sigma: 0.14,
        };
        assert!((violation_sigmas(&est).unwrap() - 2.93).abs() < 1e-2);
        let flat = EstimateWithError::<f64> {
            value: 2.0,
            sigma: 0.5,
        };
        assert_eq!(violation_sigmas(&flat).unwrap(), 0.0);
        let degenerate = EstimateWithError::<f64> {
            value: 2.5,
            sigma: 0.0,
        };
        assert_eq!(violation_sigmas(&degenerate), Err(CountingError::ZeroSigma));
    }

    #[test]
    fn effective_visibility_cases() {
        assert_eq!(effective_visibility(0.9f64, 100.0, 0.0).unwrap(), 0.9);
        assert!((effective_visibility(0.9f64, 50.0, 50.0).unwrap() - 0.45).abs() < 1e-12);
        assert_eq!(
            effective_visibility(0.9f64, 0.0, 0.0),
            Err(CountingError::DegenerateRates)
        );
        assert_eq!(
            effective_visibility(1.2f64, 1.0, 0.0),
            Err(CountingError::InvalidRate)
        );
    }

    #[test]
    fn fringe_fit_recovers_visibility() {
        let sweep: Vec<f64> = (0..16)
            .map(|k| std::f64::consts::PI * k as f64 / 16.0)
            .collect();
        let cfg = lossless_config(2.0);

        let scan = visibility_fringe(&bell_psi_minus::<f64>(), 0.0, &sweep, &cfg, 31).unwrap();
        assert!(
            (scan.fitted_visibility - 1.0).abs() < 1e-3,
            "pure-state fit {}",
            scan.fitted_visibility
        );

        let w = werner::<f64>(0.974).unwrap();
        let scan = visibility_fringe(&w, 0.0, &sweep, &cfg, 32).unwrap();
        assert!(
            (scan.fitted_visibility - 0.974).abs() < 0.005,
            "werner fit {}",
            scan.fitted_visibility
        );

        assert_eq!(
            visibility_fringe(&w, 0.0, &sweep[..4], &cfg, 0),
            Err(CountingError::SweepTooShort(4))
        );
    }

    #[test]
    fn lab_fringes_all_bases_clear_097() {
        // H, V, D, A projections of the first arm against a lab-grade source.
        // Accidental dilution is ~ pair_rate * window; the bench coincidence
        // electronics are below a nanosecond, unlike the field default.
        let w = werner::<f64>(0.974).unwrap();
        let cfg = CountingConfig::new(2.4e6, 1.0, 1.0, 500.0, 500.0, 5e-10, 1.0).unwrap();
        let sweep: Vec<f64> = (0..16)
            .map(|k| std::f64::consts::PI * k as f64 / 16.0)
            .collect();
        let pi = std::f64::consts::PI;
        for (i, fixed) in [0.0, pi / 2.0, pi / 4.0, 3.0 * pi / 4.0].iter().enumerate() {
            let scan = visibility_fringe(&w, *fixed, &sweep, &cfg, 40 + i as u64).unwrap();
            assert!(
                scan.fitted_visibility >= 0.97,
                "basis {i} visibility {}",
                scan.fitted_visibility
            );
        }
    }
}
