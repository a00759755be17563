//! Deterministic free-space channel model.
//!
//! Three loss mechanisms are composed additively in decibels:
//!
//! - Gaussian-beam diffraction between symmetric circular apertures
//!   (truncation at the transmit pupil is neglected; the admissible waist is
//!   capped so the pupil keeps >= 95% of the beam power).
//! - Atmospheric extinction, linear in distance with a per-condition
//!   coefficient. The shipped coefficients are editable defaults, not
//!   authoritative physics.
//! - Pointing jitter against single-mode-fiber coupling: the mean coupled
//!   power under isotropic Gaussian displacement of the focal spot.
//!
//! Conventions: "aperture" is a pupil diameter; beam waists are 1/e^2
//! intensity radii; an intensity full width at half maximum converts as
//! w = FWHM / sqrt(2 ln 2).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::{scalar, Real};

/// Largest admissible waist as a fraction of the transmit pupil radius,
/// sqrt(2 / ln 20): the pupil then passes >= 95% of the beam power, which is
/// the point where neglecting transmit truncation stays defensible.
pub const MAX_WAIST_FRACTION: f64 = 0.817_077_965_307_269_8; // sqrt(2 / ln 20)

#[derive(Debug, Error, PartialEq)]
pub enum OpticsError {
    #[error("invalid beam geometry: {0}")]
    InvalidGeometry(&'static str),
    #[error("mode field diameter must be positive")]
    InvalidFiber,
    #[error("link budget components must be nonnegative, got {0}")]
    NegativeComponent(f64),
}

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// How the transmit waist is chosen when computing diffraction loss.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WaistMode<T> {
    /// Fixed 1/e^2 intensity radius at the transmitter, m.
    Fixed(T),
    /// Waist chosen per distance to maximize receiver collection.
    Optimal,
}

/// Transmit/receive geometry of one free-space link.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BeamGeometry<T> {
    /// Wavelength, m.
    pub wavelength: T,
    /// Transmit pupil diameter, m.
    pub tx_aperture: T,
    /// Receive pupil diameter, m.
    pub rx_aperture: T,
    pub waist_mode: WaistMode<T>,
}

impl<T: Real> BeamGeometry<T> {
    pub fn new(
        wavelength: T,
        tx_aperture: T,
        rx_aperture: T,
        waist_mode: WaistMode<T>,
    ) -> Result<Self, OpticsError> {
        if wavelength <= T::zero() || tx_aperture <= T::zero() || rx_aperture <= T::zero() {
            return Err(OpticsError::InvalidGeometry("lengths must be positive"));
        }
        if wavelength >= tx_aperture || wavelength >= rx_aperture {
            return Err(OpticsError::InvalidGeometry(
                "wavelength must be far smaller than the apertures",
            ));
        }
        if let WaistMode::Fixed(w0) = waist_mode {
            if w0 <= T::zero() {
                return Err(OpticsError::InvalidGeometry("waist must be positive"));
            }
        }
        Ok(Self {
            wavelength,
            tx_aperture,
            rx_aperture,
            waist_mode,
        })
    }

    /// Symmetric-aperture geometry (the common case here).
    pub fn symmetric(
        wavelength: T,
        aperture: T,
        waist_mode: WaistMode<T>,
    ) -> Result<Self, OpticsError> {
        Self::new(wavelength, aperture, aperture, waist_mode)
    }

    fn waist_for(&self, distance: T) -> T {
        match self.waist_mode {
            WaistMode::Fixed(w0) => w0,
            WaistMode::Optimal => {
                optimal_waist(self.tx_aperture * scalar::<T>(0.5), distance, self.wavelength)
            }
        }
    }
}

/// Single-mode fiber described by its mode field diameter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberMode<T> {
    /// Mode field diameter, m.
    pub mode_field_diameter: T,
}

impl<T: Real> FiberMode<T> {
    pub fn new(mode_field_diameter: T) -> Result<Self, OpticsError> {
        if mode_field_diameter <= T::zero() {
            return Err(OpticsError::InvalidFiber);
        }
        Ok(Self {
            mode_field_diameter,
        })
    }
}

/// Sky condition selecting an extinction coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkyCondition {
    ClearDay,
    ClearNight,
    Rain,
    /// Thin air at high-altitude-platform cruise altitude.
    HighAltitude,
}

/// Extinction coefficients in dB/km. Defaults are plausible round numbers
/// meant to be overridden by whoever has measured values.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtmosphereTable<T> {
    pub clear_day_db_per_km: T,
    pub clear_night_db_per_km: T,
    pub rain_db_per_km: T,
    pub high_altitude_db_per_km: T,
}

impl<T: Real> Default for AtmosphereTable<T> {
    fn default() -> Self {
        Self {
            clear_day_db_per_km: scalar(0.7),
            clear_night_db_per_km: scalar(0.5),
            rain_db_per_km: scalar(3.0),
            high_altitude_db_per_km: scalar(0.03),
        }
    }
}

impl<T: Real> AtmosphereTable<T> {
    pub fn coefficient(&self, condition: SkyCondition) -> T {
        match condition {
            SkyCondition::ClearDay => self.clear_day_db_per_km,
            SkyCondition::ClearNight => self.clear_night_db_per_km,
            SkyCondition::Rain => self.rain_db_per_km,
            SkyCondition::HighAltitude => self.high_altitude_db_per_km,
        }
    }
}

/// Additive decibel breakdown of one channel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinkBudget<T> {
    pub diffraction_db: T,
    pub atmospheric_db: T,
    pub pointing_db: T,
    pub static_coupling_db: T,
    pub total_db: T,
}

impl<T: Real> LinkBudget<T> {
    pub fn new(
        diffraction_db: T,
        atmospheric_db: T,
        pointing_db: T,
        static_coupling_db: T,
    ) -> Result<Self, OpticsError> {
        for part in [diffraction_db, atmospheric_db, pointing_db, static_coupling_db] {
            if part < T::zero() {
                return Err(OpticsError::NegativeComponent(part.to_f64().unwrap_or(f64::NAN)));
            }
        }
        Ok(Self {
            diffraction_db,
            atmospheric_db,
            pointing_db,
            static_coupling_db,
            total_db: diffraction_db + atmospheric_db + pointing_db + static_coupling_db,
        })
    }

    /// Power transmittance 10^(-total/10).
    pub fn transmittance(&self) -> T {
        db_to_transmittance(self.total_db)
    }
}

pub fn db_to_transmittance<T: Real>(db: T) -> T {
    scalar::<T>(10.0).powf(-db / scalar::<T>(10.0))
}

pub fn transmittance_to_db<T: Real>(transmittance: T) -> T {
    -scalar::<T>(10.0) * transmittance.log10()
}

/// 1/e^2 radius from an intensity full width at half maximum.
pub fn fwhm_to_waist<T: Real>(fwhm: T) -> T {
    fwhm / (scalar::<T>(2.0) * scalar::<T>(2.0).ln()).sqrt()
}

// ---------------------------------------------------------------------------
// Propagation
// ---------------------------------------------------------------------------

/// Gaussian-beam 1/e^2 radius after propagating `z` from a waist `w0`.
pub fn gaussian_radius<T: Real>(w0: T, z: T, wavelength: T) -> T {
    let spread = z * wavelength / (T::PI() * w0 * w0);
    w0 * (T::one() + spread * spread).sqrt()
}

/// Fraction of a Gaussian beam of radius `beam_radius` collected by a
/// circular aperture of radius `aperture_radius`: 1 - exp(-2 a^2 / w^2).
pub fn collection_fraction<T: Real>(aperture_radius: T, beam_radius: T) -> T {
    let ratio = aperture_radius / beam_radius;
    T::one() - (-scalar::<T>(2.0) * ratio * ratio).exp()
}

/// Waist maximizing receiver collection over `distance`, constrained to
/// `aperture_radius * MAX_WAIST_FRACTION`. Golden-section search, 1e-6
/// relative tolerance (the objective is unimodal in the waist).
pub fn optimal_waist<T: Real>(aperture_radius: T, distance: T, wavelength: T) -> T {
    let cap = aperture_radius * scalar::<T>(MAX_WAIST_FRACTION);
    let mut lo = cap * scalar::<T>(1e-6);
    let mut hi = cap;
    let inv_phi = scalar::<T>(0.618_033_988_749_895);
    let objective = |w0: T| gaussian_radius(w0, distance, wavelength); // minimize

    let mut x1 = hi - (hi - lo) * inv_phi;
    let mut x2 = lo + (hi - lo) * inv_phi;
    let mut f1 = objective(x1);
    let mut f2 = objective(x2);
    for _ in 0..120 {
        if (hi - lo) <= hi * scalar::<T>(1e-9) {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - (hi - lo) * inv_phi;
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + (hi - lo) * inv_phi;
            f2 = objective(x2);
        }
    }
    // when the constraint binds the optimum sits exactly on the cap
    let mid = (lo + hi) * scalar::<T>(0.5);
    if objective(cap) <= objective(mid) {
        cap
    } else {
        mid
    }
}

/// Diffraction loss of one link in dB:
/// -10 log10(collection at the receive pupil).
pub fn diffraction_loss_db<T: Real>(geometry: &BeamGeometry<T>, distance: T) -> T {
    let w0 = geometry.waist_for(distance);
    let w = gaussian_radius(w0, distance, geometry.wavelength);
    let frac = collection_fraction(geometry.rx_aperture * scalar::<T>(0.5), w);
    (-scalar::<T>(10.0) * frac.log10()).max(T::zero())
}

/// Extinction over `distance` under `condition`, default coefficient table.
pub fn atmospheric_loss_db<T: Real>(distance: T, condition: SkyCondition) -> T {
    atmospheric_loss_db_with(&AtmosphereTable::default(), distance, condition)
}

pub fn atmospheric_loss_db_with<T: Real>(
    table: &AtmosphereTable<T>,
    distance: T,
    condition: SkyCondition,
) -> T {
    table.coefficient(condition) * distance / scalar::<T>(1000.0)
}

/// Mean fiber-coupling penalty under isotropic Gaussian pointing jitter of
/// per-axis RMS `jitter_rms` at the fiber plane:
/// 10 log10(1 + 4 sigma^2 / w_m^2) with w_m the mode field radius.
///
/// This is the exact expectation of the displaced-spot power coupling
/// exp(-2 d^2 / w_m^2) over the two-axis displacement distribution.
pub fn pointing_penalty_db<T: Real>(jitter_rms: T, fiber: &FiberMode<T>) -> T {
    let w_m = fiber.mode_field_diameter * scalar::<T>(0.5);
    let ratio = jitter_rms / w_m;
    let arg = T::one() + scalar::<T>(4.0) * ratio * ratio;
    scalar::<T>(10.0) * arg.log10()
}

/// Compose the full additive budget of one link.
pub fn total_link_budget<T: Real>(
    geometry: &BeamGeometry<T>,
    distance: T,
    condition: SkyCondition,
    jitter_rms: T,
    fiber: &FiberMode<T>,
    static_db: T,
) -> Result<LinkBudget<T>, OpticsError> {
    LinkBudget::new(
        diffraction_loss_db(geometry, distance),
        atmospheric_loss_db(distance, condition),
        pointing_penalty_db(jitter_rms, fiber),
        static_db,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    const LAMBDA: f64 = 810e-9;

    #[test]
    fn gaussian_radius_properties() {
        let w0 = 5e-3;
        assert_eq!(gaussian_radius(w0, 0.0, LAMBDA), w0);
        let rayleigh = std::f64::consts::PI * w0 * w0 / LAMBDA;
        let at_zr = gaussian_radius(w0, rayleigh, LAMBDA);
        assert!((at_zr - w0 * 2.0f64.sqrt()).abs() < 1e-12);
        // far-field divergence
        let z = 100.0 * rayleigh;
        let slope = gaussian_radius(w0, z, LAMBDA) / z;
        let theta = LAMBDA / (std::f64::consts::PI * w0);
        assert!((slope / theta - 1.0).abs() < 0.01);
    }

    #[test]
    fn collection_fraction_closed_forms() {
        assert!((collection_fraction(1.0, 1.0) - (1.0 - (-2.0f64).exp())).abs() < 1e-12);
        assert!(
            (collection_fraction(1.0 / 2.0f64.sqrt(), 1.0) - (1.0 - (-1.0f64).exp())).abs()
                < 1e-12
        );
        assert!(collection_fraction(50.0, 1.0) > 0.999_999);
        assert!(collection_fraction(0.01, 1.0) > 0.0);
    }

    #[test]
    fn optimal_waist_beats_grid() {
        for (a, z) in [(0.15, 1e5), (0.0132, 100.0), (0.05, 2e4), (0.2, 5e5)] {
            let best = optimal_waist(a, z, LAMBDA);
            let f_best = collection_fraction(a, gaussian_radius(best, z, LAMBDA));
            let cap = a * MAX_WAIST_FRACTION;
            for k in 1..=1000 {
                let w0 = cap * k as f64 / 1000.0;
                let f = collection_fraction(a, gaussian_radius(w0, z, LAMBDA));
                assert!(
                    f_best >= f - 1e-9,
                    "grid waist {w0} beats optimum at a={a}, z={z}"
                );
            }
        }
    }

    #[test]
    fn optimal_waist_scaling_law() {
        // doubling the aperture at fixed z/a^2 (Fresnel number) doubles w0
        let a = 0.05;
        let z = 3e4;
        let w1 = optimal_waist(a, z, LAMBDA);
        let w2 = optimal_waist(2.0 * a, 4.0 * z, LAMBDA);
        assert!((w2 / w1 - 2.0).abs() < 1e-5, "w2/w1 = {}", w2 / w1);
    }

    #[test]
    fn optimal_waist_short_distance_interior() {
        // far below the Rayleigh range the optimum sits at sqrt(z lambda / pi),
        // not at the cap
        let a = 0.0132;
        let z = 100.0;
        let w = optimal_waist(a, z, LAMBDA);
        let interior = (z * LAMBDA / std::f64::consts::PI).sqrt();
        assert!((w / interior - 1.0).abs() < 1e-3, "w = {w}, interior = {interior}");
        assert!(w < a * MAX_WAIST_FRACTION * 0.9);
    }

    #[test]
    fn wide_area_diffraction_point() {
        let geom = BeamGeometry::symmetric(LAMBDA, 0.3, WaistMode::<f64>::Optimal).unwrap();
        let loss = diffraction_loss_db(&geom, 100e3);
        assert!(
            (loss - 2.79).abs() < 0.75,
            "100 km / 300 mm loss = {loss} dB"
        );
    }

    #[test]
    fn diffraction_monotonicity_grids() {
        // nondecreasing in distance, nonincreasing in either aperture
        for i in 0..20 {
            for j in 0..20 {
                let d1 = 1e3 * (1.0 + i as f64);
                let d2 = d1 + 500.0;
                let ap = 0.05 + 0.02 * j as f64;
                let g = BeamGeometry::symmetric(LAMBDA, ap, WaistMode::<f64>::Optimal).unwrap();
                assert!(diffraction_loss_db(&g, d2) >= diffraction_loss_db(&g, d1) - 1e-9);

                let g_big_rx =
                    BeamGeometry::new(LAMBDA, ap, ap + 0.01, WaistMode::<f64>::Optimal).unwrap();
                assert!(diffraction_loss_db(&g_big_rx, d1) <= diffraction_loss_db(&g, d1) + 1e-9);
                let g_big_tx =
                    BeamGeometry::new(LAMBDA, ap + 0.01, ap, WaistMode::<f64>::Optimal).unwrap();
                assert!(diffraction_loss_db(&g_big_tx, d1) <= diffraction_loss_db(&g, d1) + 1e-9);
            }
        }
    }

    #[test]
    fn local_link_regression_and_shape() {
        // 26.4 mm FWHM beam through 26.4 mm pupils at 100 m; constant frozen
        // from the propagation formulas at first implementation.
        let w0 = fwhm_to_waist(0.0264);
        let geom = BeamGeometry::symmetric(LAMBDA, 0.0264, WaistMode::Fixed(w0)).unwrap();
        let loss100 = diffraction_loss_db(&geom, 100.0);
        assert!((loss100 - 3.0183).abs() < 1e-3, "loss at 100 m = {loss100}");
        // Monotone over 10 m .. 1 km
        let mut prev = diffraction_loss_db(&geom, 10.0);
        for k in 1..=100 {
            let d = 10.0 + k as f64 * 9.9;
            let cur = diffraction_loss_db(&geom, d);
            assert!(cur >= prev - 1e-12, "not monotone at {d}");
            prev = cur;
        }
    }

    #[test]
    fn optimal_never_worse_than_fixed() {
        let mut rng = crate::seed::rng(2024);
        for _ in 0..1000 {
            let a: f64 = rng.random_range(0.01..0.4);
            let z: f64 = rng.random_range(10.0..2e5);
            // admissible waists share the optimizer's cap (pupil radius based)
            let w0: f64 = rng.random_range(1e-4..(a / 2.0) * MAX_WAIST_FRACTION);
            let fixed = BeamGeometry::symmetric(LAMBDA, a, WaistMode::Fixed(w0)).unwrap();
            let optimal = BeamGeometry::symmetric(LAMBDA, a, WaistMode::<f64>::Optimal).unwrap();
            assert!(
                diffraction_loss_db(&optimal, z) <= diffraction_loss_db(&fixed, z) + 1e-9,
                "a={a} z={z} w0={w0}"
            );
        }
    }

    #[test]
    fn atmospheric_table() {
        assert_eq!(atmospheric_loss_db(0.0, SkyCondition::Rain), 0.0);
        let d = 5e3;
        assert!(
            atmospheric_loss_db(d, SkyCondition::Rain)
                >= atmospheric_loss_db(d, SkyCondition::ClearDay)
        );
        assert!(
            atmospheric_loss_db(d, SkyCondition::ClearDay)
                >= atmospheric_loss_db(d, SkyCondition::ClearNight)
        );
        assert!(atmospheric_loss_db(100e3, SkyCondition::HighAltitude) <= 3.0);
    }

    #[test]
    fn pointing_penalty_closed_form() {
        let fiber = FiberMode::new(5e-6f64).unwrap();
        assert_eq!(pointing_penalty_db(0.0, &fiber), 0.0);
        let p = pointing_penalty_db(1.33e-6, &fiber);
        assert!((p - 3.2884).abs() < 0.001, "penalty = {p}");
        let mut prev = 0.0;
        for k in 1..=20 {
            let cur = pointing_penalty_db(k as f64 * 0.2e-6, &fiber);
            assert!(cur > prev);
            prev = cur;
        }
    }

    #[test]
    fn pointing_penalty_matches_monte_carlo() {
        let fiber = FiberMode::new(5e-6).unwrap();
        let w_m: f64 = 2.5e-6;
        let mut rng = crate::seed::rng(77);
        for sigma_ratio in [0.25, 0.532, 1.0, 1.7] {
            let sigma = sigma_ratio * w_m;
            let n = 400_000;
            let mut acc = 0.0;
            for _ in 0..n {
                let dx: f64 = rng.sample::<f64, _>(rand_distr::StandardNormal) * sigma;
                let dy: f64 = rng.sample::<f64, _>(rand_distr::StandardNormal) * sigma;
                acc += (-2.0 * (dx * dx + dy * dy) / (w_m * w_m)).exp();
            }
            let mc_db = -10.0 * (acc / n as f64).log10();
            let closed = pointing_penalty_db(sigma, &fiber);
            assert!(
                (mc_db - closed).abs() < 0.02,
                "sigma/w = {sigma_ratio}: MC {mc_db} vs closed {closed}"
            );
        }
    }

    #[test]
    fn budget_composition() {
        let zero = LinkBudget::new(0.0f64, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(zero.total_db, 0.0);
        assert_eq!(zero.transmittance(), 1.0);

        let b = LinkBudget::new(3.0f64, 0.07, 3.29, 5.6).unwrap();
        assert!((b.total_db - (3.0 + 0.07 + 3.29 + 5.6)).abs() < 1e-12);
        let t = b.transmittance();
        assert!((transmittance_to_db(t) - b.total_db).abs() < 1e-12);

        assert!(matches!(
            LinkBudget::new(-0.1f64, 0.0, 0.0, 0.0),
            Err(OpticsError::NegativeComponent(_))
        ));
    }

    #[test]
    fn geometry_validation() {
        assert!(BeamGeometry::symmetric(LAMBDA, 0.0264, WaistMode::<f64>::Optimal).is_ok());
        assert!(BeamGeometry::symmetric(-1.0, 0.0264, WaistMode::<f64>::Optimal).is_err());
        assert!(BeamGeometry::symmetric(0.1, 0.0264, WaistMode::<f64>::Optimal).is_err());
        assert!(BeamGeometry::symmetric(LAMBDA, 0.0264, WaistMode::Fixed(-2.0)).is_err());
        assert!(FiberMode::new(0.0).is_err());
    }
}
