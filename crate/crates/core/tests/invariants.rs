//! Property tests for the state algebra and estimator bounds.

use num_complex::Complex;
use proptest::prelude::*;

use entlink_core::counting::{estimate_e, CoincidenceRecord};
use entlink_core::linalg::CMat4;
use entlink_core::qstate::{bell_psi_minus, werner, AnalyzerAngles, TwoQubitState};

const TSIRELSON: f64 = 2.828_427_124_746_190_3; // 2 sqrt(2)

/// Random valid density matrix: G G^dag normalized to unit trace.
fn random_state(entries: [f64; 32]) -> TwoQubitState<f64> {
    let mut g = CMat4::<f64>::zero();
    for i in 0..4 {
        for j in 0..4 {
            let k = 2 * (4 * i + j);
            g.m[i][j] = Complex::new(entries[k], entries[k + 1]);
        }
    }
    let mut rho = g.mul(&g.adjoint());
    let trace = rho.trace().re;
    // fall back to the maximally mixed state on a degenerate draw
    if trace < 1e-9 {
        rho = CMat4::identity().scale_re(0.25);
    } else {
        rho = rho.scale_re(1.0 / trace);
    }
    TwoQubitState::new(rho).expect("normalized Gram matrix is a valid state")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn correlation_bounded_and_tsirelson(
        entries in prop::array::uniform32(-1.0f64..1.0),
        a in 0.0f64..std::f64::consts::PI,
        a_prime in 0.0f64..std::f64::consts::PI,
        b in 0.0f64..std::f64::consts::PI,
        b_prime in 0.0f64..std::f64::consts::PI,
    ) {
        let state = random_state(entries);
        let e = state.correlation_e(a, b);
        prop_assert!((-1.0 - 1e-10..=1.0 + 1e-10).contains(&e));
        let angles = AnalyzerAngles::new(a, a_prime, b, b_prime).unwrap();
        let s = state.chsh_s(&angles);
        prop_assert!(s.abs() <= TSIRELSON + 1e-9, "S = {s}");
    }

    #[test]
    fn projector_completeness(
        entries in prop::array::uniform32(-1.0f64..1.0),
        theta_a in 0.0f64..std::f64::consts::PI,
        theta_b in 0.0f64..std::f64::consts::PI,
    ) {
        let state = random_state(entries);
        let q = std::f64::consts::FRAC_PI_2;
        let total = state.joint_probability(theta_a, theta_b)
            + state.joint_probability(theta_a + q, theta_b)
            + state.joint_probability(theta_a, theta_b + q)
            + state.joint_probability(theta_a + q, theta_b + q);
        prop_assert!((total - 1.0).abs() < 1e-12, "total = {total}");
    }

    #[test]
    fn singlet_shift_invariance(
        a in 0.0f64..std::f64::consts::PI,
        b in 0.0f64..std::f64::consts::PI,
        delta in -1.0f64..1.0,
    ) {
        let s = bell_psi_minus::<f64>();
        let base = s.correlation_e(a, b);
        let shifted = s.correlation_e(a + delta, b + delta);
        prop_assert!((base - shifted).abs() < 1e-12);
    }

    #[test]
    fn werner_linearity(v in 0.0f64..=1.0) {
        let angles = AnalyzerAngles::<f64>::canonical();
        let pure = bell_psi_minus::<f64>().chsh_s(&angles);
        let mixed = werner(v).unwrap().chsh_s(&angles);
        prop_assert!((mixed - v * pure).abs() < 1e-12);
    }

    #[test]
    fn estimate_e_stays_bounded(
        n_ab in 0u64..5000,
        n_ab_perp in 0u64..5000,
        n_aperp_b in 0u64..5000,
        n_aperp_bperp in 0u64..5000,
    ) {
        let record = CoincidenceRecord::<f64> {
            n_ab,
            n_ab_perp,
            n_aperp_b,
            n_aperp_bperp,
            setting: (0.0, 0.0),
        };
        if record.total() > 0 {
            let est = estimate_e(&record).unwrap();
            prop_assert!((-1.0..=1.0).contains(&est.value));
            prop_assert!(est.sigma >= 0.0 && est.sigma.is_finite());
        }
    }

    #[test]
    fn collection_fraction_bounded(
        aperture in 1e-6f64..10.0,
        beam in 1e-6f64..10.0,
    ) {
        let f = entlink_core::optics::collection_fraction(aperture, beam);
        prop_assert!(f > 0.0 && f <= 1.0, "fraction = {f}");
    }

    #[test]
    fn effective_visibility_dominated_by_source(
        v in 0.0f64..=1.0,
        true_rate in 1e-3f64..1e7,
        acc in 0.0f64..1e7,
    ) {
        let v_eff = entlink_core::counting::effective_visibility(v, true_rate, acc).unwrap();
        prop_assert!(v_eff <= v + 1e-15);
        let v_more = entlink_core::counting::effective_visibility(v, true_rate, acc + 1.0).unwrap();
        prop_assert!(v_more <= v_eff);
    }
}
