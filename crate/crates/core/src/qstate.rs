//! Exact two-qubit polarization-state algebra.
//!
//! States are 4x4 density operators in the product basis ordered
//! (HH, HV, VH, VV); measurement settings are linear-polarizer angles in
//! radians. Everything in this module is analytic — no sampling — and is the
//! reference the stochastic counting layer is checked against.
//!
//! Conventions, fixed here once:
//!
//! - A polarizer at angle `theta` projects onto
//!   `cos(theta)|H> + sin(theta)|V>`.
//! - Retarders are `R(theta) . diag(1, exp(i*phi)) . R(-theta)` with
//!   retardance `phi = pi` (half-wave) or `pi/2` (quarter-wave), so the
//!   fast-axis eigenvalue is 1 and only relative phases are meaningful.
//! - The CHSH combination `S = E(a,b) - E(a,b') + E(a',b) + E(a',b')` is
//!   returned signed; the singlet at the canonical angles gives `-2*sqrt(2)`,
//!   and presentation layers report `|S|`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{CMat2, CMat4};
use crate::{scalar, Real};

/// Tolerance for algebraic identities (trace, hermiticity, unitarity).
///
/// 1e-12 against f64; widened to a multiple of machine epsilon for narrower
/// scalar types so the checks stay meaningful there.
fn algebra_tol<T: Real>() -> T {
    scalar::<T>(1e-12).max(T::epsilon() * scalar::<T>(1e2))
}

/// Tolerance for eigenvalue positivity (looser: eigensolver noise).
fn eigen_tol<T: Real>() -> T {
    scalar::<T>(1e-10).max(T::epsilon() * scalar::<T>(1e4))
}

#[derive(Debug, Error, PartialEq)]
pub enum QstateError {
    #[error("density matrix trace deviates from 1 by {0:e}")]
    NotNormalized(f64),
    #[error("density matrix deviates from Hermitian by {0:e}")]
    NotHermitian(f64),
    #[error("density matrix has negative eigenvalue {0:e}")]
    NotPositive(f64),
    #[error("matrix deviates from unitary by {0:e}")]
    NotUnitary(f64),
    #[error("visibility {0} outside [0, 1]")]
    VisibilityOutOfRange(f64),
    #[error("analyzer angle {0} outside [0, pi)")]
    AngleOutOfRange(f64),
    #[error("visibility undefined: fringe maximum + minimum is zero")]
    DegenerateState,
}

fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Two-qubit polarization state as a validated density operator.
///
/// Invariants (checked at construction): unit trace, Hermitian, positive
/// semidefinite. Instances are immutable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitState<T> {
    rho: CMat4<T>,
}

impl<T: Real> TwoQubitState<T> {
    pub fn new(rho: CMat4<T>) -> Result<Self, QstateError> {
        let tol = algebra_tol::<T>();
        let trace = rho.trace();
        let tr_dev = (trace - Complex::new(T::one(), T::zero())).norm();
        if tr_dev > tol {
            return Err(QstateError::NotNormalized(to_f64(tr_dev)));
        }
        let herm_dev = rho.max_abs_diff(&rho.adjoint());
        if herm_dev > tol {
            return Err(QstateError::NotHermitian(to_f64(herm_dev)));
        }
        let min_ev = rho.hermitian_eigenvalues()[0];
        if min_ev < -eigen_tol::<T>() {
            return Err(QstateError::NotPositive(to_f64(min_ev)));
        }
        Ok(Self { rho })
    }

    pub fn rho(&self) -> &CMat4<T> {
        &self.rho
    }

    /// tr(rho^2); 1 for pure states.
    pub fn purity(&self) -> T {
        self.rho.mul(&self.rho).trace().re
    }

    pub fn eigenvalues(&self) -> [T; 4] {
        self.rho.hermitian_eigenvalues()
    }

    /// Conjugate by a local product unitary: (uA x uB) rho (uA x uB)^dag.
    pub fn apply_local(&self, ua: &OneQubitUnitary<T>, ub: &OneQubitUnitary<T>) -> Self {
        let u = ua.matrix().kron(ub.matrix());
        let rho = u.mul(&self.rho).mul(&u.adjoint());
        Self::new(rho).expect("unitary conjugation preserves state validity")
    }

    /// Probability of a joint click with linear polarizers at `theta_a`,
    /// `theta_b`: tr(rho . P(theta_a) x P(theta_b)), clamped to [0, 1].
    pub fn joint_probability(&self, theta_a: T, theta_b: T) -> T {
        let proj = projector(theta_a).kron(&projector(theta_b));
        let p = self.rho.mul(&proj).trace().re;
        p.max(T::zero()).min(T::one())
    }

    /// Transmission of the first-arm polarizer alone: tr(rho . P(theta) x I).
    pub fn marginal_probability_a(&self, theta: T) -> T {
        let proj = projector(theta).kron(&CMat2::identity());
        self.rho.mul(&proj).trace().re.max(T::zero()).min(T::one())
    }

    /// Transmission of the second-arm polarizer alone: tr(rho . I x P(theta)).
    pub fn marginal_probability_b(&self, theta: T) -> T {
        let proj = CMat2::identity().kron(&projector(theta));
        self.rho.mul(&proj).trace().re.max(T::zero()).min(T::one())
    }

    /// Quantum correlation E between the stations at the given settings:
    /// P(a,b) + P(a+,b+) - P(a+,b) - P(a,b+) with + denoting the orthogonal
    /// setting (angle + pi/2).
    pub fn correlation_e(&self, theta_a: T, theta_b: T) -> T {
        let quarter = T::FRAC_PI_2();
        self.joint_probability(theta_a, theta_b)
            + self.joint_probability(theta_a + quarter, theta_b + quarter)
            - self.joint_probability(theta_a + quarter, theta_b)
            - self.joint_probability(theta_a, theta_b + quarter)
    }

    /// Signed CHSH parameter S = E(a,b) - E(a,b') + E(a',b) + E(a',b').
    pub fn chsh_s(&self, angles: &AnalyzerAngles<T>) -> T {
        self.correlation_e(angles.a, angles.b) - self.correlation_e(angles.a, angles.b_prime)
            + self.correlation_e(angles.a_prime, angles.b)
            + self.correlation_e(angles.a_prime, angles.b_prime)
    }

    /// Fringe contrast (max-min)/(max+min) of the joint probability as the
    /// second-arm analyzer sweeps, with the first arm fixed per `basis`.
    ///
    /// The joint probability is an exact second-harmonic sinusoid in the
    /// sweep angle, so the extrema come from its three Fourier coefficients
    /// rather than a dense scan.
    pub fn visibility(&self, basis: VisibilityBasis) -> Result<T, QstateError> {
        let fixed = match basis {
            VisibilityBasis::HV => T::zero(),
            VisibilityBasis::DA => T::FRAC_PI_4(),
        };
        let p0 = self.joint_probability(fixed, T::zero());
        let p45 = self.joint_probability(fixed, T::FRAC_PI_4());
        let p90 = self.joint_probability(fixed, T::FRAC_PI_2());
        let half = scalar::<T>(0.5);
        let c0 = (p0 + p90) * half;
        let c1 = (p0 - p90) * half;
        let c2 = p45 - c0;
        if c0 <= algebra_tol::<T>() {
            return Err(QstateError::DegenerateState);
        }
        Ok((c1 * c1 + c2 * c2).sqrt() / c0)
    }
}

/// Validated 2x2 unitary acting on one polarization qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OneQubitUnitary<T> {
    u: CMat2<T>,
}

impl<T: Real> OneQubitUnitary<T> {
    pub fn new(u: CMat2<T>) -> Result<Self, QstateError> {
        let dev = u.mul(&u.adjoint()).max_abs_diff(&CMat2::identity());
        if dev > algebra_tol::<T>() {
            return Err(QstateError::NotUnitary(to_f64(dev)));
        }
        Ok(Self { u })
    }

    pub fn identity() -> Self {
        Self {
            u: CMat2::identity(),
        }
    }

    pub fn matrix(&self) -> &CMat2<T> {
        &self.u
    }
}

/// Waveplate retardance selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WaveplateKind {
    Half,
    Quarter,
}

/// The four analyzer settings of a CHSH measurement, each in [0, pi).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyzerAngles<T> {
    pub a: T,
    pub a_prime: T,
    pub b: T,
    pub b_prime: T,
}

impl<T: Real> AnalyzerAngles<T> {
    pub fn new(a: T, a_prime: T, b: T, b_prime: T) -> Result<Self, QstateError> {
        for v in [a, a_prime, b, b_prime] {
            if v < T::zero() || v >= T::PI() {
                return Err(QstateError::AngleOutOfRange(to_f64(v)));
            }
        }
        Ok(Self {
            a,
            a_prime,
            b,
            b_prime,
        })
    }

    /// The projection groups used for the Bell test:
    /// (a, a') = (0, pi/4), (b, b') = (pi/8, 3pi/8).
    pub fn canonical() -> Self {
        Self {
            a: T::zero(),
            a_prime: T::FRAC_PI_4(),
            b: T::FRAC_PI_8(),
            b_prime: scalar::<T>(3.0) * T::FRAC_PI_8(),
        }
    }

    /// The four (theta_a, theta_b) setting pairs in estimator order:
    /// (a,b), (a,b'), (a',b), (a',b').
    pub fn setting_pairs(&self) -> [(T, T); 4] {
        [
            (self.a, self.b),
            (self.a, self.b_prime),
            (self.a_prime, self.b),
            (self.a_prime, self.b_prime),
        ]
    }
}

/// Fringe bases for visibility measurements: first arm projected on H (HV)
/// or on D (DA).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VisibilityBasis {
    HV,
    DA,
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

/// Linear-polarizer projector |theta><theta| with |theta> = cos|H> + sin|V>.
pub fn projector<T: Real>(theta: T) -> CMat2<T> {
    let (s, c) = theta.sin_cos();
    let z = T::zero();
    CMat2::from_rows([
        [Complex::new(c * c, z), Complex::new(c * s, z)],
        [Complex::new(c * s, z), Complex::new(s * s, z)],
    ])
}

/// The singlet-like Bell state (|HV> - |VH>)/sqrt(2) as a density operator.
pub fn bell_psi_minus<T: Real>() -> TwoQubitState<T> {
    let z = Complex::new(T::zero(), T::zero());
    let amp = Complex::new(T::one() / scalar::<T>(2.0).sqrt(), T::zero());
    // basis order (HH, HV, VH, VV)
    let ket = [z, amp, -amp, z];
    TwoQubitState::new(CMat4::outer(ket)).expect("Bell state is a valid density matrix")
}

/// Maximally mixed two-qubit state I/4.
pub fn maximally_mixed<T: Real>() -> TwoQubitState<T> {
    TwoQubitState::new(CMat4::identity().scale_re(scalar::<T>(0.25)))
        .expect("I/4 is a valid density matrix")
}

/// Isotropic-noise entangled state V |psi-><psi-| + (1-V) I/4.
///
/// `v` is the fringe visibility the state produces in any linear basis.
pub fn werner<T: Real>(v: T) -> Result<TwoQubitState<T>, QstateError> {
    if v < T::zero() || v > T::one() {
        return Err(QstateError::VisibilityOutOfRange(to_f64(v)));
    }
    let pure = bell_psi_minus::<T>();
    let mixed = CMat4::identity().scale_re((T::one() - v) * scalar::<T>(0.25));
    TwoQubitState::new(pure.rho().scale_re(v).add(&mixed))
}

/// Retarder with fast axis at `theta`: R(theta) diag(1, e^{i phi}) R(-theta).
/// A half-wave plate at `theta` is [[cos 2t, sin 2t], [sin 2t, -cos 2t]].
pub fn waveplate_unitary<T: Real>(kind: WaveplateKind, theta: T) -> OneQubitUnitary<T> {
    let phi = match kind {
        WaveplateKind::Half => T::PI(),
        WaveplateKind::Quarter => T::FRAC_PI_2(),
    };
    let retard = CMat2::from_rows([
        [
            Complex::new(T::one(), T::zero()),
            Complex::new(T::zero(), T::zero()),
        ],
        [
            Complex::new(T::zero(), T::zero()),
            Complex::new(phi.cos(), phi.sin()),
        ],
    ]);
    let rot = rotation_matrix(theta);
    let u = rot.mul(&retard).mul(&rotation_matrix(-theta));
    OneQubitUnitary::new(u).expect("retarder construction is unitary")
}

/// Real rotation by `theta` in the H/V plane (residual channel rotation).
pub fn rotation_unitary<T: Real>(theta: T) -> OneQubitUnitary<T> {
    OneQubitUnitary::new(rotation_matrix(theta)).expect("rotation is unitary")
}

fn rotation_matrix<T: Real>(theta: T) -> CMat2<T> {
    let (s, c) = theta.sin_cos();
    let z = T::zero();
    CMat2::from_rows([
        [Complex::new(c, z), Complex::new(-s, z)],
        [Complex::new(s, z), Complex::new(c, z)],
    ])
}
