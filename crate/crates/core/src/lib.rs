//! Models for drone-based free-space entanglement distribution links.
//!
//! The crate is split along the physical chain:
//!
//! - [`qstate`] — exact two-qubit polarization algebra: states, waveplates,
//!   projection probabilities, the CHSH S-parameter.
//! - [`counting`] — stochastic coincidence counting on top of a state: Poisson
//!   counts, accidental coincidences, E/S estimators with error bars.
//! - [`optics`] — deterministic channel model: Gaussian-beam diffraction,
//!   atmospheric attenuation, pointing-jitter fiber-coupling penalty.
//! - [`apt`] — two-stage (gimbal + fast-steering-mirror) tracking-loop
//!   simulation producing the residual jitter that feeds [`optics`].
//! - [`network`] — multi-node chains: earth-curvature feasibility, relay
//!   planning, closed-form end-to-end rate and S prediction.
//!
//! All numeric code is generic over the scalar type through the [`Real`]
//! trait; `f64` aliases for the main types live at the crate root.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

pub mod apt;
pub mod counting;
pub mod linalg;
pub mod network;
pub mod optics;
pub mod qstate;
pub mod seed;

/// Scalar type the models are generic over: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + Debug
        + Display
        + Default
        + Send
        + Sync
        + 'static
{
}

/// Lift an `f64` constant into the working scalar type.
#[inline]
pub fn scalar<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("constant not representable in scalar type")
}

pub type TwoQubitState64 = qstate::TwoQubitState<f64>;
pub type OneQubitUnitary64 = qstate::OneQubitUnitary<f64>;
pub type AnalyzerAngles64 = qstate::AnalyzerAngles<f64>;
pub type CountingConfig64 = counting::CountingConfig<f64>;
pub type CoincidenceRecord64 = counting::CoincidenceRecord<f64>;
pub type EstimateWithError64 = counting::EstimateWithError<f64>;
pub type BeamGeometry64 = optics::BeamGeometry<f64>;
pub type LinkBudget64 = optics::LinkBudget<f64>;
pub type FiberMode64 = optics::FiberMode<f64>;
pub type AptTrace64 = apt::AptTrace<f64>;
pub type PathPlan64 = network::PathPlan<f64>;
