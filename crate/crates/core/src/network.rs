//! Multi-node topology modeling and relay planning.
//!
//! Geometry is a 1-D chain along the path: the scaling questions here are
//! distance-only, so nodes carry a chainage coordinate rather than a 3-D
//! position. Two operating modes exist: "distribution" (the first node holds
//! the pair source and sends one photon down the first link, the other
//! through the remaining chain — the two-downlink field topology is the
//! two-link case) and "relay cascade" (one photon of each pair traverses
//! every link via mirror relays, no detection at intermediate nodes).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::counting::{self, CountingError};
use crate::optics::{
    diffraction_loss_db, pointing_penalty_db, AtmosphereTable, BeamGeometry, FiberMode,
    LinkBudget, OpticsError, SkyCondition, WaistMode,
};
use crate::{scalar, Real};

/// Mean earth radius, m.
pub const EARTH_RADIUS_M: f64 = 6.371e6;

#[derive(Debug, Error, PartialEq)]
pub enum NetworkError {
    #[error("invalid node: {0}")]
    InvalidNode(&'static str),
    #[error("invalid link: {0}")]
    InvalidLink(&'static str),
    #[error("invalid path plan: {0}")]
    InvalidPlan(String),
    #[error("no feasible chain within {k_max} segments: {binding} constraint binds ({detail})")]
    Infeasible {
        k_max: usize,
        binding: InfeasibleReason,
        detail: String,
    },
    #[error(transparent)]
    Optics(#[from] OpticsError),
    #[error("prediction failed: {0}")]
    Counting(#[from] CountingError),
}

/// Which constraint a link violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InfeasibleReason {
    /// Beyond the line-of-sight horizon of the endpoint altitudes.
    Curvature,
    /// Budget exceeds the allowed per-link loss.
    Loss,
}

impl std::fmt::Display for InfeasibleReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InfeasibleReason::Curvature => write!(f, "curvature"),
            InfeasibleReason::Loss => write!(f, "loss"),
        }
    }
}

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Ground,
    Drone,
    /// High-altitude platform.
    Hap,
}

/// One node of a chain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeSpec<T> {
    pub id: String,
    pub kind: NodeKind,
    /// Altitude above the tangent sphere, m.
    pub altitude: T,
    /// Telescope pupil diameter, m.
    pub aperture: T,
    /// Chainage along the path, m.
    pub position: T,
}

impl<T: Real> NodeSpec<T> {
    pub fn new(
        id: impl Into<String>,
        kind: NodeKind,
        altitude: T,
        aperture: T,
        position: T,
    ) -> Result<Self, NetworkError> {
        if altitude < T::zero() {
            return Err(NetworkError::InvalidNode("altitude must be nonnegative"));
        }
        if aperture <= T::zero() {
            return Err(NetworkError::InvalidNode("aperture must be positive"));
        }
        Ok(Self {
            id: id.into(),
            kind,
            altitude,
            aperture,
            position,
        })
    }
}

/// One directed link of a chain with its computed budget.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinkSpec<T> {
    pub from: String,
    pub to: String,
    /// Path length, m.
    pub distance: T,
    pub budget: LinkBudget<T>,
}

impl<T: Real> LinkSpec<T> {
    pub fn new(
        from: impl Into<String>,
        to: impl Into<String>,
        distance: T,
        budget: LinkBudget<T>,
    ) -> Result<Self, NetworkError> {
        if distance <= T::zero() {
            return Err(NetworkError::InvalidLink("distance must be positive"));
        }
        Ok(Self {
            from: from.into(),
            to: to.into(),
            distance,
            budget,
        })
    }
}

/// Feasibility verdict with the violated constraints, if any.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Feasibility {
    pub feasible: bool,
    pub reasons: Vec<InfeasibleReason>,
}

/// How pair photons map onto the chain links.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistributionMode {
    /// Source at the first node: photon A down link 0, photon B through the
    /// remaining links.
    Distribution,
    /// Source before the chain: photon B relayed through every link,
    /// photon A detected locally.
    RelayCascade,
}

/// Source-side parameters needed for the closed-form prediction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SourceParams<T> {
    /// Pair rate at the source, pairs/s.
    pub pair_rate: T,
    /// Coincidence window, s (zero means accidentals are ignored).
    pub window: T,
    /// Background singles rates at the two stations, counts/s.
    pub bg_a: T,
    pub bg_b: T,
}

impl<T: Real> SourceParams<T> {
    pub fn new(pair_rate: T, window: T, bg_a: T, bg_b: T) -> Result<Self, NetworkError> {
        if pair_rate < T::zero() || window < T::zero() || bg_a < T::zero() || bg_b < T::zero() {
            return Err(NetworkError::InvalidLink("source parameters must be nonnegative"));
        }
        Ok(Self {
            pair_rate,
            window,
            bg_a,
            bg_b,
        })
    }
}

/// Closed-form end-to-end prediction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prediction<T> {
    /// Coincidence rate summed over the four projector combinations, /s.
    pub coincidence_rate: T,
    pub effective_visibility: T,
    pub s_abs: T,
}

/// An ordered chain of nodes with per-link budgets and its prediction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathPlan<T> {
    pub nodes: Vec<NodeSpec<T>>,
    pub links: Vec<LinkSpec<T>>,
    pub mode: DistributionMode,
    pub end_to_end_db: T,
    pub predicted: Prediction<T>,
}

impl<T: Real> PathPlan<T> {
    /// Validating constructor: consecutive connectivity, additive total, and
    /// line-of-sight feasibility of every link.
    pub fn new(
        nodes: Vec<NodeSpec<T>>,
        links: Vec<LinkSpec<T>>,
        mode: DistributionMode,
        predicted: Prediction<T>,
    ) -> Result<Self, NetworkError> {
        if nodes.len() < 2 || links.len() != nodes.len() - 1 {
            return Err(NetworkError::InvalidPlan(format!(
                "{} nodes require {} links, got {}",
                nodes.len(),
                nodes.len().saturating_sub(1),
                links.len()
            )));
        }
        let mut total = T::zero();
        for (i, link) in links.iter().enumerate() {
            if link.from != nodes[i].id || link.to != nodes[i + 1].id {
                return Err(NetworkError::InvalidPlan(format!(
                    "link {i} connects {}->{}, expected {}->{}",
                    link.from,
                    link.to,
                    nodes[i].id,
                    nodes[i + 1].id
                )));
            }
            let horizon = horizon_distance(
                nodes[i].altitude,
                nodes[i + 1].altitude,
                scalar::<T>(EARTH_RADIUS_M),
            );
            if link.distance > horizon {
                return Err(NetworkError::InvalidPlan(format!(
                    "link {i} length exceeds the {}->{} horizon",
                    link.from, link.to
                )));
            }
            total = total + link.budget.total_db;
        }
        Ok(Self {
            nodes,
            links,
            mode,
            end_to_end_db: total,
            predicted,
        })
    }

    pub fn relay_count(&self) -> usize {
        self.nodes.len().saturating_sub(2)
    }
}

// ---------------------------------------------------------------------------
// Geometry
// ---------------------------------------------------------------------------

/// Maximum line-of-sight distance between two altitudes over a sphere:
/// sqrt(2 R h1) + sqrt(2 R h2), tangent-ray geometry without refraction.
pub fn horizon_distance<T: Real>(h1: T, h2: T, earth_radius: T) -> T {
    let two_r = scalar::<T>(2.0) * earth_radius;
    (two_r * h1).sqrt() + (two_r * h2).sqrt()
}

/// Check a link against the horizon of its endpoints and a loss budget cap.
pub fn link_feasible<T: Real>(
    a: &NodeSpec<T>,
    b: &NodeSpec<T>,
    link: &LinkSpec<T>,
    max_db: T,
) -> Feasibility {
    let mut reasons = Vec::new();
    let horizon = horizon_distance(a.altitude, b.altitude, scalar::<T>(EARTH_RADIUS_M));
    if link.distance > horizon {
        reasons.push(InfeasibleReason::Curvature);
    }
    if link.budget.total_db > max_db {
        reasons.push(InfeasibleReason::Loss);
    }
    Feasibility {
        feasible: reasons.is_empty(),
        reasons,
    }
}

// ---------------------------------------------------------------------------
// Planning
// ---------------------------------------------------------------------------

/// The per-link channel model used by the planner.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinkModel<T> {
    pub wavelength: T,
    pub condition: SkyCondition,
    pub atmosphere: AtmosphereTable<T>,
    /// Per-axis pointing jitter at the fiber plane, m.
    pub jitter_rms: T,
    pub fiber: FiberMode<T>,
    /// Fixed per-link coupling loss, dB.
    pub static_db: T,
}

impl<T: Real> LinkModel<T> {
    /// Diffraction-plus-extinction-plus-coupling budget of one symmetric
    /// link of the given pupil diameter, waist optimized per distance.
    pub fn budget(&self, aperture: T, distance: T) -> Result<LinkBudget<T>, OpticsError> {
        let geometry = BeamGeometry::symmetric(self.wavelength, aperture, WaistMode::Optimal)?;
        LinkBudget::new(
            diffraction_loss_db(&geometry, distance),
            crate::optics::atmospheric_loss_db_with(&self.atmosphere, distance, self.condition),
            pointing_penalty_db(self.jitter_rms, &self.fiber),
            self.static_db,
        )
    }
}

/// Split `total_distance` into the minimum number of equal segments whose
/// per-link budget fits under `per_link_max_db` and whose length stays within
/// the node horizon; relays are copies of `node_template` along the chain.
///
/// Per-link loss is strictly increasing in segment length under this model,
/// which makes equal spacing minimax-optimal and the first feasible segment
/// count minimal.
#[allow(clippy::too_many_arguments)]
pub fn plan_relay_chain<T: Real>(
    total_distance: T,
    node_template: &NodeSpec<T>,
    per_link_max_db: T,
    model: &LinkModel<T>,
    source: &SourceParams<T>,
    v_src: T,
    mode: DistributionMode,
    k_max: usize,
) -> Result<PathPlan<T>, NetworkError> {
    if total_distance <= T::zero() {
        return Err(NetworkError::InvalidPlan("total distance must be positive".into()));
    }
    if k_max == 0 {
        return Err(NetworkError::InvalidPlan("segment cap must be at least 1".into()));
    }
    let horizon = horizon_distance(
        node_template.altitude,
        node_template.altitude,
        scalar::<T>(EARTH_RADIUS_M),
    );

    for k in 1..=k_max {
        let d = total_distance / T::from_usize(k).unwrap();
        if d > horizon {
            continue;
        }
        let budget = model.budget(node_template.aperture, d)?;
        if budget.total_db > per_link_max_db {
            continue;
        }

        let mut nodes = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let mut node = node_template.clone();
            node.id = format!("{}-{i}", node_template.id);
            node.position = d * T::from_usize(i).unwrap();
            nodes.push(node);
        }
        let mut links = Vec::with_capacity(k);
        for i in 0..k {
            links.push(LinkSpec::new(
                nodes[i].id.clone(),
                nodes[i + 1].id.clone(),
                d,
                budget,
            )?);
        }
        let predicted = predict_end_to_end(&links, mode, source, v_src)?;
        return PathPlan::new(nodes, links, mode, predicted);
    }

    // Identify the binding constraint at the finest split.
    let d = total_distance / T::from_usize(k_max).unwrap();
    if d > horizon {
        return Err(NetworkError::Infeasible {
            k_max,
            binding: InfeasibleReason::Curvature,
            detail: format!("segment {d} m exceeds horizon {horizon} m"),
        });
    }
    let budget = model.budget(node_template.aperture, d)?;
    Err(NetworkError::Infeasible {
        k_max,
        binding: InfeasibleReason::Loss,
        detail: format!(
            "segment budget {} dB exceeds cap {per_link_max_db} dB",
            budget.total_db
        ),
    })
}

/// Closed-form end-to-end prediction for a chain of links.
///
/// The source is treated as singlet-class (flat polarizer marginals), so
/// station singles are `pair_rate * eta / 2 + background`; accidentals are
/// totaled over the four projector combinations of one setting, matching
/// [`counting::effective_visibility`]'s convention, and |S| is
/// `2 sqrt(2) * v_eff`.
pub fn predict_end_to_end<T: Real>(
    links: &[LinkSpec<T>],
    mode: DistributionMode,
    source: &SourceParams<T>,
    v_src: T,
) -> Result<Prediction<T>, NetworkError> {
    if links.is_empty() {
        return Err(NetworkError::InvalidPlan("prediction needs at least one link".into()));
    }
    let (eta_a, eta_b) = match mode {
        DistributionMode::Distribution => {
            let eta_a = links[0].budget.transmittance();
            let eta_b = links[1..]
                .iter()
                .fold(T::one(), |acc, l| acc * l.budget.transmittance());
            (eta_a, eta_b)
        }
        DistributionMode::RelayCascade => {
            let eta_b = links
                .iter()
                .fold(T::one(), |acc, l| acc * l.budget.transmittance());
            (T::one(), eta_b)
        }
    };
    let rate = source.pair_rate * eta_a * eta_b;
    let half = scalar::<T>(0.5);
    let s_a = source.pair_rate * eta_a * half + source.bg_a;
    let s_b = source.pair_rate * eta_b * half + source.bg_b;
    let accidental =
        scalar::<T>(4.0) * counting::accidental_rate(s_a, s_b, source.window);
    let v_eff = counting::effective_visibility(v_src, rate, accidental)?;
    Ok(Prediction {
        coincidence_rate: rate,
        effective_visibility: v_eff,
        s_abs: scalar::<T>(8.0).sqrt() * v_eff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ground(id: &str, position: f64) -> NodeSpec<f64> {
        NodeSpec::new(id, NodeKind::Ground, 2.0, 0.0264, position).unwrap()
    }

    fn hap_template() -> NodeSpec<f64> {
        NodeSpec::new("hap", NodeKind::Hap, 20e3, 0.3, 0.0).unwrap()
    }

    fn hap_model() -> LinkModel<f64> {
        LinkModel {
            wavelength: 810e-9,
            condition: SkyCondition::HighAltitude,
            atmosphere: AtmosphereTable::default(),
            jitter_rms: 0.0,
            fiber: FiberMode::new(5e-6).unwrap(),
            static_db: 0.0,
        }
    }

    fn quiet_source() -> SourceParams<f64> {
        SourceParams::new(2.4e6, 0.0, 0.0, 0.0).unwrap()
    }

    #[test]
    fn horizon_values() {
        assert_eq!(horizon_distance(0.0, 0.0, EARTH_RADIUS_M), 0.0);
        let h = horizon_distance(20e3, 20e3, EARTH_RADIUS_M);
        assert!(
            (h - 1_009_635.0).abs() < 1e3,
            "20 km pair horizon = {h} m"
        );
        assert!(h > 300e3, "comfortably beyond a 300 km link");
        assert_eq!(
            horizon_distance(5e3, 11e3, EARTH_RADIUS_M),
            horizon_distance(11e3, 5e3, EARTH_RADIUS_M)
        );
        assert!(
            horizon_distance(6e3, 11e3, EARTH_RADIUS_M) > horizon_distance(5e3, 11e3, EARTH_RADIUS_M)
        );
    }

    #[test]
    fn feasibility_reasons() {
        let a = NodeSpec::new("a", NodeKind::Hap, 20e3, 0.3, 0.0).unwrap();
        let b = NodeSpec::new("b", NodeKind::Hap, 20e3, 0.3, 100e3).unwrap();
        let budget = hap_model().budget(0.3, 100e3).unwrap();
        // wide-area link on a diffraction-only cap
        let diffraction_only = LinkBudget::new(budget.diffraction_db, 0.0, 0.0, 0.0).unwrap();
        let link = LinkSpec::new("a", "b", 100e3, diffraction_only).unwrap();
        let verdict = link_feasible(&a, &b, &link, 5.0);
        assert!(verdict.feasible, "{:?}", verdict.reasons);

        let too_far = LinkSpec::new("a", "b", 2_000e3, diffraction_only).unwrap();
        let verdict = link_feasible(&a, &b, &too_far, 5.0);
        assert!(!verdict.feasible);
        assert_eq!(verdict.reasons, vec![InfeasibleReason::Curvature]);

        let verdict = link_feasible(&a, &b, &link, 0.0);
        assert!(!verdict.feasible);
        assert_eq!(verdict.reasons, vec![InfeasibleReason::Loss]);
    }

    #[test]
    fn single_link_plan_when_short() {
        let plan = plan_relay_chain(
            50e3,
            &hap_template(),
            10.0,
            &hap_model(),
            &quiet_source(),
            0.974,
            DistributionMode::RelayCascade,
            32,
        )
        .unwrap();
        assert_eq!(plan.relay_count(), 0);
        assert_eq!(plan.links.len(), 1);
    }

    #[test]
    fn plan_minimality_and_invariants() {
        let model = hap_model();
        let template = hap_template();
        let plan = plan_relay_chain(
            300e3,
            &template,
            5.0,
            &model,
            &quiet_source(),
            0.974,
            DistributionMode::RelayCascade,
            64,
        )
        .unwrap();
        let k = plan.links.len();
        assert!(k >= 1);
        for link in &plan.links {
            assert!(link.budget.total_db <= 5.0 + 1e-9);
        }
        // sum identity
        let sum: f64 = plan.links.iter().map(|l| l.budget.total_db).sum();
        assert!((plan.end_to_end_db - sum).abs() < 1e-9);
        // minimality: one segment fewer must violate the cap (or horizon)
        if k > 1 {
            let d = 300e3 / (k - 1) as f64;
            let budget = model.budget(template.aperture, d).unwrap();
            let horizon = horizon_distance(20e3, 20e3, EARTH_RADIUS_M);
            assert!(
                budget.total_db > 5.0 || d > horizon,
                "k-1 segments would also be feasible"
            );
        }
        // consistency with a direct sweep for the largest feasible segment
        let mut first_feasible = None;
        for kk in 1..=64usize {
            let d = 300e3 / kk as f64;
            let b = model.budget(template.aperture, d).unwrap();
            if d <= horizon_distance(20e3, 20e3, EARTH_RADIUS_M) && b.total_db <= 5.0 {
                first_feasible = Some(kk);
                break;
            }
        }
        assert_eq!(first_feasible, Some(k));
    }

    #[test]
    fn equal_spacing_is_minimax_optimal() {
        // three segments: any grid-perturbed placement has a worse worst link
        let model = hap_model();
        let total = 360e3;
        let equal = model.budget(0.3, total / 3.0).unwrap().total_db;
        let steps = 24;
        for i in 1..steps {
            for j in (i + 1)..steps {
                let c1 = total * i as f64 / steps as f64;
                let c2 = total * j as f64 / steps as f64;
                let worst = [c1, c2 - c1, total - c2]
                    .iter()
                    .map(|d| model.budget(0.3, *d).unwrap().total_db)
                    .fold(f64::MIN, f64::max);
                assert!(worst >= equal - 1e-9, "cuts at {c1},{c2} beat equal spacing");
            }
        }
    }

    #[test]
    fn raising_cap_never_adds_relays() {
        let model = hap_model();
        let template = hap_template();
        let mut prev_links = usize::MAX;
        for cap in [3.0, 4.0, 5.0, 7.0, 10.0] {
            let plan = plan_relay_chain(
                300e3,
                &template,
                cap,
                &model,
                &quiet_source(),
                0.974,
                DistributionMode::RelayCascade,
                64,
            )
            .unwrap();
            assert!(plan.links.len() <= prev_links);
            prev_links = plan.links.len();
        }
    }

    #[test]
    fn infeasibility_reports_binding_constraint() {
        let mut model = hap_model();
        model.static_db = 12.0; // above any cap we allow
        let err = plan_relay_chain(
            300e3,
            &hap_template(),
            5.0,
            &model,
            &quiet_source(),
            0.974,
            DistributionMode::RelayCascade,
            16,
        )
        .unwrap_err();
        match err {
            NetworkError::Infeasible { binding, .. } => {
                assert_eq!(binding, InfeasibleReason::Loss)
            }
            other => panic!("unexpected error {other:?}"),
        }

        let sea_level = NodeSpec::new("buoy", NodeKind::Ground, 0.0, 0.3, 0.0).unwrap();
        let err = plan_relay_chain(
            300e3,
            &sea_level,
            50.0,
            &hap_model(),
            &quiet_source(),
            0.974,
            DistributionMode::RelayCascade,
            4,
        )
        .unwrap_err();
        match err {
            NetworkError::Infeasible { binding, .. } => {
                assert_eq!(binding, InfeasibleReason::Curvature)
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn prediction_lossless_and_field_desk_check() {
        let lossless = LinkBudget::new(0.0, 0.0, 0.0, 0.0).unwrap();
        let link = LinkSpec::new("s", "d", 100.0, lossless).unwrap();
        let p = predict_end_to_end(
            &[link],
            DistributionMode::RelayCascade,
            &quiet_source(),
            0.974,
        )
        .unwrap();
        assert!((p.coincidence_rate - 2.4e6).abs() < 1e-6);
        assert!((p.s_abs - 8.0f64.sqrt() * 0.974).abs() < 1e-12);

        // two-downlink field topology: 12 dB and 14 dB arms
        let alice = LinkSpec::new("drone", "alice", 100.0, LinkBudget::new(12.0, 0.0, 0.0, 0.0).unwrap()).unwrap();
        let bob = LinkSpec::new("alice", "bob", 100.0, LinkBudget::new(14.0, 0.0, 0.0, 0.0).unwrap()).unwrap();
        let p = predict_end_to_end(
            &[alice, bob],
            DistributionMode::Distribution,
            &quiet_source(),
            0.974,
        )
        .unwrap();
        let expected = 2.4e6 * 10f64.powf(-2.6);
        assert!(
            ((p.coincidence_rate - expected) / expected).abs() < 1e-12,
            "rate {} vs {expected}",
            p.coincidence_rate
        );
        assert!((p.coincidence_rate - 6.0e3).abs() < 50.0);
    }

    #[test]
    fn prediction_monotone_in_loss() {
        let source = quiet_source();
        let mut prev = f64::INFINITY;
        for extra in [0.0, 1.0, 3.0, 8.0] {
            let link = LinkSpec::new(
                "s",
                "d",
                100.0,
                LinkBudget::new(2.0 + extra, 0.0, 0.0, 0.0).unwrap(),
            )
            .unwrap();
            let p =
                predict_end_to_end(&[link], DistributionMode::RelayCascade, &source, 0.9).unwrap();
            assert!(p.coincidence_rate < prev);
            prev = p.coincidence_rate;
        }
    }

    #[test]
    fn plan_constructor_validation() {
        let budget = LinkBudget::new(1.0, 0.0, 0.0, 0.0).unwrap();
        let nodes = vec![ground("a", 0.0), ground("b", 100.0)];
        let pred = Prediction {
            coincidence_rate: 1.0,
            effective_visibility: 0.9,
            s_abs: 2.5,
        };
        // wrong connectivity
        let bad_link = vec![LinkSpec::new("a", "zz", 100.0, budget).unwrap()];
        assert!(matches!(
            PathPlan::new(nodes.clone(), bad_link, DistributionMode::Distribution, pred),
            Err(NetworkError::InvalidPlan(_))
        ));
        // wrong link count
        assert!(matches!(
            PathPlan::new(nodes.clone(), vec![], DistributionMode::Distribution, pred),
            Err(NetworkError::InvalidPlan(_))
        ));
        // good plan
        let links = vec![LinkSpec::new("a", "b", 100.0, budget).unwrap()];
        let plan = PathPlan::new(nodes, links, DistributionMode::Distribution, pred).unwrap();
        assert!((plan.end_to_end_db - 1.0).abs() < 1e-12);
    }
}
