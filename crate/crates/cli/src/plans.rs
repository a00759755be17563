//! Relay-chain planning from a declarative spec.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use entlink_core::network::{
    link_feasible, plan_relay_chain, predict_end_to_end, DistributionMode, LinkModel, LinkSpec,
    NetworkError, NodeKind, NodeSpec, PathPlan, SourceParams,
};
use entlink_core::optics::{AtmosphereTable, FiberMode, SkyCondition};

use crate::HarnessError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanSpec {
    pub name: String,
    pub mode: DistributionMode,
    /// End-to-end chain length, m.
    pub total_distance: f64,
    /// Loss cap per link, dB.
    pub per_link_max_db: f64,
    #[serde(default = "default_k_max")]
    pub k_max: usize,
    /// Force an exact segment count instead of searching for the minimum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segments: Option<usize>,
    pub v_src: f64,
    pub node_template: NodeTemplateCfg,
    pub link_model: LinkModelCfg,
    pub source: PlanSourceCfg,
}

fn default_k_max() -> usize {
    32
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeTemplateCfg {
    pub id: String,
    pub kind: NodeKind,
    pub altitude: f64,
    pub aperture: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkModelCfg {
    pub wavelength: f64,
    pub condition: SkyCondition,
    pub jitter_rms: f64,
    pub mode_field_diameter: f64,
    pub static_db: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanSourceCfg {
    pub pair_rate: f64,
    pub window: f64,
    pub bg_a: f64,
    pub bg_b: f64,
}

/// Plan plus per-link feasibility detail and provenance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanReport {
    pub name: String,
    pub version: String,
    pub config_hash: String,
    pub plan: PathPlan<f64>,
    pub per_link_feasible: Vec<bool>,
}

impl PlanSpec {
    fn node_template(&self) -> Result<NodeSpec<f64>, HarnessError> {
        NodeSpec::new(
            self.node_template.id.clone(),
            self.node_template.kind,
            self.node_template.altitude,
            self.node_template.aperture,
            0.0,
        )
        .map_err(|e| HarnessError::Validation(e.to_string()))
    }

    fn link_model(&self) -> Result<LinkModel<f64>, HarnessError> {
        Ok(LinkModel {
            wavelength: self.link_model.wavelength,
            condition: self.link_model.condition,
            atmosphere: AtmosphereTable::default(),
            jitter_rms: self.link_model.jitter_rms,
            fiber: FiberMode::new(self.link_model.mode_field_diameter)
                .map_err(|e| HarnessError::Validation(e.to_string()))?,
            static_db: self.link_model.static_db,
        })
    }

    fn source(&self) -> Result<SourceParams<f64>, HarnessError> {
        SourceParams::new(
            self.source.pair_rate,
            self.source.window,
            self.source.bg_a,
            self.source.bg_b,
        )
        .map_err(|e| HarnessError::Validation(e.to_string()))
    }

    pub fn config_hash(&self) -> String {
        let canonical = toml::to_string(self).expect("plan spec serializes");
        Sha256::digest(canonical.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

fn map_network_error(e: NetworkError) -> HarnessError {
    match e {
        NetworkError::Infeasible { .. } => HarnessError::Infeasible(e.to_string()),
        other => HarnessError::Validation(other.to_string()),
    }
}

/// Build a plan with a forced segment count (used for fixed topologies such
/// as the two-downlink field layout).
fn forced_plan(spec: &PlanSpec, segments: usize) -> Result<PathPlan<f64>, HarnessError> {
    if segments == 0 {
        return Err(HarnessError::Validation("segments must be >= 1".into()));
    }
    let template = spec.node_template()?;
    let model = spec.link_model()?;
    let d = spec.total_distance / segments as f64;
    let budget = model
        .budget(template.aperture, d)
        .map_err(|e| HarnessError::Validation(e.to_string()))?;
    let mut nodes = Vec::with_capacity(segments + 1);
    for i in 0..=segments {
        let mut node = template.clone();
        node.id = format!("{}-{i}", template.id);
        node.position = d * i as f64;
        nodes.push(node);
    }
    let mut links = Vec::with_capacity(segments);
    for i in 0..segments {
        links.push(
            LinkSpec::new(nodes[i].id.clone(), nodes[i + 1].id.clone(), d, budget)
                .map_err(map_network_error)?,
        );
    }
    let predicted = predict_end_to_end(&links, spec.mode, &spec.source()?, spec.v_src)
        .map_err(map_network_error)?;
    PathPlan::new(nodes, links, spec.mode, predicted).map_err(map_network_error)
}

pub fn run_plan(spec: &PlanSpec) -> Result<PlanReport, HarnessError> {
    if !(0.0..=1.0).contains(&spec.v_src) {
        return Err(HarnessError::Validation("field 'v_src' is out of range".into()));
    }
    if spec.total_distance <= 0.0 {
        return Err(HarnessError::Validation(
            "field 'total_distance' is out of range".into(),
        ));
    }
    let plan = match spec.segments {
        Some(k) => forced_plan(spec, k)?,
        None => plan_relay_chain(
            spec.total_distance,
            &spec.node_template()?,
            spec.per_link_max_db,
            &spec.link_model()?,
            &spec.source()?,
            spec.v_src,
            spec.mode,
            spec.k_max,
        )
        .map_err(map_network_error)?,
    };
    let per_link_feasible = plan
        .links
        .iter()
        .enumerate()
        .map(|(i, link)| {
            link_feasible(&plan.nodes[i], &plan.nodes[i + 1], link, spec.per_link_max_db).feasible
        })
        .collect();
    Ok(PlanReport {
        name: spec.name.clone(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        config_hash: spec.config_hash(),
        plan,
        per_link_feasible,
    })
}

/// Human-readable plan summary with per-link feasibility.
pub fn summarize(report: &PlanReport) -> String {
    let plan = &report.plan;
    let mut lines = vec![format!(
        "plan {}: {} links, {} relay node(s), end-to-end {:.2} dB",
        report.name,
        plan.links.len(),
        plan.relay_count(),
        plan.end_to_end_db
    )];
    for (i, link) in plan.links.iter().enumerate() {
        lines.push(format!(
            "  link {i}: {} -> {} | {:.1} m | {:.2} dB | {}",
            link.from,
            link.to,
            link.distance,
            link.budget.total_db,
            if report.per_link_feasible[i] {
                "feasible"
            } else {
                "infeasible"
            }
        ));
    }
    lines.push(format!(
        "predicted: {:.3e} coincidences/s, v_eff = {:.4}, |S| = {:.4}",
        plan.predicted.coincidence_rate,
        plan.predicted.effective_visibility,
        plan.predicted.s_abs
    ));
    lines.join("\n")
}

pub const BUILTIN_PLANS: &[(&str, &str)] = &[(
    "widearea-hap",
    include_str!("../scenarios/widearea-hap.toml"),
)];

pub fn resolve_plan(arg: &str) -> Result<PlanSpec, HarnessError> {
    let (text, origin) = match BUILTIN_PLANS.iter().find(|(n, _)| *n == arg) {
        Some((name, text)) => (text.to_string(), format!("builtin:{name}")),
        None => (crate::read_to_string(Path::new(arg))?, arg.to_string()),
    };
    toml::from_str(&text).map_err(|e| HarnessError::Parse {
        path: origin,
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widearea_builtin_plans_a_chain() {
        let spec = resolve_plan("widearea-hap").unwrap();
        let report = run_plan(&spec).unwrap();
        assert!(report.plan.links.len() >= 2, "300 km needs relays at 5 dB/link");
        assert!(report.per_link_feasible.iter().all(|f| *f));
        let summary = summarize(&report);
        assert!(summary.contains("feasible"));
    }

    #[test]
    fn forced_two_downlink_topology() {
        let mut spec = resolve_plan("widearea-hap").unwrap();
        spec.name = "local-downlink".into();
        spec.mode = DistributionMode::Distribution;
        spec.total_distance = 200.0;
        spec.segments = Some(2);
        spec.node_template = NodeTemplateCfg {
            id: "drone".into(),
            kind: NodeKind::Drone,
            altitude: 100.0,
            aperture: 0.0264,
        };
        spec.link_model.condition = SkyCondition::ClearDay;
        let report = run_plan(&spec).unwrap();
        assert_eq!(report.plan.links.len(), 2);
        assert_eq!(report.plan.relay_count(), 1);
        for link in &report.plan.links {
            assert!((link.distance - 100.0).abs() < 1e-9);
        }
    }

    #[test]
    fn single_link_when_trivially_short() {
        let mut spec = resolve_plan("widearea-hap").unwrap();
        spec.total_distance = 100.0;
        spec.per_link_max_db = 10.0;
        let report = run_plan(&spec).unwrap();
        assert_eq!(report.plan.relay_count(), 0);
    }

    #[test]
    fn infeasible_plan_is_reported() {
        let mut spec = resolve_plan("widearea-hap").unwrap();
        spec.link_model.static_db = 20.0;
        let err = run_plan(&spec).unwrap_err();
        assert!(matches!(err, HarnessError::Infeasible(_)));
        assert_eq!(err.exit_code(), 2);
    }
}
