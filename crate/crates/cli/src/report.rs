//! Report documents: the discrimination result plus the fully resolved
//! scenario that produced it, so the file alone reproduces the run.

use cbdiscrim_core::discrimination::{cbc_families, cross_type_report, discriminate};
use cbdiscrim_core::{DiscriminationReport, OptimizerConfig};
use serde::{Deserialize, Serialize};

use crate::scenario::{ComplexPair, Scenario};
use crate::CliError;

/// Serializable mirror of the core report. Complex `z` follows the file
/// convention `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportBody {
    pub p_err_unassisted: f64,
    pub p_err_assisted: f64,
    pub bound: f64,
    pub best_bloch: BlochParams,
    pub best_p: ProbeParams,
    pub delta_singulars: [f64; 4],
    pub enhancement_flag: bool,
    pub audit_notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochParams {
    pub theta: f64,
    pub phi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeParams {
    pub x: f64,
    pub y: f64,
    pub z: ComplexPair,
}

impl From<&DiscriminationReport> for ReportBody {
    fn from(r: &DiscriminationReport) -> Self {
        ReportBody {
            p_err_unassisted: r.p_err_unassisted,
            p_err_assisted: r.p_err_assisted,
            bound: r.bound,
            best_bloch: BlochParams { theta: r.best_bloch.theta(), phi: r.best_bloch.phi() },
            best_p: ProbeParams {
                x: r.best_p.x(),
                y: r.best_p.y(),
                z: [r.best_p.z().re, r.best_p.z().im],
            },
            delta_singulars: r.delta_singulars,
            enhancement_flag: r.enhancement_flag,
            audit_notes: r.audit_notes.clone(),
        }
    }
}

/// Top-level report file: version, the scenario as run (optimizer block
/// pinned), and the result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub v: u32,
    pub scenario: Scenario,
    pub report: ReportBody,
}

impl ReportDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("report parse error: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Runs one scenario. Channel pairs from two different coherence-breaking
/// families go through the closed-form report (exact spectrum, zero
/// unassisted error, exact bound, numerics in the audit notes); everything
/// else takes the numeric pipeline.
pub fn run_discriminate(
    scenario: &Scenario,
    cfg: &OptimizerConfig,
) -> Result<ReportDocument, CliError> {
    let prob = scenario.problem()?;
    let report = match cbc_families(&prob) {
        Some((a, b)) if a != b => cross_type_report(&prob, cfg)?,
        _ => discriminate(&prob, cfg)?,
    };
    Ok(ReportDocument {
        v: 1,
        scenario: scenario.with_resolved(cfg),
        report: ReportBody::from(&report),
    })
}
