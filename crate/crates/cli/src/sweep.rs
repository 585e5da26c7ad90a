//! Parameter sweeps over a scenario template. Output is CSV: header row,
//! comma delimiter, LF line endings, floats at 17 significant digits so
//! every value parses back bit-exactly.

use cbdiscrim_core::discrimination::{
    cross_type_singulars, pauli_criterion, same_type3_singulars,
};
use cbdiscrim_core::channel::PauliSpec;
use cbdiscrim_core::OptimizerConfig;
use serde::{Deserialize, Serialize};

use crate::report::run_discriminate;
use crate::scenario::{ChannelSpec, Scenario};
use crate::CliError;

/// Names a sweep may vary. `a.`/`b.` prefixes address the two channels;
/// the angle names apply only to the kinds that have them.
pub const VALID_NAMES: [&str; 5] = ["p1", "a.phi", "a.xi", "b.phi", "b.xi"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepParam {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub v: u32,
    pub scenario: Scenario,
    pub sweep: Vec<SweepParam>,
}

impl SweepSpec {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let spec: SweepSpec = serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("sweep parse error: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.v != 1 {
            return Err(CliError::Input(format!(
                "unsupported schema version {}; this build reads v = 1",
                self.v
            )));
        }
        self.scenario.validate()?;
        if self.sweep.is_empty() || self.sweep.len() > 2 {
            return Err(CliError::Input(format!(
                "sweep lists {} parameters, expected 1 or 2",
                self.sweep.len()
            )));
        }
        if self.sweep.len() == 2 && self.sweep[0].name == self.sweep[1].name {
            return Err(CliError::Input(format!(
                "sweep parameter '{}' is listed twice",
                self.sweep[0].name
            )));
        }
        for param in &self.sweep {
            if param.steps < 2 {
                return Err(CliError::Input(format!(
                    "parameter '{}' has steps = {}, need at least 2",
                    param.name, param.steps
                )));
            }
            if !(param.start.is_finite() && param.stop.is_finite()) {
                return Err(CliError::Input(format!(
                    "parameter '{}' has a non-finite endpoint",
                    param.name
                )));
            }
            // Unknown names and kind mismatches surface before any row runs.
            apply_param(&self.scenario, &param.name, param.start)?;
        }
        Ok(())
    }
}

fn set_channel(spec: &ChannelSpec, side: char, field: &str, value: f64) -> Result<ChannelSpec, CliError> {
    match (spec, field) {
        (ChannelSpec::Cbc3 { xi, .. }, "phi") => Ok(ChannelSpec::Cbc3 { phi: value, xi: *xi }),
        (ChannelSpec::Cbc3 { phi, .. }, "xi") => Ok(ChannelSpec::Cbc3 { phi: *phi, xi: value }),
        (ChannelSpec::Cbc2 { .. }, "xi") => Ok(ChannelSpec::Cbc2 { xi: value }),
        _ => Err(CliError::Input(format!(
            "channel_{side} is kind '{}', which has no '{field}' parameter",
            spec.kind()
        ))),
    }
}

/// Scenario copy with one named parameter replaced. Unknown names list the
/// valid ones in the diagnostic.
pub fn apply_param(scenario: &Scenario, name: &str, value: f64) -> Result<Scenario, CliError> {
    let mut out = scenario.clone();
    match name {
        "p1" => {
            if !(value.is_finite() && (0.0..=1.0).contains(&value)) {
                return Err(CliError::Input(format!("swept p1 = {value} leaves [0, 1]")));
            }
            out.p1 = value;
        }
        "a.phi" => out.channel_a = set_channel(&scenario.channel_a, 'a', "phi", value)?,
        "a.xi" => out.channel_a = set_channel(&scenario.channel_a, 'a', "xi", value)?,
        "b.phi" => out.channel_b = set_channel(&scenario.channel_b, 'b', "phi", value)?,
        "b.xi" => out.channel_b = set_channel(&scenario.channel_b, 'b', "xi", value)?,
        _ => {
            return Err(CliError::Input(format!(
                "unknown sweep parameter '{name}'; valid names: {}",
                VALID_NAMES.join(", ")
            )));
        }
    }
    Ok(out)
}

/// Evenly spaced grid with both endpoints exact.
fn grid(start: f64, stop: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|k| {
            if k + 1 == steps {
                stop
            } else {
                start + (stop - start) * k as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

/// One evaluated grid point. `formula_sum` carries the closed-form
/// spectrum sum when one applies to the (possibly swept) channel pair,
/// and stays empty in the CSV otherwise.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub params: Vec<(String, f64)>,
    pub p_err_unassisted: f64,
    pub p_err_assisted: f64,
    pub bound: f64,
    pub enhancement: bool,
    pub sum_singulars: f64,
    pub formula_sum: Option<f64>,
}

/// Closed-form trace norm of the weighted Choi difference, where the pair
/// admits one: both channels coherence-breaking, or both Pauli.
fn formula_sum(scenario: &Scenario) -> Result<Option<f64>, CliError> {
    let t = (2.0 * scenario.p1 - 1.0).abs();
    let value = match (&scenario.channel_a, &scenario.channel_b) {
        (
            ChannelSpec::Cbc3 { phi: phi1, xi: xi1 },
            ChannelSpec::Cbc3 { phi: phi2, xi: xi2 },
        ) => {
            let s = same_type3_singulars(scenario.p1, *phi1, *xi1, *phi2, *xi2)?;
            Some(s.iter().sum())
        }
        (ChannelSpec::Cbc1, ChannelSpec::Cbc1) | (ChannelSpec::Cbc2 { .. }, ChannelSpec::Cbc2 { .. }) => {
            // Identical action: the difference is t times one Choi operator,
            // whose trace norm is 2.
            Some(2.0 * t)
        }
        (ChannelSpec::Pauli { q: q1 }, ChannelSpec::Pauli { q: q2 }) => {
            let (r, _) = pauli_criterion(&PauliSpec::new(*q1)?, &PauliSpec::new(*q2)?, scenario.p1)?;
            Some(2.0 * r.iter().map(|v| v.abs()).sum::<f64>())
        }
        (a, b) => {
            let fam = |spec: &ChannelSpec| match spec {
                ChannelSpec::Cbc1 => Some(cbdiscrim_core::channel::CbcFamily::Type1),
                ChannelSpec::Cbc2 { .. } => Some(cbdiscrim_core::channel::CbcFamily::Type2),
                ChannelSpec::Cbc3 { .. } => Some(cbdiscrim_core::channel::CbcFamily::Type3),
                _ => None,
            };
            match (fam(a), fam(b)) {
                (Some(fa), Some(fb)) if fa != fb => {
                    let s = cross_type_singulars(fa, fb, scenario.p1)?;
                    Some(s.iter().sum())
                }
                _ => None,
            }
        }
    };
    Ok(value)
}

/// Evaluates every grid point in listed order (first parameter outermost).
/// Rows are independent problems; the order is part of the output contract.
pub fn run_sweep(spec: &SweepSpec, cfg: &OptimizerConfig) -> Result<Vec<SweepRow>, CliError> {
    spec.validate()?;
    let grids: Vec<Vec<f64>> = spec
        .sweep
        .iter()
        .map(|p| grid(p.start, p.stop, p.steps))
        .collect();
    let mut points: Vec<Vec<f64>> = Vec::new();
    match grids.len() {
        1 => {
            for &v in &grids[0] {
                points.push(vec![v]);
            }
        }
        _ => {
            for &v0 in &grids[0] {
                for &v1 in &grids[1] {
                    points.push(vec![v0, v1]);
                }
            }
        }
    }

    let mut rows = Vec::with_capacity(points.len());
    for point in points {
        let mut scenario = spec.scenario.clone();
        let mut params = Vec::with_capacity(point.len());
        for (param, &value) in spec.sweep.iter().zip(&point) {
            scenario = apply_param(&scenario, &param.name, value)?;
            params.push((param.name.clone(), value));
        }
        let doc = run_discriminate(&scenario, cfg)?;
        rows.push(SweepRow {
            params,
            p_err_unassisted: doc.report.p_err_unassisted,
            p_err_assisted: doc.report.p_err_assisted,
            bound: doc.report.bound,
            enhancement: doc.report.enhancement_flag,
            sum_singulars: doc.report.delta_singulars.iter().sum(),
            formula_sum: formula_sum(&scenario)?,
        });
    }
    Ok(rows)
}

/// Round-trip-safe float: 17 significant digits, '.' decimal separator.
pub fn fmt17(value: f64) -> String {
    format!("{value:.16e}")
}

/// CSV with a header row; LF line endings only.
pub fn to_csv(spec: &SweepSpec, rows: &[SweepRow]) -> String {
    let mut out = String::new();
    for param in &spec.sweep {
        out.push_str(&param.name);
        out.push(',');
    }
    out.push_str("p_err_unassisted,p_err_assisted,bound,enhancement,sum_singulars,formula_sum\n");
    for row in rows {
        for (_, value) in &row.params {
            out.push_str(&fmt17(*value));
            out.push(',');
        }
        out.push_str(&fmt17(row.p_err_unassisted));
        out.push(',');
        out.push_str(&fmt17(row.p_err_assisted));
        out.push(',');
        out.push_str(&fmt17(row.bound));
        out.push(',');
        out.push_str(if row.enhancement { "true" } else { "false" });
        out.push(',');
        out.push_str(&fmt17(row.sum_singulars));
        out.push(',');
        if let Some(v) = row.formula_sum {
            out.push_str(&fmt17(v));
        }
        out.push('\n');
    }
    out
}
