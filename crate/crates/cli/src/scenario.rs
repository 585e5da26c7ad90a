//! Scenario files: schema version 1, complex entries as `[re, im]`,
//! angles in radians.

use cbdiscrim_core::channel::{cbc_kraus, pauli_kraus, CbcSpec, PauliSpec};
use cbdiscrim_core::cmat::Matrix;
use cbdiscrim_core::{ComplexScalar, DiscriminationProblem, KrausChannel, OptimizerConfig};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// One `[re, im]` pair.
pub type ComplexPair = [f64; 2];
/// A 2x2 complex matrix in row-major nesting: `op[row][col] = [re, im]`.
pub type KrausMatrix = [[ComplexPair; 2]; 2];

/// Channel description as it appears in scenario files. The `kind` tag
/// selects the variant; per-kind fields are mandatory for that kind and
/// rejected for any other.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ChannelSpec {
    Cbc1,
    Cbc2 { xi: f64 },
    Cbc3 { phi: f64, xi: f64 },
    Pauli { q: [f64; 4] },
    Kraus { ops: Vec<KrausMatrix> },
}

impl ChannelSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ChannelSpec::Cbc1 => "cbc1",
            ChannelSpec::Cbc2 { .. } => "cbc2",
            ChannelSpec::Cbc3 { .. } => "cbc3",
            ChannelSpec::Pauli { .. } => "pauli",
            ChannelSpec::Kraus { .. } => "kraus",
        }
    }

    /// Validating build. Angles must be finite (strict JSON cannot encode
    /// non-finite numbers, but oversized literals can still parse to
    /// infinity); Pauli weights and explicit Kraus sets go through the
    /// core validators.
    pub fn build(&self) -> Result<KrausChannel, CliError> {
        match self {
            ChannelSpec::Cbc1 => Ok(cbc_kraus(&CbcSpec::Type1)),
            ChannelSpec::Cbc2 { xi } => {
                require_finite("xi", *xi)?;
                Ok(cbc_kraus(&CbcSpec::Type2 { xi: *xi }))
            }
            ChannelSpec::Cbc3 { phi, xi } => {
                require_finite("phi", *phi)?;
                require_finite("xi", *xi)?;
                Ok(cbc_kraus(&CbcSpec::Type3 { phi: *phi, xi: *xi }))
            }
            ChannelSpec::Pauli { q } => {
                let spec = PauliSpec::new(*q)?;
                Ok(pauli_kraus(&spec))
            }
            ChannelSpec::Kraus { ops } => {
                let mats: Vec<Matrix<f64>> = ops
                    .iter()
                    .map(|op| {
                        Matrix::mat2([
                            pair(op[0][0]),
                            pair(op[0][1]),
                            pair(op[1][0]),
                            pair(op[1][1]),
                        ])
                    })
                    .collect();
                Ok(KrausChannel::new(mats, "kraus")?)
            }
        }
    }

    /// Human-readable one-liner for text reports.
    pub fn describe(&self) -> String {
        match self {
            ChannelSpec::Cbc1 => "cbc1".into(),
            ChannelSpec::Cbc2 { xi } => format!("cbc2(xi = {xi})"),
            ChannelSpec::Cbc3 { phi, xi } => format!("cbc3(phi = {phi}, xi = {xi})"),
            ChannelSpec::Pauli { q } => {
                format!("pauli(q = [{}, {}, {}, {}])", q[0], q[1], q[2], q[3])
            }
            ChannelSpec::Kraus { ops } => format!("kraus({} operators)", ops.len()),
        }
    }
}

fn pair(p: ComplexPair) -> ComplexScalar {
    ComplexScalar::new(p[0], p[1])
}

fn require_finite(name: &str, value: f64) -> Result<(), CliError> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(CliError::Input(format!("field '{name}' is {value}, must be finite")))
    }
}

/// Optimizer block of a scenario file. Every field is optional; missing
/// fields fall back through the flag/env/default chain in
/// [`crate::resolve_config`].
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizerSettings {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refine_iters: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl OptimizerSettings {
    /// Settings with every field pinned, for embedding in reports so a
    /// re-run reproduces the same numbers without the original flags.
    pub fn resolved(cfg: &OptimizerConfig) -> Self {
        OptimizerSettings {
            grid_points: Some(cfg.grid_points),
            refine_iters: Some(cfg.refine_iters),
            tolerance: Some(cfg.tolerance),
            seed: Some(cfg.seed),
        }
    }
}

/// A discrimination task: prior, two channels, optional optimizer block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub v: u32,
    pub p1: f64,
    pub channel_a: ChannelSpec,
    pub channel_b: ChannelSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimizer: Option<OptimizerSettings>,
}

impl Scenario {
    /// Parses and validates a scenario document.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let scenario: Scenario = serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("scenario parse error: {e}")))?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.v != 1 {
            return Err(CliError::Input(format!(
                "unsupported schema version {}; this build reads v = 1",
                self.v
            )));
        }
        if !(self.p1.is_finite() && (0.0..=1.0).contains(&self.p1)) {
            return Err(CliError::Input(format!(
                "p1 = {} is outside [0, 1]",
                self.p1
            )));
        }
        self.channel_a.build()?;
        self.channel_b.build()?;
        Ok(())
    }

    /// Builds the core problem from the channel specs.
    pub fn problem(&self) -> Result<DiscriminationProblem, CliError> {
        let a = self.channel_a.build()?;
        let b = self.channel_b.build()?;
        Ok(DiscriminationProblem::new(a, b, self.p1)?)
    }

    /// Copy with the optimizer block pinned to `cfg`.
    pub fn with_resolved(&self, cfg: &OptimizerConfig) -> Scenario {
        Scenario {
            optimizer: Some(OptimizerSettings::resolved(cfg)),
            ..self.clone()
        }
    }
}
