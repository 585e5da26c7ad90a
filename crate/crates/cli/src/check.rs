//! The `check-cbc` subcommand: validate a single channel file and report
//! whether the channel breaks coherence.

use cbdiscrim_core::channel::{is_coherence_breaking, validate_cptp};
use cbdiscrim_core::Tolerances;
use serde::{Deserialize, Serialize};

use crate::scenario::ChannelSpec;
use crate::CliError;

/// Channel file: `{"v": 1, "channel": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelFile {
    pub v: u32,
    pub channel: ChannelSpec,
}

impl ChannelFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let file: ChannelFile = serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("channel file parse error: {e}")))?;
        if file.v != 1 {
            return Err(CliError::Input(format!(
                "unsupported schema version {}; this build reads v = 1",
                file.v
            )));
        }
        Ok(file)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub kind: String,
    pub kraus_operators: usize,
    pub cptp_residual: f64,
    pub coherence_breaking: bool,
}

/// Builds the channel (structural problems error out with exit 2) and
/// probes it: completeness residual of the Kraus set and the
/// basis-pair coherence-breaking test.
pub fn run_check(file: &ChannelFile) -> Result<CheckOutcome, CliError> {
    let tol = Tolerances::default();
    let ch = file.channel.build()?;
    let check = validate_cptp(ch.kraus_ops(), tol.cptp)?;
    Ok(CheckOutcome {
        kind: file.channel.kind().into(),
        kraus_operators: ch.kraus_ops().len(),
        cptp_residual: check.residual,
        coherence_breaking: is_coherence_breaking(&ch, tol.incoherence),
    })
}
