//! Command-line front end: scenario files in, reports out.
//!
//! The interesting numerics live in `cbdiscrim-core`; this crate owns the
//! JSON schema (version field `v: 1`, complex numbers as `[re, im]` pairs,
//! angles in radians), the CSV layout, the claim scorecard, and the exit
//! code contract: 0 success, 2 input or validation error, 3 numerical
//! failure inside an otherwise valid run.

pub mod check;
pub mod render;
pub mod report;
pub mod scenario;
pub mod sweep;
pub mod verify;

use thiserror::Error;

/// Everything a subcommand can fail with, split by exit code.
#[derive(Debug, Clone, Error)]
pub enum CliError {
    /// Bad file, bad JSON, or a scenario that does not validate. Exit 2.
    #[error("{0}")]
    Input(String),
    /// The inputs were valid but a numerical routine gave up. Exit 3.
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl From<cbdiscrim_core::Error> for CliError {
    fn from(e: cbdiscrim_core::Error) -> Self {
        use cbdiscrim_core::Error as E;
        match e {
            E::NonFiniteObjective { .. } | E::FormulaDomain { .. } => {
                CliError::Numeric(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// Global flag values; `None` means the flag was not given.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub grid_points: Option<usize>,
    pub tolerance: Option<f64>,
}

/// Optimizer settings resolved in precedence order: `--seed` flag, then the
/// `CBDISCRIM_SEED` environment value (already parsed by the caller), then
/// the scenario's own block, then the crate defaults. Grid points and
/// tolerance skip the environment step; only the seed has an env override.
pub fn resolve_config(
    settings: Option<&scenario::OptimizerSettings>,
    flags: &Overrides,
    env_seed: Option<u64>,
) -> Result<cbdiscrim_core::OptimizerConfig, CliError> {
    let defaults = cbdiscrim_core::OptimizerConfig::default();
    let cfg = cbdiscrim_core::OptimizerConfig {
        grid_points: flags
            .grid_points
            .or(settings.and_then(|s| s.grid_points))
            .unwrap_or(defaults.grid_points),
        refine_iters: settings
            .and_then(|s| s.refine_iters)
            .unwrap_or(defaults.refine_iters),
        tolerance: flags
            .tolerance
            .or(settings.and_then(|s| s.tolerance))
            .unwrap_or(defaults.tolerance),
        seed: flags
            .seed
            .or(env_seed)
            .or(settings.and_then(|s| s.seed))
            .unwrap_or(defaults.seed),
    };
    cfg.validate()?;
    Ok(cfg)
}
