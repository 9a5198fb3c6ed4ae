use anticode_core::matrix::BinaryMatrix;
use anticode_core::{BandConfig, DenseBinaryMatrix, IntervalMatrix};
use serde_json::Value;

use crate::{CliError, CliResult, Context};

/// A matrix read from `--config` or `--file`, in any of the three JSON schemas:
/// band configuration (`x`), interval rows (`rows`) or dense entries (`entries`).
pub(crate) enum MatrixInput {
    Band(BandConfig, IntervalMatrix),
    Interval(IntervalMatrix),
    Dense(DenseBinaryMatrix),
}

impl MatrixInput {
    pub fn parse(text: &str, source: &str) -> CliResult<Self> {
        let bad = |e: serde_json::Error| CliError::Usage(format!("invalid matrix in {source}: {e}"));
        let value: Value = serde_json::from_str(text).map_err(bad)?;
        let keys = value
            .as_object()
            .ok_or_else(|| CliError::Usage(format!("{source} must hold a JSON object")))?;
        if keys.contains_key("x") {
            let cfg: BandConfig = serde_json::from_value(value).map_err(bad)?;
            let m = cfg.to_interval_matrix();
            Ok(MatrixInput::Band(cfg, m))
        } else if keys.contains_key("rows") {
            Ok(MatrixInput::Interval(serde_json::from_value(value).map_err(bad)?))
        } else if keys.contains_key("entries") {
            Ok(MatrixInput::Dense(serde_json::from_value(value).map_err(bad)?))
        } else {
            Err(CliError::Usage(format!(
                "{source} must have an \"x\", \"rows\" or \"entries\" field"
            )))
        }
    }

    /// Reads `--config` or `--file`; `None` when neither was given.
    pub fn from_context(ctx: &Context) -> CliResult<Option<Self>> {
        if let Some(text) = &ctx.args.config {
            return Self::parse(text, "--config").map(Some);
        }
        if let Some(path) = &ctx.args.file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("--file {}: {e}", path.display())))?;
            return Self::parse(&text, "--file").map(Some);
        }
        Ok(None)
    }

    pub fn matrix(&self) -> &dyn BinaryMatrix {
        match self {
            MatrixInput::Band(_, m) | MatrixInput::Interval(m) => m,
            MatrixInput::Dense(m) => m,
        }
    }

    /// The input echoed back in its own schema.
    pub fn echo(&self) -> Value {
        let v = match self {
            MatrixInput::Band(cfg, _) => serde_json::to_value(cfg),
            MatrixInput::Interval(m) => serde_json::to_value(m),
            MatrixInput::Dense(m) => serde_json::to_value(m),
        };
        v.expect("matrices serialize")
    }

    /// Block length when the input is a band configuration.
    pub fn band_width(&self) -> Option<usize> {
        match self {
            MatrixInput::Band(cfg, _) => Some(cfg.d()),
            _ => None,
        }
    }
}
