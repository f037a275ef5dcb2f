//! Report document assembly and atomic output.
//!
//! Rationals serialize as strings in lowest terms ("3/4"); floating point
//! values appear only inside `numeric_checks` and are rendered with 17
//! significant digits so reports are byte-identical across runs.

use std::fs;
use std::io::Write;
use std::path::Path;

use hartogs_core::rational::Rat;
use hartogs_core::UniPoly;
use serde_json::Value;

/// A failed run: exit code plus the message for standard error.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<hartogs_core::EngineError> for Failure {
    fn from(e: hartogs_core::EngineError) -> Self {
        let code = match e {
            hartogs_core::EngineError::AlphaBelowThreshold { .. } => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<hartogs_core::NumericError> for Failure {
    fn from(e: hartogs_core::NumericError) -> Self {
        let code = match &e {
            hartogs_core::NumericError::Engine(
                hartogs_core::EngineError::AlphaBelowThreshold { .. },
            ) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::invalid(e.to_string())
    }
}

/// Exact rational as a JSON string.
pub fn rat_value(x: &Rat) -> Value {
    Value::String(x.to_string())
}

/// Coefficient list, lowest degree first, as JSON strings.
pub fn coeff_values(p: &UniPoly) -> Value {
    Value::Array(p.coeffs().iter().map(rat_value).collect())
}

/// Float with 17 significant digits, parsed back into a JSON number so the
/// emitted literal is exactly this rendering.
pub fn float_value(x: f64) -> Value {
    let rendered = format!("{x:.16e}");
    let number: serde_json::Number = serde_json::from_str(&rendered)
        .expect("fixed-format float literal");
    Value::Number(number)
}

/// Writes the document (pretty JSON plus trailing newline) to the path via
/// a temporary file and rename, or to standard output.
pub fn write_report(out: Option<&Path>, doc: &Value) -> Result<(), Failure> {
    let mut body = serde_json::to_string_pretty(doc).expect("serializable document");
    body.push('\n');
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            Ok(())
        }
        Some(path) => {
            let tmp = path.with_extension("tmp");
            fs::write(&tmp, &body)?;
            fs::rename(&tmp, path)?;
            Ok(())
        }
    }
}
