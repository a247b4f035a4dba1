use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cegame_core::Error),

    #[error("parse error: {0}")]
    Json(serde_json::Error),

    #[error("parse error at '{key}': {message}")]
    Format { key: String, message: String },

    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),

    #[error("profile is not an equilibrium (worst violation {0})")]
    NotEquilibrium(f64),

    #[error("bad argument: {0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for unreadable or invalid input, 3 for unsupported instances,
    /// 4 for numeric trouble in a solver, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use cegame_core::Error as E;
        match self {
            CliError::Json(_) | CliError::Format { .. } | CliError::Usage(_) => 2,
            CliError::Core(E::Validation(_) | E::InvalidInput(_)) => 2,
            CliError::Core(E::Unsupported(_)) => 3,
            CliError::Core(E::NumericDegeneracy { .. } | E::IterationLimit { .. }) => 4,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        use cegame_core::Error as E;
        match self {
            CliError::Core(E::Validation(_)) => "validation",
            CliError::Core(E::InvalidInput(_)) | CliError::Json(_) | CliError::Format { .. } => "parse",
            CliError::Core(E::Unsupported(_)) => "unsupported",
            CliError::Core(E::NumericDegeneracy { .. }) => "numeric-degeneracy",
            CliError::Core(E::IterationLimit { .. }) => "iteration-limit",
            CliError::Core(E::Infeasible(_)) => "infeasible",
            CliError::Core(_) => "internal",
            CliError::Io { .. } => "io",
            CliError::Csv(_) => "csv",
            CliError::NotEquilibrium(_) => "not-equilibrium",
            CliError::Usage(_) => "usage",
        }
    }

    /// Machine-readable form written to standard error.
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "kind": self.kind(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        });
        match self {
            CliError::Core(cegame_core::Error::Validation(violations)) => {
                v["violations"] = serde_json::to_value(violations).unwrap_or(Value::Null);
            }
            CliError::Json(e) => {
                v["line"] = json!(e.line());
                v["column"] = json!(e.column());
            }
            CliError::Format { key, .. } => v["key"] = json!(key),
            _ => {}
        }
        json!({ "error": v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cegame_core::Error as E;

    #[test]
    fn exit_codes_follow_the_error_class() {
        assert_eq!(CliError::from(E::Validation(vec![])).exit_code(), 2);
        assert_eq!(CliError::from(E::Unsupported("n > 1".into())).exit_code(), 3);
        let degenerate = E::NumericDegeneracy {
            message: "stall".into(),
            trace: vec![],
        };
        assert_eq!(CliError::from(degenerate).exit_code(), 4);
        let limit = E::IterationLimit { limit: 1, trace: vec![] };
        assert_eq!(CliError::from(limit).exit_code(), 4);
        assert_eq!(CliError::NotEquilibrium(0.1).exit_code(), 1);
    }

    #[test]
    fn json_form_carries_kind_and_code() {
        let v = CliError::from(E::Unsupported("two evaders".into())).to_json();
        assert_eq!(v["error"]["kind"], "unsupported");
        assert_eq!(v["error"]["exit_code"], 3);
        assert!(v["error"]["message"].as_str().unwrap().contains("two evaders"));
    }
}
