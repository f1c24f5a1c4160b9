//! Error types shared across the crate.

use thiserror::Error;

/// Outcome report for SMILES validation: either valid or a list of
/// position-tagged problems.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ParseDiagnostics {
    pub status: ParseStatus,
    pub messages: Vec<Diagnostic>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParseStatus {
    Valid,
    Error,
}

/// One problem, anchored to a byte offset in the input text.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Diagnostic {
    pub position: usize,
    pub text: String,
}

impl ParseDiagnostics {
    pub fn error(position: usize, text: impl Into<String>) -> ParseDiagnostics {
        ParseDiagnostics {
            status: ParseStatus::Error,
            messages: vec![Diagnostic {
                position,
                text: text.into(),
            }],
        }
    }

    pub fn summary(&self) -> String {
        self.messages
            .iter()
            .map(|d| format!("{} (at byte {})", d.text, d.position))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl std::fmt::Display for ParseDiagnostics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid SMILES: {}", self.summary())
    }
}

#[derive(Debug, Error)]
pub enum ChemError {
    #[error("{0}")]
    Parse(ParseDiagnostics),
    #[error("unsupported SMARTS feature: {0}")]
    UnsupportedSmarts(String),
    #[error("SMARTS syntax error at byte {position}: {text}")]
    SmartsSyntax { position: usize, text: String },
    #[error("unknown tool: {0}")]
    UnknownTool(String),
    #[error("tool {0} is registered but not natively available")]
    ToolUnavailable(String),
    #[error("undefined value: {0}")]
    UndefinedValue(String),
}
