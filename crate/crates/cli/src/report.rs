use std::fmt::Display;
use std::path::Path;

use defram::Error;
use thiserror::Error;

/// Why a command did not succeed; each maps to an exit status.
#[derive(Debug, Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    /// A result disagreed with the reference; details are already printed.
    #[error("{0}")]
    Mismatch(String),
    /// A limit stopped the run; the partial result is already printed.
    #[error("{0}")]
    Resource(String),
    #[error(transparent)]
    Lib(#[from] Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Resource(_) => 3,
            Failure::Lib(e) => match e {
                Error::InvalidParams(_) | Error::NotCliqueUnionClosed(_) => 2,
                Error::NeedsCandidates { .. } | Error::Capacity { .. } => 3,
                _ => 1,
            },
        }
    }

    pub fn message(&self) -> Option<String> {
        let text = self.to_string();
        (!text.is_empty()).then_some(text)
    }
}

pub type CmdResult = Result<(), Failure>;

/// `key=value` lines for scripts, written with `--summary`.
#[derive(Default)]
pub struct Summary(Vec<(String, String)>);

impl Summary {
    pub fn add(&mut self, key: &str, value: impl Display) {
        self.0.push((key.to_string(), value.to_string()));
    }

    pub fn write(&self, path: Option<&Path>) -> Result<(), Failure> {
        let Some(path) = path else {
            return Ok(());
        };
        let text: String = self.0.iter().map(|(k, v)| format!("{k}={v}\n")).collect();
        std::fs::write(path, text).map_err(|e| Failure::Lib(e.into()))
    }
}
