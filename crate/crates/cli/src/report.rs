use serde::Serialize;
use serde_json::{Map, Value};

use twotree::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NOT_TWO_TREE: u8 = 3;
pub const EXIT_MISMATCH: u8 = 4;
pub const EXIT_INVARIANT: u8 = 5;

/// A command failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn mismatch(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_MISMATCH,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::NotTwoTree(_) => EXIT_NOT_TWO_TREE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::usage(format!("i/o error: {e}"))
    }
}

#[derive(Serialize, Debug, Default, Clone)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
}

#[derive(Serialize, Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// What a command produced before it is wrapped into a [`RunReport`].
#[derive(Debug, Default)]
pub struct Outcome {
    pub inputs: Inputs,
    /// Human-readable stdout (without `--json`).
    pub text: String,
    pub outputs: Map<String, Value>,
    pub checks: Vec<Check>,
    /// Exit code when every check passed; failed checks force [`EXIT_INVARIANT`].
    pub code: u8,
}

impl Outcome {
    pub fn put(&mut self, key: &str, value: impl Serialize) {
        self.outputs.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serializable output"),
        );
    }

    pub fn line(&mut self, line: impl AsRef<str>) {
        self.text.push_str(line.as_ref());
        self.text.push('\n');
    }

    pub fn exit_code(&self) -> u8 {
        if self.code == EXIT_OK && self.checks.iter().any(|c| !c.passed) {
            EXIT_INVARIANT
        } else {
            self.code
        }
    }
}

#[derive(Serialize, Debug)]
pub struct RunReport {
    pub command: String,
    pub argv: Vec<String>,
    pub inputs: Inputs,
    pub outputs: Map<String, Value>,
    pub checks: Vec<Check>,
    pub ok: bool,
    pub exit_code: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub wall_time_ms: u64,
}
