use multbound_core::derbound::DerboundError;
use multbound_core::formats::FormatError;
use multbound_core::{GroebnerError, VolumeError};

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BOUND_EXCEEDS_LENGTH: i32 = 3;
pub const EXIT_NOT_STABILIZED: i32 = 4;
pub const EXIT_SATURATION: i32 = 5;
pub const EXIT_M_MAX: i32 = 6;
pub const EXIT_GROEBNER_LIMIT: i32 = 7;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<GroebnerError> for CliError {
    fn from(e: GroebnerError) -> Self {
        let code = match e {
            GroebnerError::LimitExceeded { .. } => EXIT_GROEBNER_LIMIT,
            GroebnerError::NotStabilized { .. } => EXIT_NOT_STABILIZED,
            _ => EXIT_PARSE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<DerboundError> for CliError {
    fn from(e: DerboundError) -> Self {
        match e {
            DerboundError::Groebner(g) => g.into(),
            other => CliError::input(other.to_string()),
        }
    }
}

impl From<VolumeError> for CliError {
    fn from(e: VolumeError) -> Self {
        let code = match e {
            VolumeError::SaturationViolation { .. } => EXIT_SATURATION,
            VolumeError::ToleranceUnreachable { .. } => EXIT_M_MAX,
            _ => EXIT_PARSE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}
