use std::fmt;

use waring_core::Error;

/// Everything that ends a run unsuccessfully.
#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Io {
        path: String,
        message: String,
    },
    Usage(String),
    /// A document or result failed some of its exact checks.
    Checks(Vec<String>),
}

impl Failure {
    /// Tag printed as `error[kind]`; library errors keep their own tags.
    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Core(e) => e.kind(),
            Failure::Io { .. } => "io",
            Failure::Usage(_) => "usage",
            Failure::Checks(_) => "verification-failed",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::WitnessNotFound { .. }) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io { path, message } => write!(f, "{path}: {message}"),
            Failure::Usage(msg) => write!(f, "{msg}"),
            Failure::Checks(names) => write!(f, "failed checks: {}", names.join(", ")),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}
