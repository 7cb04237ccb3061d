use std::fmt;
use std::io;
use std::path::Path;

use jts_core::Error;

/// A failed command, carrying its exit code.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable or malformed input, or an unwritable output.
    Input(String),
    Numerical(String),
    Condition(String),
    RoundTrip(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Numerical(_) => 3,
            Failure::Condition(_) => 4,
            Failure::RoundTrip(_) => 5,
        }
    }

    pub fn io(path: &Path, e: io::Error) -> Self {
        Failure::Input(format!("{}: {e}", path.display()))
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "input error: {m}"),
            Failure::Numerical(m) => write!(f, "numerical failure: {m}"),
            Failure::Condition(m) => write!(f, "{m}"),
            Failure::RoundTrip(m) => write!(f, "round trip failed: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if let Some(c) = e.condition() {
            let msg = e.to_string();
            return Failure::Condition(if msg.contains(&c.to_string()) { msg } else { format!("{c}: {msg}") });
        }
        match e {
            Error::InvalidMatrix(_) | Error::InvalidSpectra(_) | Error::InvalidMeasure(_) => {
                Failure::Input(e.to_string())
            }
            Error::MissingBoundaryParam | Error::UnexpectedBoundaryParam | Error::WrongMode { .. } => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Numerical(e.to_string()),
        }
    }
}
