use alloc::string::String;

/// Errors raised by the simulation core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Malformed arguments: wrong lengths, out-of-range qubits, bad strengths.
    #[error("invalid input: {0}")]
    Input(String),
    /// A matrix that should be a quantum state is not one.
    #[error("invalid state: {0}")]
    InvalidState(String),
    /// Inconsistent noise or calibration configuration.
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! input_err {
    ($($arg:tt)*) => {
        $crate::Error::Input(alloc::format!($($arg)*))
    };
}
pub(crate) use input_err;
