use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flag, config entry or input file; names the offending key.
    #[error("{key}: {message}")]
    Invalid { key: String, message: String },
    #[error("{0}")]
    Core(#[from] gaussradon::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("selftest failed: {0} check(s) out of tolerance")]
    SelftestFailed(usize),
}

impl CliError {
    pub fn invalid(key: &str, message: impl std::fmt::Display) -> Self {
        Self::Invalid { key: key.to_string(), message: message.to_string() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::SelftestFailed(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Tags a core error with the key whose value produced it.
pub trait WithKey<T> {
    fn key(self, key: &str) -> CliResult<T>;
}

impl<T> WithKey<T> for gaussradon::Result<T> {
    fn key(self, key: &str) -> CliResult<T> {
        self.map_err(|e| CliError::invalid(key, e))
    }
}
