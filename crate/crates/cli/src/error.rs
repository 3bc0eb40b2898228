use qmittag::QError;

/// Failures surfaced by the command-line front-end, mapped onto exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or parameter values: exit 2.
    Usage(String),
    /// Library failure: exit 2 for invalid arguments, 3 otherwise.
    Numerical(QError),
    /// Some identity failed: exit 1.
    VerifyFailed,
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerifyFailed => 1,
            CliError::Usage(_) | CliError::Numerical(QError::InvalidArgument(_)) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Numerical(e) => write!(f, "{e}"),
            CliError::VerifyFailed => write!(f, "one or more identities failed"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<QError> for CliError {
    fn from(e: QError) -> Self {
        CliError::Numerical(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}
