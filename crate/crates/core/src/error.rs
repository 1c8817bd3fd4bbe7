use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not exactly divisible")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` is already in use")]
    VariableCollision(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("hyperdeterminant does not exist for format {0}")]
    NonexistentFormat(String),
    #[error("format {0} unsupported")]
    UnsupportedFormat(String),
    #[error("syntax error at column {}: {msg}", .pos + 1)]
    Syntax { pos: usize, msg: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Domain,
    Unsupported,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Syntax { .. } | Error::InvalidArgument(_) | Error::UnknownVariable(_) => {
                ErrorKind::Usage
            }
            Error::UnsupportedFormat(_) => ErrorKind::Unsupported,
            _ => ErrorKind::Domain,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
