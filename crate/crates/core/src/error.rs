use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected width {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("capacity exceeded: width {width} is above the limit of {limit}")]
    Capacity { width: usize, limit: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Parse(#[from] crate::netparse::ParseError),

    #[error("invalid {what}: {message}")]
    Format { what: &'static str, message: String },
}

impl Error {
    pub(crate) fn format(what: &'static str, message: impl Into<String>) -> Self {
        Error::Format {
            what,
            message: message.into(),
        }
    }

    pub(crate) fn check_width(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::Dimension { expected, found })
        }
    }
}
