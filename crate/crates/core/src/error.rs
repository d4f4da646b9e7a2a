use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("kind mismatch: {0}")]
    KindMismatch(String),

    #[error("sequence `{0}` has no non-identity term in the probed prefix")]
    TrivialSequence(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("no exact negative decision available: {0}")]
    UnsupportedExactDecision(String),

    #[error("no usable ratio certificate: {0}")]
    NoCertificate(String),

    #[error("no separating scheme found: {0}")]
    WitnessNotFound(String),

    #[error("the target element is the identity, which lies in every neighborhood")]
    IdentityTarget,

    #[error("unknown sequence id `{0}`")]
    UnknownSequenceId(String),

    #[error("scheme is not in parity normal form: {0}")]
    ParityDecompositionUnavailable(String),

    #[error("invalid index scheme: {0}")]
    InvalidScheme(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("unknown command `{0}`")]
    UnknownCommand(String),

    #[error("unresolved sequence id `{0}`")]
    UnresolvedSequenceId(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable code, used in CLI error payloads.
    pub fn code(&self) -> &'static str {
        match self {
            Error::KindMismatch(_) => "KindMismatch",
            Error::TrivialSequence(_) => "TrivialSequence",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::UnsupportedExactDecision(_) => "UnsupportedExactDecision",
            Error::NoCertificate(_) => "NoCertificate",
            Error::WitnessNotFound(_) => "WitnessNotFound",
            Error::IdentityTarget => "IdentityTarget",
            Error::UnknownSequenceId(_) => "UnknownSequenceId",
            Error::ParityDecompositionUnavailable(_) => "ParityDecompositionUnavailable",
            Error::InvalidScheme(_) => "InvalidScheme",
            Error::Parse { .. } => "ParseError",
            Error::UnknownCommand(_) => "UnknownCommand",
            Error::UnresolvedSequenceId(_) => "UnresolvedSequenceId",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Io(_) => "Io",
        }
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
