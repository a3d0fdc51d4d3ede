use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}:{line}:{column}: {message}")]
    Json {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: no weight for ideal {key:?}")]
    MissingKey { path: String, key: String },
    #[error("{path}: key {key:?} does not name an order ideal")]
    UnknownKey { path: String, key: String },
    #[error("{path}: ideal {key:?} is listed twice")]
    DuplicateKey { path: String, key: String },
    #[error("{path}: weight {value:?} for {key:?} is not a rational number")]
    BadRational {
        path: String,
        key: String,
        value: String,
    },
    #[error("{0}")]
    Usage(String),
}

impl ParseError {
    pub fn json(path: &str, e: &serde_json::Error) -> Self {
        let message = e.to_string();
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        ParseError::Json {
            path: path.to_string(),
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{context}: {source}")]
    Validation {
        context: String,
        source: posetdegen::Error,
    },
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 4,
            CliError::Validation {
                source: posetdegen::Error::OutsideCone(_),
                ..
            } => 3,
            CliError::Validation { .. } => 2,
            CliError::Output(_) => 1,
        }
    }

    pub fn validation(context: &str) -> impl FnOnce(posetdegen::Error) -> CliError {
        let context = context.to_string();
        move |source| CliError::Validation { context, source }
    }
}
