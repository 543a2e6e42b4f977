use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("structural error: {0}")]
    Structure(String),

    #[error("alphabet mismatch: {left:?} vs {right:?}")]
    AlphabetMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A configured search limit was hit before an answer was established.
    #[error("budget `{what}` exceeded (limit {limit}){}", context_suffix(.context))]
    Budget {
        what: &'static str,
        limit: usize,
        context: String,
    },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// An internal consistency check failed: a construction produced an
    /// object that does not satisfy its own contract.
    #[error("internal check failed: {0}")]
    Internal(String),
}

fn context_suffix(context: &str) -> String {
    if context.is_empty() {
        String::new()
    } else {
        format!(": {context}")
    }
}

impl Error {
    pub fn budget(what: &'static str, limit: usize) -> Self {
        Error::Budget {
            what,
            limit,
            context: String::new(),
        }
    }

    pub fn with_context(self, ctx: impl Into<String>) -> Self {
        match self {
            Error::Budget {
                what,
                limit,
                context,
            } => {
                let ctx = ctx.into();
                let context = if context.is_empty() {
                    ctx
                } else {
                    format!("{ctx}; {context}")
                };
                Error::Budget {
                    what,
                    limit,
                    context,
                }
            }
            other => other,
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
