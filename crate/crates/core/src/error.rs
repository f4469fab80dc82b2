use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The caller supplied something outside an operation's domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A (multi-)Schur polynomial was requested but the argument table lacks an index.
    #[error("missing argument t{index:?}")]
    MissingArgument { index: Vec<u32> },

    /// Numeric evaluation hit a coefficient that still contains symbols.
    #[error("coefficient is not a rational constant: {0}")]
    SymbolicCoefficient(String),

    /// A computation was refused because its predicted size exceeds the configured cap.
    #[error("budget exceeded for {what}: estimated {estimate} > cap {cap}{}", grading_suffix(.grading))]
    BudgetExceeded {
        what: String,
        estimate: u128,
        cap: u128,
        grading: Option<Vec<u32>>,
    },
}

fn grading_suffix(grading: &Option<Vec<u32>>) -> String {
    match grading {
        Some(g) => format!(" (grading vector {g:?})"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
