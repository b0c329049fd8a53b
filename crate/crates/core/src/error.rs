use thiserror::Error;

use crate::model::{Category, Span};
use crate::xbar::SchemaId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid {grid} does not belong to entry '{word}'")]
    InvalidGrid { word: String, grid: String },

    #[error("span error: {0}")]
    Span(String),

    #[error("COMP feature {comp} inconsistent with {remaining} undischarged internal role(s)")]
    InconsistentComp { comp: char, remaining: usize },

    #[error("theta criterion violated: {0}")]
    CriterionViolation(String),

    #[error("role {role} selects {expected}, argument is {found}")]
    Selection {
        role: String,
        expected: Category,
        found: Category,
    },

    #[error("argument {span} already bears a theta role")]
    DoubleRole { span: Span },

    #[error("schema {0} has zero probability in the table")]
    UnseenSchema(SchemaId),

    #[error("grid {grid} of '{word}' has zero probability in the table")]
    UnseenGrid { word: String, grid: String },

    #[error("empty corpus: nothing to estimate from")]
    EmptyCorpus,

    #[error("line {line}: {message}")]
    Load { line: usize, message: String },

    #[error("line {line}: unclassifiable branch {branch}")]
    Unclassifiable { line: usize, branch: String },

    #[error("out of vocabulary: {0}")]
    OutOfVocabulary(String),

    #[error("empty input")]
    EmptyInput,

    #[error("more than {limit} candidate phrase markers")]
    TooManyParses { limit: usize },
}

impl Error {
    pub(crate) fn load(line: usize, message: impl Into<String>) -> Self {
        Error::Load {
            line,
            message: message.into(),
        }
    }
}
