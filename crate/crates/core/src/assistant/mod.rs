//! The two probe assistants: prompt assembly, parsing of their four-item
//! answers, Socratic-question validation and pluggable generation backends.

mod backend;
mod parse;
mod prompt;
mod validate;

use std::time::Duration;

use thiserror::Error;

use crate::embeddings::EmbeddingError;

#[cfg(feature = "http")]
pub use backend::HttpBackend;
pub use backend::{GenerationBackend, OfflineBackend, DEFAULT_TIMEOUT, ENDPOINT_VAR, TOKEN_VAR};
pub use parse::{format_numbered, parse_numbered_suggestions, SuggestionSet, SUGGESTION_COUNT};
pub use prompt::{
    build_autocomplete_prompt, build_prompt, build_socratic_prompt, last_k_sentences, writing_task,
    DataDescription, SuggestionMode, SuggestionRequest, AUTOCOMPLETE_INSTRUCTION,
    CONTEXT_SENTENCES, DATA_PREFIX, GUN_VIOLENCE_DATA, SOCRATIC_INSTRUCTION, WRITING_TASK_TEMPLATE,
};
pub use validate::{
    validate_questions, validate_socratic, QuestionCheck, SocraticValidationReport, TemplateSet,
};

#[derive(Debug, Error, PartialEq)]
pub enum AssistantError {
    #[error("expected a {} request, got {}", expected.as_str(), found.as_str())]
    ModeMismatch {
        expected: SuggestionMode,
        found: SuggestionMode,
    },

    #[error("data description is empty")]
    EmptyDataDescription,

    #[error("prompt is empty")]
    EmptyPrompt,

    #[error("response is empty")]
    EmptyResponse,

    #[error("expected 4 numbered suggestions, found {0}")]
    IncompleteSuggestions(usize),

    #[error("suggestion {0} is empty")]
    EmptySuggestion(usize),

    #[error("suggestion {0} is not a question")]
    NotAQuestion(usize),

    #[error("template line {line}: {reason}")]
    TemplateInvalid { line: usize, reason: String },

    #[error("embedding failed: {0}")]
    Embedding(String),

    #[error("generation backend unavailable: {0}")]
    BackendUnavailable(String),

    #[error("generation backend timed out after {0:?}")]
    BackendTimeout(Duration),
}

impl From<EmbeddingError> for AssistantError {
    fn from(e: EmbeddingError) -> Self {
        AssistantError::Embedding(e.to_string())
    }
}
