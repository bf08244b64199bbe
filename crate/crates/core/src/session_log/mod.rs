//! Session log schema, JSONL parsing, deterministic replay, snapshot
//! capture, sentence segmentation and authorship attribution.

mod authorship;
mod event;
mod jsonl;
mod replay;
mod segment;
mod snapshot;

use thiserror::Error;

pub use authorship::{
    attribute_authorship, attribute_authorship_with, insert_provenance, AuthorshipConfig,
    AuthorshipMap, AuthorshipTracker, Origin, ProvenanceSpan,
};
pub use event::{AssistantMode, EventAction, EventKind, EventRange, SessionEvent, SessionLog};
pub use jsonl::{
    parse_session_log, parse_session_log_str, session_log_to_string, write_session_log,
    MAX_SUGGESTIONS,
};
pub use replay::{
    is_boundary, replay, replay_all, replay_with, verify_replay, DeleteFailure, Document,
};
pub use segment::{count_sentences, segment_sentences, sentence_spans, ABBREVIATIONS};
pub use snapshot::{reconstruct_snapshots, snapshot_of_event, Snapshot, SnapshotTrigger};

#[derive(Debug, Error)]
pub enum LogError {
    #[error("line {line}: malformed record: {reason}")]
    MalformedRecord { line: usize, reason: String },

    #[error("line {line}: unknown event kind `{kind}`")]
    UnknownEventKind { line: usize, kind: String },

    #[error("line {line}: seq {seq} does not increase on previous seq {prev}")]
    NonMonotonicSeq { line: usize, seq: u64, prev: u64 },

    #[error("line {line}: timestamp {t_ms} ms precedes previous timestamp {prev} ms")]
    NonMonotonicTimestamp { line: usize, t_ms: u64, prev: u64 },

    #[error("line {line}: suggestion list has {len} entries (expected 1-4)")]
    InvalidSuggestionList { line: usize, len: usize },

    #[error("line {line}: suggestion_select (seq {seq}) without a preceding suggestion_open")]
    DanglingSuggestionSelect { line: usize, seq: u64 },

    #[error("line {line}: suggestion_dismiss (seq {seq}) without a preceding suggestion_open")]
    DanglingSuggestionDismiss { line: usize, seq: u64 },

    #[error("line {line}: selected_index {index} out of range for {len} suggestions")]
    SelectedIndexOutOfRange {
        line: usize,
        index: usize,
        len: usize,
    },

    #[error("missing header record")]
    MissingHeader,

    #[error("seq {seq}: position {pos} out of bounds for document of length {len}")]
    PositionOutOfBounds { seq: u64, pos: usize, len: usize },

    #[error("seq {seq}: deleted text {expected:?} does not match document text {found:?}")]
    DeleteMismatch {
        seq: u64,
        expected: String,
        found: String,
    },

    #[error("replayed text differs from recorded final_text at character {first_difference}")]
    FinalTextMismatch { first_difference: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
