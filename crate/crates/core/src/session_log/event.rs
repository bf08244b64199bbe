use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// Which probe assistant was active during a session.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssistantMode {
    Socratic,
    Autocomplete,
    None,
}

impl AssistantMode {
    pub fn as_str(self) -> &'static str {
        match self {
            AssistantMode::Socratic => "socratic",
            AssistantMode::Autocomplete => "autocomplete",
            AssistantMode::None => "none",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Insert,
    Delete,
    CursorMove,
    SuggestionOpen,
    SuggestionSelect,
    SuggestionDismiss,
}

impl EventKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::Insert => "insert",
            EventKind::Delete => "delete",
            EventKind::CursorMove => "cursor_move",
            EventKind::SuggestionOpen => "suggestion_open",
            EventKind::SuggestionSelect => "suggestion_select",
            EventKind::SuggestionDismiss => "suggestion_dismiss",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "insert" => EventKind::Insert,
            "delete" => EventKind::Delete,
            "cursor_move" => EventKind::CursorMove,
            "suggestion_open" => EventKind::SuggestionOpen,
            "suggestion_select" => EventKind::SuggestionSelect,
            "suggestion_dismiss" => EventKind::SuggestionDismiss,
            _ => return None,
        })
    }
}

/// Payload of one logged editor event. Positions are character (not byte)
/// offsets into the document at the time the event is applied.
#[derive(Debug, Clone, PartialEq)]
pub enum EventAction {
    Insert {
        pos: usize,
        text: String,
    },
    /// `text` is the exact substring removed starting at `pos`.
    Delete {
        pos: usize,
        text: String,
    },
    CursorMove {
        pos: usize,
    },
    SuggestionOpen {
        suggestions: Vec<String>,
    },
    SuggestionSelect {
        index: usize,
    },
    SuggestionDismiss,
}

impl EventAction {
    pub fn kind(&self) -> EventKind {
        match self {
            EventAction::Insert { .. } => EventKind::Insert,
            EventAction::Delete { .. } => EventKind::Delete,
            EventAction::CursorMove { .. } => EventKind::CursorMove,
            EventAction::SuggestionOpen { .. } => EventKind::SuggestionOpen,
            EventAction::SuggestionSelect { .. } => EventKind::SuggestionSelect,
            EventAction::SuggestionDismiss => EventKind::SuggestionDismiss,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionEvent {
    pub seq: u64,
    pub timestamp_ms: u64,
    pub action: EventAction,
    /// Unrecognised fields from the source record, kept for round-tripping.
    pub extra: Map<String, Value>,
}

impl SessionEvent {
    pub fn new(seq: u64, timestamp_ms: u64, action: EventAction) -> Self {
        Self {
            seq,
            timestamp_ms,
            action,
            extra: Map::new(),
        }
    }

    pub fn kind(&self) -> EventKind {
        self.action.kind()
    }

    /// True for inserts and deletes, the only events that change text.
    pub fn is_text_edit(&self) -> bool {
        matches!(
            self.action,
            EventAction::Insert { .. } | EventAction::Delete { .. }
        )
    }

    /// Characters inserted by this event (0 for non-inserts).
    pub fn inserted_chars(&self) -> usize {
        match &self.action {
            EventAction::Insert { text, .. } => text.chars().count(),
            _ => 0,
        }
    }

    /// Characters removed by this event (0 for non-deletes).
    pub fn deleted_chars(&self) -> usize {
        match &self.action {
            EventAction::Delete { text, .. } => text.chars().count(),
            _ => 0,
        }
    }
}

/// The complete event stream of one writing session.
#[derive(Debug, Clone, PartialEq)]
pub struct SessionLog {
    pub session_id: String,
    pub participant_id: String,
    pub topic: String,
    pub assistant_mode: AssistantMode,
    pub events: Vec<SessionEvent>,
    /// Editor text at session end, when recorded.
    pub final_text: Option<String>,
    pub extra: Map<String, Value>,
}

impl SessionLog {
    pub fn new(
        session_id: impl Into<String>,
        participant_id: impl Into<String>,
        topic: impl Into<String>,
        assistant_mode: AssistantMode,
    ) -> Self {
        Self {
            session_id: session_id.into(),
            participant_id: participant_id.into(),
            topic: topic.into(),
            assistant_mode,
            events: Vec::new(),
            final_text: None,
            extra: Map::new(),
        }
    }

    pub fn max_seq(&self) -> Option<u64> {
        self.events.last().map(|e| e.seq)
    }

    /// Session length in milliseconds, taken as the last event timestamp.
    pub fn duration_ms(&self) -> u64 {
        self.events.last().map_or(0, |e| e.timestamp_ms)
    }
}

/// A half-open range of event indices (positions in [`SessionLog::events`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct EventRange {
    pub start: usize,
    pub end: usize,
}

impl EventRange {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Self { start, end }
    }

    pub fn is_empty(&self) -> bool {
        self.start >= self.end
    }

    pub fn len(&self) -> usize {
        self.end.saturating_sub(self.start)
    }

    pub fn contains(&self, index: usize) -> bool {
        self.start <= index && index < self.end
    }

    pub fn overlaps(&self, other: &EventRange) -> bool {
        self.start < other.end && other.start < self.end
    }

    /// `(first_seq, last_seq)` of the covered events, or `None` when empty.
    pub fn seq_bounds(&self, log: &SessionLog) -> Option<(u64, u64)> {
        if self.is_empty() {
            return None;
        }
        Some((log.events[self.start].seq, log.events[self.end - 1].seq))
    }
}
