//! Per-character provenance of document text: typed by the writer, accepted
//! verbatim from an AI suggestion, or accepted and then substantially edited.

use serde::{Deserialize, Serialize};

use super::event::{EventAction, SessionEvent, SessionLog};
use super::replay::Document;
use super::LogError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Writer,
    AiAccepted,
    AiModified,
}

impl Origin {
    pub fn is_ai(self) -> bool {
        !matches!(self, Origin::Writer)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuthorshipConfig {
    /// Fraction of an accepted suggestion's characters that must be deleted
    /// before its remaining text counts as `ai_modified`.
    pub modified_threshold: f64,
}

impl Default for AuthorshipConfig {
    fn default() -> Self {
        Self {
            modified_threshold: 0.5,
        }
    }
}

/// A maximal run of characters sharing one origin, as char offsets `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceSpan {
    pub start: usize,
    pub end: usize,
    pub origin: Origin,
}

impl ProvenanceSpan {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// Provenance spans that partition the document exactly.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct AuthorshipMap {
    pub spans: Vec<ProvenanceSpan>,
}

impl AuthorshipMap {
    pub fn document_len(&self) -> usize {
        self.spans.last().map_or(0, |s| s.end)
    }

    pub fn chars_with(&self, origin: Origin) -> usize {
        self.spans
            .iter()
            .filter(|s| s.origin == origin)
            .map(ProvenanceSpan::len)
            .sum()
    }

    /// Share of characters from AI suggestions (accepted or modified).
    pub fn ai_char_share(&self) -> f64 {
        let total = self.document_len();
        if total == 0 {
            return 0.0;
        }
        let ai = self.chars_with(Origin::AiAccepted) + self.chars_with(Origin::AiModified);
        ai as f64 / total as f64
    }

    pub fn origin_at(&self, pos: usize) -> Option<Origin> {
        let idx = self.spans.partition_point(|s| s.end <= pos);
        self.spans.get(idx).map(|s| s.origin)
    }
}

/// Origin tag of each insert event at the moment it is applied: an insert
/// directly after a `suggestion_select` whose text equals the selected
/// suggestion is `AiAccepted`; every other insert is `Writer`. Non-inserts
/// get `None`.
pub fn insert_provenance(log: &SessionLog) -> Vec<Option<Origin>> {
    let mut out = Vec::with_capacity(log.events.len());
    let mut last_open: Option<&[String]> = None;
    let mut selected: Option<&str> = None;
    for event in &log.events {
        let just_selected = selected.take();
        match &event.action {
            EventAction::Insert { text, .. } => {
                out.push(Some(if just_selected == Some(text.as_str()) {
                    Origin::AiAccepted
                } else {
                    Origin::Writer
                }));
                continue;
            }
            EventAction::SuggestionOpen { suggestions } => last_open = Some(suggestions),
            EventAction::SuggestionSelect { index } => {
                selected = last_open.and_then(|s| s.get(*index)).map(String::as_str);
            }
            _ => {}
        }
        out.push(None);
    }
    out
}

#[derive(Debug, Clone)]
struct Run {
    len: usize,
    /// Index into `AuthorshipTracker::accepted`; `None` for writer text.
    accepted: Option<usize>,
}

#[derive(Debug, Clone)]
struct AcceptedSpan {
    original_len: usize,
    removed: usize,
    modified: bool,
}

/// Incrementally tracks provenance while a log is replayed.
#[derive(Debug, Clone)]
pub struct AuthorshipTracker {
    config: AuthorshipConfig,
    runs: Vec<Run>,
    accepted: Vec<AcceptedSpan>,
}

impl AuthorshipTracker {
    pub fn new(config: AuthorshipConfig) -> Self {
        Self {
            config,
            runs: Vec::new(),
            accepted: Vec::new(),
        }
    }

    /// Splits runs so that a run boundary falls at `pos`; returns the index
    /// of the first run starting at or after `pos`.
    fn split_at(&mut self, pos: usize) -> usize {
        let mut offset = 0;
        for i in 0..self.runs.len() {
            if offset == pos {
                return i;
            }
            let len = self.runs[i].len;
            if pos < offset + len {
                let left = pos - offset;
                let tail = Run {
                    len: len - left,
                    accepted: self.runs[i].accepted,
                };
                self.runs[i].len = left;
                self.runs.insert(i + 1, tail);
                return i + 1;
            }
            offset += len;
        }
        self.runs.len()
    }

    fn insert(&mut self, pos: usize, len: usize, origin: Origin) {
        let accepted = if origin.is_ai() {
            self.accepted.push(AcceptedSpan {
                original_len: len,
                removed: 0,
                modified: origin == Origin::AiModified,
            });
            Some(self.accepted.len() - 1)
        } else {
            None
        };
        let i = self.split_at(pos);
        if accepted.is_none() {
            if i > 0 && self.runs[i - 1].accepted.is_none() {
                self.runs[i - 1].len += len;
                return;
            }
            if i < self.runs.len() && self.runs[i].accepted.is_none() {
                self.runs[i].len += len;
                return;
            }
        }
        self.runs.insert(i, Run { len, accepted });
    }

    fn delete(&mut self, pos: usize, len: usize) {
        let start = self.split_at(pos);
        let end = self.split_at(pos + len);
        for run in self.runs.drain(start..end) {
            if let Some(id) = run.accepted {
                self.accepted[id].removed += run.len;
            }
        }
        let threshold = self.config.modified_threshold;
        for span in &mut self.accepted {
            if !span.modified
                && span.original_len > 0
                && span.removed as f64 >= threshold * span.original_len as f64
            {
                span.modified = true;
            }
        }
    }

    /// Records an applied text edit. `origin` is the tag from
    /// [`insert_provenance`] for inserts and ignored otherwise.
    pub fn apply(&mut self, event: &SessionEvent, origin: Option<Origin>) {
        match &event.action {
            EventAction::Insert { pos, text } => {
                self.insert(*pos, text.chars().count(), origin.unwrap_or(Origin::Writer))
            }
            EventAction::Delete { pos, text } => self.delete(*pos, text.chars().count()),
            _ => {}
        }
    }

    pub fn map(&self) -> AuthorshipMap {
        let mut spans: Vec<ProvenanceSpan> = Vec::new();
        let mut offset = 0;
        for run in self.runs.iter().filter(|r| r.len > 0) {
            let origin = match run.accepted {
                None => Origin::Writer,
                Some(id) if self.accepted[id].modified => Origin::AiModified,
                Some(_) => Origin::AiAccepted,
            };
            match spans.last_mut() {
                Some(last) if last.origin == origin => last.end += run.len,
                _ => spans.push(ProvenanceSpan {
                    start: offset,
                    end: offset + run.len,
                    origin,
                }),
            }
            offset += run.len;
        }
        AuthorshipMap { spans }
    }
}

/// Provenance of the final document with the default 50% modification threshold.
pub fn attribute_authorship(log: &SessionLog) -> Result<AuthorshipMap, LogError> {
    attribute_authorship_with(log, AuthorshipConfig::default())
}

pub fn attribute_authorship_with(
    log: &SessionLog,
    config: AuthorshipConfig,
) -> Result<AuthorshipMap, LogError> {
    let origins = insert_provenance(log);
    let mut tracker = AuthorshipTracker::new(config);
    let mut doc = Document::new();
    for (event, origin) in log.events.iter().zip(origins) {
        doc.apply(event)?;
        tracker.apply(event, origin);
    }
    Ok(tracker.map())
}
