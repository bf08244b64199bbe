use serde::{Deserialize, Serialize};

use super::event::{EventAction, EventRange, SessionLog};
use super::replay::Document;
use super::segment::segment_sentences;
use super::LogError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SnapshotTrigger {
    /// Snapshot 0, before any event.
    Initial,
    /// First cursor move after at least one insert/delete.
    CursorAfterInsert,
    SuggestionRequest,
    SessionEnd,
}

/// Document state at a capture point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub index: usize,
    pub timestamp_ms: u64,
    pub text: String,
    pub sentences: Vec<String>,
    pub sentence_count: usize,
    pub trigger: SnapshotTrigger,
    /// Events folded into this snapshot since the previous one.
    pub event_range: EventRange,
}

impl Snapshot {
    fn capture(
        index: usize,
        timestamp_ms: u64,
        doc: &Document,
        trigger: SnapshotTrigger,
        event_range: EventRange,
    ) -> Self {
        let text = doc.text();
        let sentences = segment_sentences(&text);
        Snapshot {
            index,
            timestamp_ms,
            sentence_count: sentences.len(),
            text,
            sentences,
            trigger,
            event_range,
        }
    }
}

/// Replays `log` and captures a snapshot at the initial state, at every
/// cursor move that follows unsnapshotted text edits, at every suggestion
/// request, and at session end.
pub fn reconstruct_snapshots(log: &SessionLog) -> Result<Vec<Snapshot>, LogError> {
    let mut doc = Document::new();
    let mut snapshots = vec![Snapshot::capture(
        0,
        0,
        &doc,
        SnapshotTrigger::Initial,
        EventRange::new(0, 0),
    )];
    let mut range_start = 0;
    let mut pending_edits = false;
    for (i, event) in log.events.iter().enumerate() {
        doc.apply(event)?;
        let trigger = match event.action {
            EventAction::Insert { .. } | EventAction::Delete { .. } => {
                pending_edits = true;
                None
            }
            EventAction::CursorMove { .. } if pending_edits => {
                Some(SnapshotTrigger::CursorAfterInsert)
            }
            EventAction::SuggestionOpen { .. } => Some(SnapshotTrigger::SuggestionRequest),
            _ => None,
        };
        if let Some(trigger) = trigger {
            snapshots.push(Snapshot::capture(
                snapshots.len(),
                event.timestamp_ms,
                &doc,
                trigger,
                EventRange::new(range_start, i + 1),
            ));
            range_start = i + 1;
            pending_edits = false;
        }
    }
    snapshots.push(Snapshot::capture(
        snapshots.len(),
        log.duration_ms(),
        &doc,
        SnapshotTrigger::SessionEnd,
        EventRange::new(range_start, log.events.len()),
    ));
    Ok(snapshots)
}

/// Index of the snapshot whose event range contains each event.
pub fn snapshot_of_event(snapshots: &[Snapshot], event_count: usize) -> Vec<usize> {
    let mut owner = vec![0; event_count];
    for s in snapshots {
        for slot in &mut owner[s.event_range.start..s.event_range.end] {
            *slot = s.index;
        }
    }
    owner
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::session_log::event::{AssistantMode, SessionEvent};

    fn log(actions: Vec<EventAction>) -> SessionLog {
        let mut log = SessionLog::new("s", "p", "t", AssistantMode::Autocomplete);
        log.events = actions
            .into_iter()
            .enumerate()
            .map(|(i, a)| SessionEvent::new(i as u64, i as u64 * 100, a))
            .collect();
        log
    }

    fn ins(pos: usize, text: &str) -> EventAction {
        EventAction::Insert {
            pos,
            text: text.into(),
        }
    }

    #[test]
    fn only_cursor_moves() {
        let l = log(vec![
            EventAction::CursorMove { pos: 0 },
            EventAction::CursorMove { pos: 0 },
        ]);
        let snaps = reconstruct_snapshots(&l).unwrap();
        assert_eq!(snaps.len(), 2);
        assert_eq!(snaps[0].text, snaps[1].text);
        assert_eq!(snaps[1].trigger, SnapshotTrigger::SessionEnd);
        assert_eq!(snaps[1].event_range, EventRange::new(0, 2));
    }

    #[test]
    fn rule_application() {
        let l = log(vec![
            ins(0, "One. "),
            ins(5, "Two."),
            EventAction::CursorMove { pos: 9 },
            ins(9, " Three"),
            EventAction::SuggestionOpen {
                suggestions: vec!["a".into(), "b".into(), "c".into(), "d".into()],
            },
            EventAction::SuggestionDismiss,
        ]);
        let snaps = reconstruct_snapshots(&l).unwrap();
        let triggers: Vec<_> = snaps.iter().map(|s| s.trigger).collect();
        assert_eq!(
            triggers,
            vec![
                SnapshotTrigger::Initial,
                SnapshotTrigger::CursorAfterInsert,
                SnapshotTrigger::SuggestionRequest,
                SnapshotTrigger::SessionEnd
            ]
        );
        assert_eq!(snaps[1].text, "One. Two.");
        assert_eq!(snaps[1].sentence_count, 2);
        assert_eq!(snaps[2].sentences, vec!["One.", "Two.", "Three"]);
        assert_eq!(snaps[2].event_range, EventRange::new(3, 5));
        assert_eq!(snaps[3].event_range, EventRange::new(5, 6));
        assert_eq!(snaps[3].timestamp_ms, 500);
    }

    #[test]
    fn cursor_move_without_edits_is_not_a_capture() {
        let l = log(vec![
            ins(0, "x"),
            EventAction::CursorMove { pos: 0 },
            EventAction::CursorMove { pos: 1 },
        ]);
        assert_eq!(reconstruct_snapshots(&l).unwrap().len(), 3);
    }

    #[test]
    fn duplicate_text_still_emitted() {
        let l = log(vec![
            EventAction::SuggestionOpen {
                suggestions: vec!["a".into()],
            },
            EventAction::SuggestionDismiss,
            EventAction::SuggestionOpen {
                suggestions: vec!["a".into()],
            },
        ]);
        let snaps = reconstruct_snapshots(&l).unwrap();
        assert_eq!(snaps.len(), 4);
        assert!(snaps.iter().all(|s| s.text.is_empty()));
    }
}
