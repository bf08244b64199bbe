//! JSONL wire format for session logs.
//!
//! Line 1 is a header object, every following non-blank line is one event.
//! Unknown fields on either kind of record are carried through untouched.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::event::{AssistantMode, EventAction, EventKind, SessionEvent, SessionLog};
use super::replay::verify_replay;
use super::LogError;

/// Upper bound on entries in one suggestion drop-down.
pub const MAX_SUGGESTIONS: usize = 4;

#[derive(Debug, Serialize, Deserialize)]
struct HeaderRecord {
    session_id: String,
    participant_id: String,
    topic: String,
    assistant_mode: AssistantMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    final_text: Option<String>,
    #[serde(flatten)]
    extra: Map<String, Value>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EventRecord {
    seq: u64,
    t_ms: u64,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pos: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    text: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    suggestions: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    selected_index: Option<usize>,
    #[serde(flatten)]
    extra: Map<String, Value>,
}

fn malformed(line: usize, reason: impl Into<String>) -> LogError {
    LogError::MalformedRecord {
        line,
        reason: reason.into(),
    }
}

fn event_from_record(line: usize, rec: EventRecord) -> Result<SessionEvent, LogError> {
    let kind = EventKind::parse(&rec.kind).ok_or_else(|| LogError::UnknownEventKind {
        line,
        kind: rec.kind.clone(),
    })?;
    let need_pos = || {
        rec.pos
            .ok_or_else(|| malformed(line, "missing field `pos`"))
    };
    let action = match kind {
        EventKind::Insert | EventKind::Delete => {
            let pos = need_pos()?;
            let text = rec
                .text
                .clone()
                .ok_or_else(|| malformed(line, "missing field `text`"))?;
            if text.is_empty() {
                return Err(malformed(line, "empty `text` on text edit"));
            }
            if kind == EventKind::Insert {
                EventAction::Insert { pos, text }
            } else {
                EventAction::Delete { pos, text }
            }
        }
        EventKind::CursorMove => EventAction::CursorMove { pos: need_pos()? },
        EventKind::SuggestionOpen => {
            let suggestions = rec
                .suggestions
                .clone()
                .ok_or_else(|| malformed(line, "missing field `suggestions`"))?;
            if suggestions.is_empty() || suggestions.len() > MAX_SUGGESTIONS {
                return Err(LogError::InvalidSuggestionList {
                    line,
                    len: suggestions.len(),
                });
            }
            EventAction::SuggestionOpen { suggestions }
        }
        EventKind::SuggestionSelect => EventAction::SuggestionSelect {
            index: rec
                .selected_index
                .ok_or_else(|| malformed(line, "missing field `selected_index`"))?,
        },
        EventKind::SuggestionDismiss => EventAction::SuggestionDismiss,
    };
    Ok(SessionEvent {
        seq: rec.seq,
        timestamp_ms: rec.t_ms,
        action,
        extra: rec.extra,
    })
}

fn record_from_event(event: &SessionEvent) -> EventRecord {
    let mut rec = EventRecord {
        seq: event.seq,
        t_ms: event.timestamp_ms,
        kind: event.kind().as_str().to_string(),
        pos: None,
        text: None,
        suggestions: None,
        selected_index: None,
        extra: event.extra.clone(),
    };
    match &event.action {
        EventAction::Insert { pos, text } | EventAction::Delete { pos, text } => {
            rec.pos = Some(*pos);
            rec.text = Some(text.clone());
        }
        EventAction::CursorMove { pos } => rec.pos = Some(*pos),
        EventAction::SuggestionOpen { suggestions } => rec.suggestions = Some(suggestions.clone()),
        EventAction::SuggestionSelect { index } => rec.selected_index = Some(*index),
        EventAction::SuggestionDismiss => {}
    }
    rec
}

/// Ordering and drop-down protocol checks that do not need a replay.
/// `lines[i]` is the 1-based source line of `events[i]`.
pub(crate) fn check_event_order(events: &[SessionEvent], lines: &[usize]) -> Result<(), LogError> {
    let mut prev: Option<&SessionEvent> = None;
    let mut open_len: Option<usize> = None;
    for (event, &line) in events.iter().zip(lines) {
        if let Some(p) = prev {
            if event.seq <= p.seq {
                return Err(LogError::NonMonotonicSeq {
                    line,
                    seq: event.seq,
                    prev: p.seq,
                });
            }
            if event.timestamp_ms < p.timestamp_ms {
                return Err(LogError::NonMonotonicTimestamp {
                    line,
                    t_ms: event.timestamp_ms,
                    prev: p.timestamp_ms,
                });
            }
        }
        match &event.action {
            EventAction::SuggestionOpen { suggestions } => open_len = Some(suggestions.len()),
            EventAction::SuggestionSelect { index } => match open_len.take() {
                None => {
                    return Err(LogError::DanglingSuggestionSelect {
                        line,
                        seq: event.seq,
                    })
                }
                Some(len) if *index >= len => {
                    return Err(LogError::SelectedIndexOutOfRange {
                        line,
                        index: *index,
                        len,
                    })
                }
                Some(_) => {}
            },
            EventAction::SuggestionDismiss => {
                if open_len.take().is_none() {
                    return Err(LogError::DanglingSuggestionDismiss {
                        line,
                        seq: event.seq,
                    });
                }
            }
            _ => {}
        }
        prev = Some(event);
    }
    Ok(())
}

/// Parses a JSONL session log and checks every log invariant, including a
/// full replay (position bounds, deleted text, and `final_text` when present).
pub fn parse_session_log<R: BufRead>(reader: R) -> Result<SessionLog, LogError> {
    let mut header: Option<HeaderRecord> = None;
    let mut events = Vec::new();
    let mut lines = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        if header.is_none() {
            let h: HeaderRecord =
                serde_json::from_str(&line).map_err(|e| malformed(line_no, e.to_string()))?;
            header = Some(h);
            continue;
        }
        let rec: EventRecord =
            serde_json::from_str(&line).map_err(|e| malformed(line_no, e.to_string()))?;
        events.push(event_from_record(line_no, rec)?);
        lines.push(line_no);
    }
    let header = header.ok_or(LogError::MissingHeader)?;
    check_event_order(&events, &lines)?;
    let log = SessionLog {
        session_id: header.session_id,
        participant_id: header.participant_id,
        topic: header.topic,
        assistant_mode: header.assistant_mode,
        events,
        final_text: header.final_text,
        extra: header.extra,
    };
    verify_replay(&log)?;
    Ok(log)
}

pub fn parse_session_log_str(input: &str) -> Result<SessionLog, LogError> {
    parse_session_log(input.as_bytes())
}

/// Writes `log` in the JSONL wire format, one record per line.
pub fn write_session_log<W: Write>(log: &SessionLog, mut out: W) -> Result<(), LogError> {
    let header = HeaderRecord {
        session_id: log.session_id.clone(),
        participant_id: log.participant_id.clone(),
        topic: log.topic.clone(),
        assistant_mode: log.assistant_mode,
        final_text: log.final_text.clone(),
        extra: log.extra.clone(),
    };
    serde_json::to_writer(&mut out, &header).map_err(std::io::Error::from)?;
    out.write_all(b"\n")?;
    for event in &log.events {
        serde_json::to_writer(&mut out, &record_from_event(event)).map_err(std::io::Error::from)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn session_log_to_string(log: &SessionLog) -> String {
    let mut buf = Vec::new();
    write_session_log(log, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = r#"{"session_id":"s1","participant_id":"p1","topic":"climate","assistant_mode":"socratic"}"#;

    fn log_with(lines: &[&str]) -> String {
        let mut s = String::from(HEADER);
        for l in lines {
            s.push('\n');
            s.push_str(l);
        }
        s
    }

    #[test]
    fn single_insert() {
        let input = log_with(&[r#"{"seq":0,"t_ms":0,"kind":"insert","pos":0,"text":"Hello"}"#]);
        let log = parse_session_log_str(&input).unwrap();
        assert_eq!(log.events.len(), 1);
        assert_eq!(super::super::replay_all(&log).unwrap(), "Hello");
    }

    #[test]
    fn unknown_kind_names_line() {
        let input = log_with(&[r#"{"seq":0,"t_ms":0,"kind":"paste","pos":0,"text":"x"}"#]);
        match parse_session_log_str(&input) {
            Err(LogError::UnknownEventKind { line, kind }) => {
                assert_eq!(line, 2);
                assert_eq!(kind, "paste");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_json_reports_line() {
        let input = log_with(&[
            r#"{"seq":0,"t_ms":0,"kind":"insert","pos":0,"text":"a"}"#,
            r#"{"seq":1,"t_ms":"#,
        ]);
        assert!(matches!(
            parse_session_log_str(&input),
            Err(LogError::MalformedRecord { line: 3, .. })
        ));
    }

    #[test]
    fn missing_field_is_malformed() {
        let input = log_with(&[r#"{"seq":0,"t_ms":0,"kind":"insert","text":"a"}"#]);
        assert!(matches!(
            parse_session_log_str(&input),
            Err(LogError::MalformedRecord { line: 2, .. })
        ));
    }

    #[test]
    fn non_monotonic_seq() {
        let input = log_with(&[
            r#"{"seq":3,"t_ms":0,"kind":"cursor_move","pos":0}"#,
            r#"{"seq":3,"t_ms":5,"kind":"cursor_move","pos":0}"#,
        ]);
        assert!(matches!(
            parse_session_log_str(&input),
            Err(LogError::NonMonotonicSeq {
                line: 3,
                seq: 3,
                prev: 3
            })
        ));
    }

    #[test]
    fn timestamps_must_not_decrease() {
        let input = log_with(&[
            r#"{"seq":0,"t_ms":10,"kind":"cursor_move","pos":0}"#,
            r#"{"seq":1,"t_ms":5,"kind":"cursor_move","pos":0}"#,
        ]);
        assert!(matches!(
            parse_session_log_str(&input),
            Err(LogError::NonMonotonicTimestamp { line: 3, .. })
        ));
    }

    #[test]
    fn dangling_select_and_dismiss() {
        let input =
            log_with(&[r#"{"seq":0,"t_ms":0,"kind":"suggestion_select","selected_index":0}"#]);
        assert!(matches!(
            parse_session_log_str(&input),
            Err(LogError::DanglingSuggestionSelect { line: 2, seq: 0 })
        ));
        // An open is consumed by the first select/dismiss that follows it.
        let input = log_with(&[
            r#"{"seq":0,"t_ms":0,"kind":"suggestion_open","suggestions":["a","b","c","d"]}"#,
            r#"{"seq":1,"t_ms":1,"kind":"suggestion_dismiss"}"#,
            r#"{"seq":2,"t_ms":2,"kind":"suggestion_dismiss"}"#,
        ]);
        assert!(matches!(
            parse_session_log_str(&input),
            Err(LogError::DanglingSuggestionDismiss { line: 4, seq: 2 })
        ));
    }

    #[test]
    fn select_index_and_list_length() {
        let input = log_with(&[
            r#"{"seq":0,"t_ms":0,"kind":"suggestion_open","suggestions":["a","b"]}"#,
            r#"{"seq":1,"t_ms":1,"kind":"suggestion_select","selected_index":2}"#,
        ]);
        assert!(matches!(
            parse_session_log_str(&input),
            Err(LogError::SelectedIndexOutOfRange {
                index: 2,
                len: 2,
                ..
            })
        ));
        let input = log_with(&[
            r#"{"seq":0,"t_ms":0,"kind":"suggestion_open","suggestions":["a","b","c","d","e"]}"#,
        ]);
        assert!(matches!(
            parse_session_log_str(&input),
            Err(LogError::InvalidSuggestionList { len: 5, .. })
        ));
    }

    #[test]
    fn final_text_is_verified() {
        let input = r#"{"session_id":"s","participant_id":"p","topic":"t","assistant_mode":"none","final_text":"Hi"}
{"seq":0,"t_ms":0,"kind":"insert","pos":0,"text":"Ho"}"#;
        assert!(matches!(
            parse_session_log_str(input),
            Err(LogError::FinalTextMismatch { .. })
        ));
    }

    #[test]
    fn extra_fields_survive_round_trip() {
        let input = r#"{"session_id":"s","participant_id":"p","topic":"t","assistant_mode":"autocomplete","editor":"v2"}
{"seq":0,"t_ms":0,"kind":"insert","pos":0,"text":"Hi","source":"keyboard"}"#;
        let log = parse_session_log_str(input).unwrap();
        assert_eq!(log.extra["editor"], "v2");
        assert_eq!(log.events[0].extra["source"], "keyboard");
        let again = parse_session_log_str(&session_log_to_string(&log)).unwrap();
        assert_eq!(again, log);
    }

    #[test]
    fn missing_header() {
        assert!(matches!(
            parse_session_log_str(""),
            Err(LogError::MissingHeader)
        ));
    }
}
