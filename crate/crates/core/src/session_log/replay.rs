use super::event::{EventAction, SessionEvent, SessionLog};
use super::segment::closes_sentence;
use super::LogError;

/// Editable document addressed by character offsets.
///
/// A gap buffer: `before` holds the characters left of the gap in order,
/// `after` holds the characters right of the gap in reverse. Localised
/// edits (the common case for keystroke logs) cost O(edit + cursor travel).
#[derive(Debug, Clone, Default)]
pub struct Document {
    before: Vec<char>,
    after: Vec<char>,
}

impl Document {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.before.len() + self.after.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn char_at(&self, i: usize) -> char {
        if i < self.before.len() {
            self.before[i]
        } else {
            self.after[self.after.len() - 1 - (i - self.before.len())]
        }
    }

    fn move_gap(&mut self, pos: usize) {
        while self.before.len() > pos {
            let c = self.before.pop().expect("non-empty");
            self.after.push(c);
        }
        while self.before.len() < pos {
            let c = self.after.pop().expect("pos within bounds");
            self.before.push(c);
        }
    }

    /// Inserts `text` at `pos`. Returns `false` when `pos` is out of bounds.
    pub fn insert(&mut self, pos: usize, text: &str) -> bool {
        if pos > self.len() {
            return false;
        }
        self.move_gap(pos);
        self.before.extend(text.chars());
        true
    }

    /// Removes the characters of `expected` starting at `pos`.
    pub fn delete(&mut self, pos: usize, expected: &str) -> Result<(), DeleteFailure> {
        let n = expected.chars().count();
        if pos + n > self.len() {
            return Err(DeleteFailure::OutOfBounds);
        }
        self.move_gap(pos);
        let tail = self.after.len();
        let matches = expected
            .chars()
            .zip(self.after[tail - n..].iter().rev())
            .all(|(a, &b)| a == b);
        if !matches {
            let found: String = self.after[tail - n..].iter().rev().collect();
            return Err(DeleteFailure::Mismatch(found));
        }
        self.after.truncate(tail - n);
        Ok(())
    }

    pub fn text(&self) -> String {
        let mut s = String::with_capacity(self.len());
        s.extend(self.before.iter());
        s.extend(self.after.iter().rev());
        s
    }

    /// Whether the document holds any non-whitespace character before `pos`.
    pub fn has_text_before(&self, pos: usize) -> bool {
        (0..pos.min(self.len())).any(|i| !self.char_at(i).is_whitespace())
    }

    /// Sentence/paragraph start test at a character offset; see [`is_boundary`].
    pub fn is_boundary(&self, pos: usize) -> bool {
        boundary_at(|i| self.char_at(i), self.len(), pos.min(self.len()))
    }

    /// Applies one event; non-text events leave the document untouched.
    pub fn apply(&mut self, event: &SessionEvent) -> Result<(), LogError> {
        match &event.action {
            EventAction::Insert { pos, text } => {
                if !self.insert(*pos, text) {
                    return Err(LogError::PositionOutOfBounds {
                        seq: event.seq,
                        pos: *pos,
                        len: self.len(),
                    });
                }
            }
            EventAction::Delete { pos, text } => match self.delete(*pos, text) {
                Ok(()) => {}
                Err(DeleteFailure::OutOfBounds) => {
                    return Err(LogError::PositionOutOfBounds {
                        seq: event.seq,
                        pos: *pos,
                        len: self.len(),
                    })
                }
                Err(DeleteFailure::Mismatch(found)) => {
                    return Err(LogError::DeleteMismatch {
                        seq: event.seq,
                        expected: text.clone(),
                        found,
                    })
                }
            },
            EventAction::CursorMove { pos } => {
                if *pos > self.len() {
                    return Err(LogError::PositionOutOfBounds {
                        seq: event.seq,
                        pos: *pos,
                        len: self.len(),
                    });
                }
            }
            _ => {}
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeleteFailure {
    OutOfBounds,
    Mismatch(String),
}

fn boundary_at(at: impl Fn(usize) -> char, len: usize, pos: usize) -> bool {
    if pos == 0 {
        return true;
    }
    let prev = at(pos - 1);
    if prev == '\n' {
        return true;
    }
    if !prev.is_whitespace() {
        return (pos == len || at(pos).is_whitespace()) && closes_sentence(&at, pos);
    }
    let mut q = pos - 1;
    while q > 0 && at(q - 1).is_whitespace() {
        if at(q - 1) == '\n' {
            return true;
        }
        q -= 1;
    }
    // Only whitespace before `pos`: still the start of the document.
    q == 0 || closes_sentence(&at, q)
}

/// True iff `position` (a character offset) is the document start, directly
/// follows a newline, or follows sentence-closing punctuation (optionally
/// plus whitespace) under the segmentation rules. Directly after the
/// punctuation counts only at the end of the text or before whitespace.
pub fn is_boundary(document: &str, position: usize) -> bool {
    let chars: Vec<char> = document.chars().collect();
    boundary_at(|i| chars[i], chars.len(), position.min(chars.len()))
}

/// Document text after applying every event with `seq <= upto_seq`.
pub fn replay(log: &SessionLog, upto_seq: u64) -> Result<String, LogError> {
    let mut doc = Document::new();
    for event in log.events.iter().take_while(|e| e.seq <= upto_seq) {
        doc.apply(event)?;
    }
    Ok(doc.text())
}

/// Document text after the whole log.
pub fn replay_all(log: &SessionLog) -> Result<String, LogError> {
    let mut doc = Document::new();
    for event in &log.events {
        doc.apply(event)?;
    }
    Ok(doc.text())
}

/// Replays `log`, calling `visit(index, event, doc_before)` before each event
/// is applied.
pub fn replay_with<F>(log: &SessionLog, mut visit: F) -> Result<Document, LogError>
where
    F: FnMut(usize, &SessionEvent, &Document),
{
    let mut doc = Document::new();
    for (i, event) in log.events.iter().enumerate() {
        visit(i, event, &doc);
        doc.apply(event)?;
    }
    Ok(doc)
}

/// Full replay check, including the recorded final text.
pub fn verify_replay(log: &SessionLog) -> Result<(), LogError> {
    let text = replay_all(log)?;
    if let Some(expected) = &log.final_text {
        if *expected != text {
            let at = expected
                .chars()
                .zip(text.chars())
                .position(|(a, b)| a != b)
                .unwrap_or_else(|| expected.chars().count().min(text.chars().count()));
            return Err(LogError::FinalTextMismatch {
                first_difference: at,
            });
        }
    }
    Ok(())
}
