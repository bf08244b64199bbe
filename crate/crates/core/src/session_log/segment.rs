//! Rule-based sentence segmentation.
//!
//! A sentence closes at a run of `.`, `!` or `?` (optionally followed by
//! closing quotes or brackets) when the run is followed by whitespace or the
//! end of the text. A lone `.` that ends a word from [`ABBREVIATIONS`] does
//! not close a sentence, and a `.` between digits never does because it is
//! not followed by whitespace.

use std::ops::Range;

/// Abbreviations whose trailing period never ends a sentence. Compared
/// case-insensitively against the whitespace-delimited word ending in `.`.
pub const ABBREVIATIONS: &[&str] = &[
    "mr.", "mrs.", "ms.", "dr.", "prof.", "sr.", "jr.", "st.", "mt.", "vs.", "e.g.", "i.e.", "cf.",
    "u.s.", "u.k.", "u.n.", "inc.", "ltd.", "co.", "corp.", "no.", "fig.", "approx.", "dept.",
    "est.", "jan.", "feb.", "mar.", "apr.", "jun.", "jul.", "aug.", "sep.", "sept.", "oct.",
    "nov.", "dec.",
];

const LONGEST_ABBREVIATION: usize = 7;

const OPENERS: &[char] = &['"', '\'', '(', '[', '{', '\u{201c}', '\u{2018}'];

fn is_terminal(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '}' | '\u{201d}' | '\u{2019}')
}

/// Whether the characters before `end` finish with a terminal run that
/// closes a sentence. The caller guarantees `end` is followed by whitespace
/// or end-of-text. `at(i)` must be valid for every `i < end`.
pub(crate) fn closes_sentence(at: impl Fn(usize) -> char, end: usize) -> bool {
    let mut i = end;
    while i > 0 && is_closer(at(i - 1)) {
        i -= 1;
    }
    let terminal_end = i;
    while i > 0 && is_terminal(at(i - 1)) {
        i -= 1;
    }
    let run = terminal_end - i;
    if run == 0 {
        return false;
    }
    if run == 1 && at(terminal_end - 1) == '.' {
        // Word ending in this period: scan back to whitespace.
        let mut s = terminal_end - 1;
        while s > 0 && !at(s - 1).is_whitespace() {
            s -= 1;
        }
        while s < terminal_end && OPENERS.contains(&at(s)) {
            s += 1;
        }
        if terminal_end - s > LONGEST_ABBREVIATION {
            return true;
        }
        let word: String = (s..terminal_end)
            .flat_map(|i| at(i).to_lowercase())
            .collect();
        if ABBREVIATIONS.contains(&word.as_str()) {
            return false;
        }
    }
    true
}

/// Byte ranges of the sentences in `text`, trimmed of surrounding whitespace.
pub fn sentence_spans(text: &str) -> Vec<Range<usize>> {
    if text.is_ascii() {
        return ascii_spans(text.as_bytes());
    }
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    spans_by(
        chars.len(),
        |i| chars[i].1,
        |i| chars.get(i).map_or(text.len(), |&(b, _)| b),
    )
}

/// Same result as [`spans_by`] for ASCII text, jumping between terminals.
fn ascii_spans(b: &[u8]) -> Vec<Range<usize>> {
    let at = |i: usize| b[i] as char;
    let ws = |i: usize| (b[i] as char).is_whitespace();
    let n = b.len();
    let mut spans = Vec::new();
    let mut i = 0;
    loop {
        while i < n && ws(i) {
            i += 1;
        }
        if i >= n {
            return spans;
        }
        let start = i;
        loop {
            match b[i..].iter().position(|&c| matches!(c, b'.' | b'!' | b'?')) {
                None => {
                    let mut end = n;
                    while ws(end - 1) {
                        end -= 1;
                    }
                    spans.push(start..end);
                    return spans;
                }
                Some(k) => {
                    let mut j = i + k + 1;
                    while j < n && (is_terminal(at(j)) || is_closer(at(j))) {
                        j += 1;
                    }
                    i = j;
                    if (j == n || ws(j)) && closes_sentence(at, j) {
                        spans.push(start..j);
                        break;
                    }
                }
            }
        }
    }
}

fn spans_by(
    len: usize,
    at: impl Fn(usize) -> char + Copy,
    byte_at: impl Fn(usize) -> usize,
) -> Vec<Range<usize>> {
    let mut spans = Vec::new();
    let mut start: Option<usize> = None;
    let mut last_non_ws = 0;
    let mut i = 0;
    while i < len {
        let c = at(i);
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if start.is_none() {
            start = Some(i);
        }
        last_non_ws = i;
        if is_terminal(c) {
            let mut j = i + 1;
            while j < len && (is_terminal(at(j)) || is_closer(at(j))) {
                j += 1;
            }
            last_non_ws = j - 1;
            if (j == len || at(j).is_whitespace()) && closes_sentence(at, j) {
                spans.push(byte_at(start.take().unwrap_or(i))..byte_at(j));
            }
            i = j;
            continue;
        }
        i += 1;
    }
    if let Some(s) = start {
        spans.push(byte_at(s)..byte_at(last_non_ws + 1));
    }
    spans
}

/// Splits `text` into sentences. Whitespace-only text yields no sentences.
pub fn segment_sentences(text: &str) -> Vec<String> {
    sentence_spans(text)
        .into_iter()
        .map(|r| text[r].to_string())
        .collect()
}

/// Number of sentences in `text`; equivalent to `segment_sentences(text).len()`.
pub fn count_sentences(text: &str) -> usize {
    sentence_spans(text).len()
}
