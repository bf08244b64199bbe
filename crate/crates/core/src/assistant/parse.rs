use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use super::{AssistantError, SuggestionMode};

pub const SUGGESTION_COUNT: usize = 4;

/// Exactly four non-empty suggestions of one mode.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuggestionSet {
    items: [String; SUGGESTION_COUNT],
    mode: SuggestionMode,
}

impl SuggestionSet {
    pub fn new(
        items: [String; SUGGESTION_COUNT],
        mode: SuggestionMode,
    ) -> Result<Self, AssistantError> {
        for (i, item) in items.iter().enumerate() {
            if item.trim().is_empty() {
                return Err(AssistantError::EmptySuggestion(i + 1));
            }
            if mode == SuggestionMode::Socratic && !item.trim_end().ends_with('?') {
                return Err(AssistantError::NotAQuestion(i + 1));
            }
        }
        Ok(Self { items, mode })
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn mode(&self) -> SuggestionMode {
        self.mode
    }

    /// The numbered one-line layout the prompts ask for.
    pub fn to_numbered(&self) -> String {
        format_numbered(&self.items)
    }
}

pub fn format_numbered(items: &[String]) -> String {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| format!("{}. {}", i + 1, s))
        .collect::<Vec<_>>()
        .join(" ")
}

fn marker() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    // A marker starts the text or follows whitespace, and is followed by
    // whitespace, so "2.5" or "U.S. 1." inside an item are not markers.
    RE.get_or_init(|| Regex::new(r"(?:^|\s)([1-9])[.)](?:\s|$)").unwrap())
}

fn clean(item: &str) -> String {
    let t = item.trim();
    let t = t.strip_prefix('[').unwrap_or(t);
    let t = t.strip_suffix(']').unwrap_or(t);
    t.trim().to_string()
}

/// Extracts items numbered 1 to 4, newline- or inline-separated. Markers
/// must appear in order; anything before "1." and after the fourth item's
/// line is dropped.
pub fn parse_numbered_suggestions(
    response: &str,
    mode: SuggestionMode,
) -> Result<SuggestionSet, AssistantError> {
    if response.trim().is_empty() {
        return Err(AssistantError::EmptyResponse);
    }
    // (marker start, item text start)
    let mut found: Vec<(usize, usize)> = Vec::new();
    let mut next = 1;
    for caps in marker().captures_iter(response) {
        let digit = caps.get(1).unwrap();
        if digit.as_str().parse::<usize>().ok() == Some(next) && next <= SUGGESTION_COUNT {
            found.push((digit.start(), caps.get(0).unwrap().end()));
            next += 1;
        }
    }
    let mut items = Vec::with_capacity(SUGGESTION_COUNT);
    for (k, &(_, text_start)) in found.iter().enumerate() {
        let text_end = match found.get(k + 1) {
            Some(&(marker_start, _)) => marker_start,
            None => {
                let rest = &response[text_start..];
                text_start
                    + rest
                        .trim_start()
                        .find('\n')
                        .map_or(rest.len(), |p| p + (rest.len() - rest.trim_start().len()))
            }
        };
        let item = clean(&response[text_start..text_end]);
        if item.is_empty() {
            break;
        }
        items.push(item);
    }
    if items.len() < SUGGESTION_COUNT {
        return Err(AssistantError::IncompleteSuggestions(items.len()));
    }
    let items: [String; SUGGESTION_COUNT] = items.try_into().expect("exactly four items");
    SuggestionSet::new(items, mode)
}
