use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::vocab::default_topic_banks;
use crate::session_log::{AssistantMode, EventAction, SessionEvent, SessionLog};

/// A character-at-a-time log with `events` events: typing, backspaces,
/// cursor moves and an occasional dismissed suggestion list. Meant for
/// throughput and round-trip checks; it carries no truth labels.
pub fn keystroke_log(seed: u64, events: usize) -> SessionLog {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let banks = default_topic_banks();
    let bank = &banks[rng.gen_range(0..banks.len())];
    let mut log = SessionLog::new(
        format!("keystroke-{seed}"),
        format!("p{seed}"),
        bank.name.clone(),
        AssistantMode::Autocomplete,
    );
    let mut doc = String::new();
    let mut pending: Vec<char> = Vec::new();
    let mut words_in_sentence = 0;
    let mut t = 0u64;
    let mut open = false;
    while log.events.len() < events {
        t += rng.gen_range(60..=400);
        let roll: f64 = rng.gen();
        let action = if open {
            open = false;
            EventAction::SuggestionDismiss
        } else if roll < 0.002 {
            open = true;
            EventAction::SuggestionOpen {
                suggestions: vec![format!("More on {}.", bank.words[0])],
            }
        } else if roll < 0.03 {
            EventAction::CursorMove { pos: doc.len() }
        } else if roll < 0.07 && !doc.is_empty() {
            let last = doc.pop().unwrap_or(' ');
            EventAction::Delete {
                pos: doc.len(),
                text: last.to_string(),
            }
        } else {
            if pending.is_empty() {
                let w = &bank.words[rng.gen_range(0..bank.words.len())];
                words_in_sentence += 1;
                let sep = if words_in_sentence >= 12 {
                    words_in_sentence = 0;
                    ". "
                } else {
                    " "
                };
                pending = format!("{w}{sep}").chars().rev().collect();
            }
            let c = pending.pop().unwrap_or(' ');
            doc.push(c);
            EventAction::Insert {
                pos: doc.len() - 1,
                text: c.to_string(),
            }
        };
        let seq = log.events.len() as u64 + 1;
        log.events.push(SessionEvent::new(seq, t, action));
    }
    if open {
        if let Some(last) = log.events.last_mut() {
            if matches!(last.action, EventAction::SuggestionOpen { .. }) {
                last.action = EventAction::CursorMove { pos: doc.len() };
            }
        }
    }
    log.final_text = Some(doc);
    log
}
