use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::vocab::{TopicBank, FUNCTION_WORDS};
use super::{InsertTag, LabeledSession, PersonaKind, SimulationError, WriterPersona};
use crate::assistant::TemplateSet;
use crate::classifier::Source;
use crate::detectors::{describe_run, run_satisfies, DetectionInput, DetectorConfig, PatternKind};
use crate::embeddings::HashEmbedder;
use crate::metrics::expansion_series;
use crate::par::Execution;
use crate::session_log::{
    insert_provenance, reconstruct_snapshots, sentence_spans, AssistantMode, EventAction,
    EventRange, SessionEvent, SessionLog,
};

const MIN_PAUSE_MS: u64 = 500;
const TARGET_CHURN_CHARS: usize = 450;

#[derive(Debug, Clone, Copy)]
enum Gap {
    Ms(u64),
    /// Think time between episodes, sized after the script is complete.
    Pause,
}

struct Step {
    gap: Gap,
    action: EventAction,
    ai: bool,
}

struct Script<'a> {
    rng: ChaCha8Rng,
    persona: &'a WriterPersona,
    mode: AssistantMode,
    templates: TemplateSet,
    doc: String,
    steps: Vec<Step>,
    truth: Vec<(PatternKind, EventRange)>,
}

impl<'a> Script<'a> {
    fn new(persona: &'a WriterPersona, seed: u64) -> Self {
        Script {
            rng: ChaCha8Rng::seed_from_u64(seed),
            persona,
            mode: AssistantMode::Autocomplete,
            templates: TemplateSet::default(),
            doc: String::new(),
            steps: Vec::new(),
            truth: Vec::new(),
        }
    }

    fn end(&self) -> usize {
        self.doc.len()
    }

    fn typing_ms(&self, chars: usize) -> u64 {
        ((chars as f64 * 1000.0 / self.persona.typing_rate_cps).round() as u64).max(1)
    }

    fn push(&mut self, gap: Gap, action: EventAction, ai: bool) {
        match &action {
            EventAction::Insert { pos, text } => self.doc.insert_str(*pos, text),
            EventAction::Delete { pos, text } => {
                debug_assert_eq!(&self.doc[*pos..*pos + text.len()], text);
                self.doc.replace_range(*pos..*pos + text.len(), "");
            }
            _ => {}
        }
        self.steps.push(Step { gap, action, ai });
    }

    fn insert(&mut self, pos: usize, text: &str, gap: Gap, ai: bool) {
        self.push(
            gap,
            EventAction::Insert {
                pos,
                text: text.to_string(),
            },
            ai,
        );
    }

    fn delete(&mut self, pos: usize, len: usize, gap: Gap) {
        let text = self.doc[pos..pos + len].to_string();
        self.push(gap, EventAction::Delete { pos, text }, false);
    }

    fn cursor(&mut self, pos: usize, gap: Gap) {
        self.push(gap, EventAction::CursorMove { pos }, false);
    }

    /// Types `text` at `pos` one word at a time.
    fn type_at(&mut self, mut pos: usize, text: &str) {
        let mut chunks: Vec<String> = Vec::new();
        let mut cur = String::new();
        for c in text.chars() {
            if c == ' ' && cur.chars().any(|x| !x.is_whitespace()) {
                chunks.push(std::mem::take(&mut cur));
            }
            cur.push(c);
        }
        if !cur.is_empty() {
            match chunks.last_mut() {
                Some(last) if cur.trim().is_empty() => last.push_str(&cur),
                _ => chunks.push(cur),
            }
        }
        for chunk in chunks {
            let gap = Gap::Ms(self.typing_ms(chunk.len()));
            self.insert(pos, &chunk, gap, false);
            pos += chunk.len();
        }
    }

    fn end_episode(&mut self) {
        let end = self.end();
        self.cursor(end, Gap::Ms(400));
        self.cursor(end, Gap::Pause);
    }

    fn sentence(&mut self, bank: &TopicBank, min: usize, max: usize) -> String {
        let target = self.rng.gen_range(min..=max.saturating_sub(12).max(min));
        let mut words: Vec<&str> = Vec::new();
        let mut len = 0;
        while len < target {
            let prev_function = words.last().is_some_and(|w| FUNCTION_WORDS.contains(w));
            let w = if !words.is_empty() && !prev_function && self.rng.gen_bool(0.35) {
                FUNCTION_WORDS[self.rng.gen_range(0..FUNCTION_WORDS.len())]
            } else {
                bank.words[self.rng.gen_range(0..bank.words.len())].as_str()
            };
            if words.last() == Some(&w) || len + w.len() + 1 > max {
                if len + 4 > max {
                    break;
                }
                continue;
            }
            len += w.len() + usize::from(!words.is_empty());
            words.push(w);
        }
        if words.last().is_some_and(|w| FUNCTION_WORDS.contains(w)) && words.len() > 1 {
            words.pop();
        }
        capitalize_sentence(&words.join(" "))
    }

    fn long_sentence(&mut self, bank: &TopicBank) -> String {
        self.sentence(bank, 85, 140)
    }

    fn write_sentence(&mut self, bank: &TopicBank) {
        let s = self.long_sentence(bank);
        let end = self.end();
        let lead = if self.doc.ends_with(|c: char| !c.is_whitespace()) {
            " "
        } else {
            ""
        };
        self.type_at(end, &format!("{lead}{s} "));
    }

    fn offer(&mut self, bank: &TopicBank) -> Vec<String> {
        match self.mode {
            AssistantMode::Socratic => (0..4)
                .map(|_| {
                    let t = self.rng.gen_range(0..self.templates.len());
                    let x = bank.words[self.rng.gen_range(0..bank.words.len())].clone();
                    let y = bank.words[self.rng.gen_range(0..bank.words.len())].clone();
                    self.templates.fill(t, &[&x, &y])
                })
                .collect(),
            _ => (0..4).map(|_| self.long_sentence(bank)).collect(),
        }
    }

    fn dismissed_request(&mut self, bank: &TopicBank) {
        let suggestions = self.offer(bank);
        self.push(
            Gap::Ms(700),
            EventAction::SuggestionOpen { suggestions },
            false,
        );
        self.push(Gap::Ms(2500), EventAction::SuggestionDismiss, false);
    }

    /// Requests a sentence continuation; returns whether one was accepted.
    fn ai_append(&mut self, bank: &TopicBank) -> bool {
        if self.doc.ends_with(|c: char| !c.is_whitespace()) {
            let end = self.end();
            self.insert(end, " ", Gap::Ms(250), false);
        }
        let suggestions: Vec<String> = (0..4).map(|_| self.long_sentence(bank)).collect();
        self.push(
            Gap::Ms(700),
            EventAction::SuggestionOpen {
                suggestions: suggestions.clone(),
            },
            false,
        );
        if !self.rng.gen_bool(self.persona.acceptance_probability) {
            self.push(Gap::Ms(2500), EventAction::SuggestionDismiss, false);
            return false;
        }
        let index = self.rng.gen_range(0..suggestions.len());
        self.push(
            Gap::Ms(2500),
            EventAction::SuggestionSelect { index },
            false,
        );
        let end = self.end();
        self.insert(end, &suggestions[index], Gap::Ms(300), true);
        true
    }

    /// Char offsets of lowercase words of at least four letters.
    fn editable_words(&self) -> Vec<(usize, usize)> {
        let b = self.doc.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        while i < b.len() {
            if b[i].is_ascii_alphabetic() && (i == 0 || b[i - 1] == b' ') {
                let mut j = i;
                while j < b.len() && b[j].is_ascii_alphabetic() {
                    j += 1;
                }
                if j - i >= 4 && b[i..j].iter().all(u8::is_ascii_lowercase) {
                    out.push((i, j - i));
                }
                i = j;
            } else {
                i += 1;
            }
        }
        out
    }

    fn word_edit(&mut self, bank: &TopicBank) -> bool {
        let words = self.editable_words();
        let Some(&(pos, len)) = words.choose(&mut self.rng) else {
            return false;
        };
        let new = bank.words[self.rng.gen_range(0..bank.words.len())].clone();
        self.cursor(pos, Gap::Ms(1500));
        self.delete(pos, len, Gap::Ms(600));
        let gap = Gap::Ms(self.typing_ms(new.len()));
        self.insert(pos, &new, gap, false);
        self.end_episode();
        true
    }

    /// Writer sentence, optionally followed by a dismissed request, or a word revision.
    fn writer_episode(&mut self, bank: &TopicBank) {
        if self.rng.gen_bool(self.persona.edit_probability) && self.word_edit(bank) {
            return;
        }
        self.write_sentence(bank);
        if self.rng.gen_bool(self.persona.suggestion_request_rate) {
            self.dismissed_request(bank);
        }
        self.end_episode();
    }

    fn intro(&mut self, bank: &TopicBank) {
        self.write_sentence(bank);
        self.write_sentence(bank);
        self.end_episode();
    }

    /// Case toggles of interior letters, each its own delete+insert pair.
    fn copyedit_burst(&mut self, n: usize) {
        let b = self.doc.as_bytes();
        let letters: Vec<usize> = (1..b.len())
            .filter(|&i| b[i].is_ascii_alphabetic() && b[i - 1].is_ascii_alphabetic())
            .collect();
        if letters.is_empty() {
            return;
        }
        let start = self.steps.len() + 1;
        for _ in 0..n {
            let p = letters[self.rng.gen_range(0..letters.len())];
            let c = self.doc.as_bytes()[p] as char;
            let toggled = if c.is_ascii_lowercase() {
                c.to_ascii_uppercase()
            } else {
                c.to_ascii_lowercase()
            };
            let think = self.rng.gen_range(5000..=7000);
            self.cursor(p, Gap::Ms(think));
            self.delete(p, 1, Gap::Ms(1200));
            self.insert(p, &toggled.to_string(), Gap::Ms(1800), false);
        }
        self.truth.push((
            PatternKind::PrematureProlongedCopyediting,
            EventRange::new(start, self.steps.len()),
        ));
        self.end_episode();
    }

    fn restate(&mut self, sentence: &str, bank: &TopicBank) -> String {
        let body = sentence.trim_end_matches('.').to_ascii_lowercase();
        let mut words: Vec<String> = body.split(' ').map(str::to_string).collect();
        words.shuffle(&mut self.rng);
        if self.rng.gen_bool(0.3) {
            let content: Vec<usize> = (0..words.len())
                .filter(|&i| !FUNCTION_WORDS.contains(&words[i].as_str()))
                .collect();
            if let Some(&i) = content.choose(&mut self.rng) {
                words[i] = bank.words[self.rng.gen_range(0..bank.words.len())].clone();
            }
        }
        capitalize_sentence(&words.join(" "))
    }

    /// Replaces existing sentences with accepted restatements of themselves
    /// until enough text has been regenerated.
    fn echo_churn(&mut self, bank: &TopicBank) {
        let mut order: Vec<usize> = (0..sentence_spans(&self.doc).len()).collect();
        order.shuffle(&mut self.rng);
        let mut first = None;
        let mut generated = 0;
        for k in order {
            if generated >= TARGET_CHURN_CHARS {
                break;
            }
            let span = sentence_spans(&self.doc)[k].clone();
            let old = self.doc[span.clone()].to_string();
            if !old.ends_with('.') {
                continue;
            }
            let restated = self.restate(&old, bank);
            let mut suggestions: Vec<String> = (0..3).map(|_| self.long_sentence(bank)).collect();
            let index = self.rng.gen_range(0..=suggestions.len());
            suggestions.insert(index, restated.clone());

            self.cursor(span.start, Gap::Ms(4000));
            self.push(
                Gap::Ms(800),
                EventAction::SuggestionOpen { suggestions },
                false,
            );
            self.push(
                Gap::Ms(3000),
                EventAction::SuggestionSelect { index },
                false,
            );
            first.get_or_insert(self.steps.len());
            self.insert(span.start, &restated, Gap::Ms(300), true);
            self.delete(span.start + restated.len(), old.len(), Gap::Ms(900));
            generated += restated.len();
        }
        if let Some(start) = first {
            self.truth.push((
                PatternKind::MindlessEchoing,
                EventRange::new(start, self.steps.len()),
            ));
        }
        self.end_episode();
    }

    fn topic_shift(&mut self, bank: &TopicBank) {
        let start = self.steps.len();
        let end = self.end();
        self.insert(end, "\n", Gap::Ms(800), false);
        for _ in 0..3 {
            let s = self.sentence(bank, 25, 45);
            let end = self.end();
            self.type_at(end, &format!("{s} "));
        }
        self.truth.push((
            PatternKind::WriterInitiatedTopicShift,
            EventRange::new(start, self.steps.len()),
        ));
        self.end_episode();
    }

    fn cycle(&mut self, bank: &TopicBank) {
        self.writer_episode(bank);
        if self.rng.gen_bool(self.persona.suggestion_request_rate) {
            self.ai_append(bank);
            self.end_episode();
        }
    }

    fn run(&mut self, banks: &[TopicBank]) {
        let home = self.rng.gen_range(0..banks.len());
        let bank = &banks[home];
        match self.persona.kind {
            PersonaKind::IndependentWriter => {
                if self.rng.gen_bool(0.5) {
                    self.mode = AssistantMode::Socratic;
                }
                self.intro(bank);
                for _ in 0..self.rng.gen_range(16..=22) {
                    self.writer_episode(bank);
                }
            }
            PersonaKind::CoIdeator => {
                self.intro(bank);
                for _ in 0..self.rng.gen_range(12..=16) {
                    self.cycle(bank);
                }
            }
            PersonaKind::Echoer => {
                let appends = self.rng.gen_range(9..=12);
                let churn_at = self.rng.gen_range(8..=appends);
                for i in 0..=appends {
                    if i == churn_at {
                        self.echo_churn(bank);
                    }
                    if i < appends {
                        if !self.ai_append(bank) {
                            self.write_sentence(bank);
                        }
                        self.end_episode();
                    }
                }
            }
            PersonaKind::Copyeditor => {
                self.intro(bank);
                for _ in 0..self.rng.gen_range(2..=3) {
                    self.writer_episode(bank);
                }
                self.copyedit_burst(self.persona.copyedit_burst_length);
                for _ in 0..self.rng.gen_range(10..=14) {
                    self.writer_episode(bank);
                }
                if self.rng.gen_bool(0.5) {
                    self.copyedit_burst(self.persona.copyedit_burst_length);
                }
            }
            PersonaKind::Initiator => {
                let mut fresh: Vec<usize> = (0..banks.len()).filter(|&i| i != home).collect();
                fresh.shuffle(&mut self.rng);
                let cycles = self.rng.gen_range(10..=14);
                let first_shift = self.rng.gen_range(3..cycles - 2);
                let mut current = home;
                let mut last_shift = None;
                self.intro(bank);
                for i in 0..cycles {
                    let due = i == first_shift
                        || last_shift.is_some_and(|l| i >= l + 3)
                            && self.rng.gen_bool(self.persona.topic_shift_rate);
                    if due {
                        if let Some(next) = fresh.pop() {
                            current = next;
                            last_shift = Some(i);
                            self.topic_shift(&banks[current]);
                        }
                    }
                    self.cycle(&banks[current]);
                }
            }
        }
    }

    /// Assigns timestamps so the session lasts about `duration_ms`.
    fn into_events(mut self, duration_ms: u64) -> (Vec<SessionEvent>, Vec<bool>, String) {
        let fixed: u64 = self
            .steps
            .iter()
            .map(|s| match s.gap {
                Gap::Ms(ms) => ms,
                Gap::Pause => 0,
            })
            .sum();
        let pauses = self
            .steps
            .iter()
            .filter(|s| matches!(s.gap, Gap::Pause))
            .count();
        let weights: Vec<f64> = (0..pauses).map(|_| self.rng.gen_range(0.5..1.5)).collect();
        let total: f64 = weights.iter().sum();
        let budget = duration_ms.saturating_sub(fixed) as f64;
        let mut weights = weights.into_iter();
        let mut t = 0u64;
        let mut events = Vec::with_capacity(self.steps.len());
        let mut ai = Vec::with_capacity(self.steps.len());
        for (i, step) in self.steps.into_iter().enumerate() {
            t += match step.gap {
                Gap::Ms(ms) => ms,
                Gap::Pause => {
                    let w = weights.next().unwrap_or(1.0);
                    ((budget * w / total) as u64).max(MIN_PAUSE_MS)
                }
            };
            events.push(SessionEvent::new(i as u64 + 1, t, step.action));
            ai.push(step.ai);
        }
        (events, ai, self.doc)
    }
}

fn capitalize_sentence(body: &str) -> String {
    let mut s = body.to_string();
    if let Some(first) = s.get_mut(..1) {
        first.make_ascii_uppercase();
    }
    s.push('.');
    s
}

/// Generates one labeled session. `duration_ms` is a target: the scripted
/// activity is stretched to fill it, but never compressed below the time
/// the typing itself takes.
pub fn simulate_session(
    persona: &WriterPersona,
    seed: u64,
    duration_ms: u64,
    vocabulary: &[TopicBank],
) -> Result<LabeledSession, SimulationError> {
    persona.validate()?;
    if duration_ms == 0 {
        return Err(SimulationError::ZeroDuration);
    }
    if vocabulary.len() < 2 {
        return Err(SimulationError::TooFewTopicBanks(vocabulary.len()));
    }
    if vocabulary.iter().any(|b| b.words.is_empty()) {
        return Err(SimulationError::InvalidPersonaParams(
            "topic banks must not be empty".into(),
        ));
    }

    let mut script = Script::new(persona, seed);
    script.run(vocabulary);
    let truth = std::mem::take(&mut script.truth);
    let mode = script.mode;
    let (events, ai, final_text) = script.into_events(duration_ms);

    let session_id = format!("{}-{seed}", persona.kind);
    let mut log = SessionLog::new(
        session_id.clone(),
        format!("p{seed}"),
        persona.kind.as_str(),
        mode,
    );
    log.events = events;
    log.final_text = Some(final_text);

    let truth_authorship = log
        .events
        .iter()
        .zip(&ai)
        .filter(|(e, _)| matches!(e.action, EventAction::Insert { .. }))
        .map(|(e, &ai)| InsertTag {
            seq: e.seq,
            source: if ai { Source::Ai } else { Source::Writer },
        })
        .collect();

    let snapshots = reconstruct_snapshots(&log)?;
    let series = expansion_series(
        &session_id,
        &log,
        &snapshots,
        &HashEmbedder::default(),
        Execution::Sequential,
    )?;
    let provenance = insert_provenance(&log);
    let input = DetectionInput::new(&log, &snapshots, &series, &provenance)?;
    let cfg = DetectorConfig::default();
    let mut truth_spans = Vec::with_capacity(truth.len());
    for (kind, range) in truth {
        let span = describe_run(kind, &input, range, &cfg)
            .filter(|_| run_satisfies(kind, &input, range, &cfg))
            .ok_or_else(|| SimulationError::InconsistentTruth {
                session_id: session_id.clone(),
                kind,
                range,
            })?;
        truth_spans.push(span);
    }
    drop(input);

    Ok(LabeledSession {
        log,
        truth_spans,
        truth_class: persona.kind.truth_class(),
        truth_authorship,
    })
}
