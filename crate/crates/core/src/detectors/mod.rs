//! Detection of mindless echoing, premature/prolonged copyediting and
//! writer-initiated topic shift from a replayed session.
//!
//! A *run* is a sequence of consecutive text edits (inserts and deletes).
//! Suggestion events and a single cursor move may sit between two edits of
//! the same run; two or more cursor moves in a row end it. A snapshot
//! transition is *covered* by a run when its event range overlaps the
//! events from the run's first edit to its last, and the run's expansion is
//! the sum over covered transitions.
//!
//! Each detector scans left to right: from the earliest edit that starts a
//! qualifying run it takes the longest qualifying run, reports it, and
//! resumes after its last edit. Reported spans of one kind are therefore
//! disjoint, and no span can be extended by an adjacent free edit.

mod config;
mod report;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metrics::ExpansionSeries;
use crate::session_log::{
    replay_with, EventAction, EventRange, LogError, Origin, SessionLog, Snapshot,
};

pub use crate::session_log::is_boundary;
pub use config::DetectorConfig;
pub use report::{DetectionReport, SpanRecord};

#[derive(Debug, Error)]
pub enum DetectError {
    #[error("invalid detector config: {0}")]
    ConfigInvalid(String),

    #[error("series has {points} points but there are {snapshots} snapshots")]
    SeriesMismatch { points: usize, snapshots: usize },

    #[error(transparent)]
    Log(#[from] LogError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternKind {
    MindlessEchoing,
    PrematureProlongedCopyediting,
    WriterInitiatedTopicShift,
}

impl PatternKind {
    pub const ALL: [PatternKind; 3] = [
        PatternKind::MindlessEchoing,
        PatternKind::PrematureProlongedCopyediting,
        PatternKind::WriterInitiatedTopicShift,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PatternKind::MindlessEchoing => "mindless_echoing",
            PatternKind::PrematureProlongedCopyediting => "premature_prolonged_copyediting",
            PatternKind::WriterInitiatedTopicShift => "writer_initiated_topic_shift",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub chars_generated: usize,
    pub delta_chars: usize,
    pub expansion_sum: f64,
    pub ai_char_fraction: f64,
    pub starts_at_boundary: bool,
    pub premature: bool,
}

/// One detected pattern occurrence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InteractionSpan {
    pub kind: PatternKind,
    /// From the run's first edit to just past its last edit.
    pub event_range: EventRange,
    pub first_seq: u64,
    pub last_seq: u64,
    pub t_start_ms: u64,
    pub t_end_ms: u64,
    pub evidence: Evidence,
}

/// Per-session facts the detectors need, computed once.
#[derive(Debug, Clone)]
pub struct DetectionInput<'a> {
    log: &'a SessionLog,
    /// Event index of each text edit.
    edits: Vec<usize>,
    inserted: Vec<usize>,
    deleted: Vec<usize>,
    ai_inserted: Vec<usize>,
    /// Insert at a sentence/paragraph start, into a transition whose earlier
    /// snapshot already has text.
    opens_topic: Vec<bool>,
    at_boundary: Vec<bool>,
    /// Two or more cursor moves separate this edit from the previous one.
    break_before: Vec<bool>,
    /// Snapshot index owning each edit.
    transition: Vec<usize>,
    /// Expansion of the transition into snapshot `i`; entry 0 is unused.
    expansion: Vec<f64>,
    session_duration_ms: u64,
}

impl<'a> DetectionInput<'a> {
    /// `provenance` is [`crate::session_log::insert_provenance`] of `log`.
    pub fn new(
        log: &'a SessionLog,
        snapshots: &[Snapshot],
        series: &ExpansionSeries,
        provenance: &[Option<Origin>],
    ) -> Result<Self, DetectError> {
        if series.points.len() + 1 != snapshots.len() {
            return Err(DetectError::SeriesMismatch {
                points: series.points.len(),
                snapshots: snapshots.len(),
            });
        }
        let mut expansion = vec![0.0; snapshots.len()];
        for p in &series.points {
            expansion[p.index] = p.expansion;
        }
        let owner = crate::session_log::snapshot_of_event(snapshots, log.events.len());

        let mut input = DetectionInput {
            log,
            edits: Vec::new(),
            inserted: Vec::new(),
            deleted: Vec::new(),
            ai_inserted: Vec::new(),
            opens_topic: Vec::new(),
            at_boundary: Vec::new(),
            break_before: Vec::new(),
            transition: Vec::new(),
            expansion,
            session_duration_ms: log.duration_ms(),
        };
        let mut cursor_moves = 0usize;
        replay_with(log, |i, event, doc| match &event.action {
            EventAction::Insert { pos, .. } | EventAction::Delete { pos, .. } => {
                let is_insert = matches!(event.action, EventAction::Insert { .. });
                let boundary = is_insert && doc.is_boundary(*pos);
                let inserted = event.inserted_chars();
                let ai = matches!(provenance.get(i), Some(Some(o)) if o.is_ai());
                input.edits.push(i);
                input.inserted.push(inserted);
                input.deleted.push(event.deleted_chars());
                input.ai_inserted.push(if ai { inserted } else { 0 });
                input.at_boundary.push(boundary);
                let prior_text = owner[i] > 0 && !snapshots[owner[i] - 1].text.trim().is_empty();
                input
                    .opens_topic
                    .push(boundary && prior_text && doc.has_text_before(*pos));
                input
                    .break_before
                    .push(input.edits.len() > 1 && cursor_moves >= 2);
                input.transition.push(owner[i]);
                cursor_moves = 0;
            }
            EventAction::CursorMove { .. } => cursor_moves += 1,
            _ => {}
        })?;
        Ok(input)
    }

    pub fn log(&self) -> &SessionLog {
        self.log
    }

    pub fn edit_count(&self) -> usize {
        self.edits.len()
    }

    /// Event index of the `k`-th text edit.
    pub fn edit_event(&self, k: usize) -> usize {
        self.edits[k]
    }

    pub fn session_duration_ms(&self) -> u64 {
        self.session_duration_ms
    }
}

#[derive(Debug, Clone, Copy)]
struct RunStats {
    edits: usize,
    inserted: usize,
    deleted: usize,
    ai_inserted: usize,
    expansion_sum: f64,
    first_insert: Option<usize>,
    last_transition: usize,
    t_start: u64,
    t_end: u64,
}

impl RunStats {
    fn start(input: &DetectionInput, a: usize) -> Self {
        let t = input.log.events[input.edits[a]].timestamp_ms;
        let mut s = RunStats {
            edits: 0,
            inserted: 0,
            deleted: 0,
            ai_inserted: 0,
            expansion_sum: input.expansion[input.transition[a]],
            first_insert: None,
            last_transition: input.transition[a],
            t_start: t,
            t_end: t,
        };
        s.push(input, a);
        s
    }

    fn push(&mut self, input: &DetectionInput, k: usize) {
        self.edits += 1;
        self.inserted += input.inserted[k];
        self.deleted += input.deleted[k];
        self.ai_inserted += input.ai_inserted[k];
        if self.first_insert.is_none() && input.inserted[k] > 0 {
            self.first_insert = Some(k);
        }
        // Transitions are visited in ascending order, including any without
        // edits that fall between two edits of the run.
        while self.last_transition < input.transition[k] {
            self.last_transition += 1;
            self.expansion_sum += input.expansion[self.last_transition];
        }
        self.t_end = input.log.events[input.edits[k]].timestamp_ms;
    }

    fn delta(&self) -> usize {
        self.inserted + self.deleted
    }

    fn duration(&self) -> u64 {
        self.t_end - self.t_start
    }

    fn ai_fraction(&self) -> f64 {
        if self.inserted == 0 {
            0.0
        } else {
            self.ai_inserted as f64 / self.inserted as f64
        }
    }
}

/// Extending a run can only make this condition worse, so the scan for a
/// given start stops as soon as it fails.
fn exhausted(kind: PatternKind, s: &RunStats, cfg: &DetectorConfig) -> bool {
    match kind {
        PatternKind::MindlessEchoing => s.expansion_sum >= cfg.significant_expansion,
        PatternKind::PrematureProlongedCopyediting => {
            s.delta() >= cfg.minimal_delta_chars || s.expansion_sum >= cfg.significant_expansion
        }
        PatternKind::WriterInitiatedTopicShift => s.delta() > cfg.minimal_delta_chars,
    }
}

fn qualifies(
    kind: PatternKind,
    input: &DetectionInput,
    s: &RunStats,
    cfg: &DetectorConfig,
) -> bool {
    match kind {
        PatternKind::MindlessEchoing => {
            s.inserted >= cfg.large_text_chars
                && s.expansion_sum < cfg.significant_expansion
                && (cfg.echo_ai_fraction <= 0.0 || s.ai_fraction() >= cfg.echo_ai_fraction)
        }
        PatternKind::PrematureProlongedCopyediting => {
            (s.edits >= cfg.min_run_events || s.duration() >= cfg.min_run_duration_ms)
                && s.delta() < cfg.minimal_delta_chars
                && s.expansion_sum < cfg.significant_expansion
        }
        PatternKind::WriterInitiatedTopicShift => {
            s.first_insert.is_some_and(|k| input.opens_topic[k])
                && s.delta() <= cfg.minimal_delta_chars
                && s.expansion_sum >= cfg.substantial_expansion
                && (!cfg.topic_shift_requires_writer_source || s.ai_fraction() < 0.5)
        }
    }
}

fn make_span(
    kind: PatternKind,
    input: &DetectionInput,
    a: usize,
    b: usize,
    s: &RunStats,
    cfg: &DetectorConfig,
) -> InteractionSpan {
    let (first, last) = (input.edits[a], input.edits[b]);
    let premature = kind == PatternKind::PrematureProlongedCopyediting
        && (s.t_start as f64) < cfg.early_phase_fraction * input.session_duration_ms as f64;
    InteractionSpan {
        kind,
        event_range: EventRange::new(first, last + 1),
        first_seq: input.log.events[first].seq,
        last_seq: input.log.events[last].seq,
        t_start_ms: s.t_start,
        t_end_ms: s.t_end,
        evidence: Evidence {
            chars_generated: s.inserted,
            delta_chars: s.delta(),
            expansion_sum: s.expansion_sum,
            ai_char_fraction: s.ai_fraction(),
            starts_at_boundary: s.first_insert.is_some_and(|k| input.at_boundary[k]),
            premature,
        },
    }
}

/// Runs one detector over a prepared session.
pub fn detect(
    kind: PatternKind,
    input: &DetectionInput,
    cfg: &DetectorConfig,
) -> Result<Vec<InteractionSpan>, DetectError> {
    cfg.validate()?;
    let n = input.edits.len();
    let mut spans = Vec::new();
    let mut a = 0;
    while a < n {
        let mut stats = RunStats::start(input, a);
        let mut best: Option<(usize, RunStats)> = None;
        let mut b = a;
        loop {
            if exhausted(kind, &stats, cfg) {
                break;
            }
            if qualifies(kind, input, &stats, cfg) {
                best = Some((b, stats));
            }
            if b + 1 >= n || input.break_before[b + 1] {
                break;
            }
            b += 1;
            stats.push(input, b);
        }
        match best {
            Some((end, s)) => {
                spans.push(make_span(kind, input, a, end, &s, cfg));
                a = end + 1;
            }
            None => a += 1,
        }
    }
    Ok(spans)
}

pub fn detect_mindless_echoing(
    input: &DetectionInput,
    cfg: &DetectorConfig,
) -> Result<Vec<InteractionSpan>, DetectError> {
    detect(PatternKind::MindlessEchoing, input, cfg)
}

pub fn detect_copyediting(
    input: &DetectionInput,
    cfg: &DetectorConfig,
) -> Result<Vec<InteractionSpan>, DetectError> {
    detect(PatternKind::PrematureProlongedCopyediting, input, cfg)
}

pub fn detect_topic_shift(
    input: &DetectionInput,
    cfg: &DetectorConfig,
) -> Result<Vec<InteractionSpan>, DetectError> {
    detect(PatternKind::WriterInitiatedTopicShift, input, cfg)
}

/// All three detectors; spans ordered by kind, then position.
pub fn detect_all(
    input: &DetectionInput,
    cfg: &DetectorConfig,
) -> Result<Vec<InteractionSpan>, DetectError> {
    let mut out = Vec::new();
    for kind in PatternKind::ALL {
        out.extend(detect(kind, input, cfg)?);
    }
    Ok(out)
}

fn range_stats(input: &DetectionInput, range: EventRange) -> Option<(usize, usize, RunStats)> {
    let a = input.edits.partition_point(|&e| e < range.start);
    let end = input.edits.partition_point(|&e| e < range.end);
    if a >= end {
        return None;
    }
    let mut stats = RunStats::start(input, a);
    for k in a + 1..end {
        if input.break_before[k] {
            return None;
        }
        stats.push(input, k);
    }
    Some((a, end - 1, stats))
}

/// The span the edits inside `range` would be reported as, provided they
/// form one contiguous run. The pattern conditions are not checked.
pub fn describe_run(
    kind: PatternKind,
    input: &DetectionInput,
    range: EventRange,
    cfg: &DetectorConfig,
) -> Option<InteractionSpan> {
    let (a, b, stats) = range_stats(input, range)?;
    Some(make_span(kind, input, a, b, &stats, cfg))
}

/// Whether the edits inside `range` form one contiguous run that satisfies
/// the conditions of `kind`. Maximality is not checked.
pub fn run_satisfies(
    kind: PatternKind,
    input: &DetectionInput,
    range: EventRange,
    cfg: &DetectorConfig,
) -> bool {
    range_stats(input, range).is_some_and(|(_, _, stats)| qualifies(kind, input, &stats, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embeddings::HashEmbedder;
    use crate::metrics::expansion_series;
    use crate::par::Execution;
    use crate::session_log::{
        insert_provenance, reconstruct_snapshots, AssistantMode, SessionEvent,
    };

    fn ins(pos: usize, text: &str) -> EventAction {
        EventAction::Insert {
            pos,
            text: text.into(),
        }
    }

    fn del(pos: usize, text: &str) -> EventAction {
        EventAction::Delete {
            pos,
            text: text.into(),
        }
    }

    fn cur(pos: usize) -> EventAction {
        EventAction::CursorMove { pos }
    }

    fn log_of(actions: Vec<(u64, EventAction)>) -> SessionLog {
        let mut log = SessionLog::new("t", "p", "climate", AssistantMode::Autocomplete);
        for (i, (t, a)) in actions.into_iter().enumerate() {
            log.events.push(SessionEvent::new(i as u64 + 1, t, a));
        }
        log
    }

    /// Detects with hash-embedder expansions, or with `override_exp` spread
    /// evenly over all transitions when given.
    fn run(
        log: &SessionLog,
        kind: PatternKind,
        cfg: &DetectorConfig,
        override_exp: Option<f64>,
    ) -> Vec<InteractionSpan> {
        let snaps = reconstruct_snapshots(log).unwrap();
        let mut series = expansion_series(
            "t",
            log,
            &snaps,
            &HashEmbedder::default(),
            Execution::Sequential,
        )
        .unwrap();
        if let Some(total) = override_exp {
            let n = series.points.len() as f64;
            for p in &mut series.points {
                p.expansion = total / n;
            }
        }
        let prov = insert_provenance(log);
        let input = DetectionInput::new(log, &snaps, &series, &prov).unwrap();
        detect(kind, &input, cfg).unwrap()
    }

    fn words(n: usize) -> String {
        let bank = ["carbon", "ocean", "heat", "glaciers", "drought", "methane"];
        let mut s = String::new();
        let mut i = 0;
        while s.len() < n {
            s.push_str(bank[i % bank.len()]);
            s.push(if i % 9 == 8 { '.' } else { ' ' });
            if i % 9 == 8 {
                s.push(' ');
            }
            i += 1;
        }
        s.truncate(n);
        s
    }

    #[test]
    fn fresh_typing_with_high_expansion_is_not_echoing() {
        let text = words(2000);
        let mut actions = Vec::new();
        let mut pos = 0;
        for (k, chunk) in text.as_bytes().chunks(100).enumerate() {
            let chunk = std::str::from_utf8(chunk).unwrap();
            actions.push((k as u64 * 1000, ins(pos, chunk)));
            pos += chunk.len();
            actions.push((k as u64 * 1000 + 500, cur(pos)));
        }
        let log = log_of(actions);
        let cfg = DetectorConfig {
            large_text_chars: 500,
            significant_expansion: 0.5,
            ..Default::default()
        };
        assert!(run(&log, PatternKind::MindlessEchoing, &cfg, Some(3.5)).is_empty());
    }

    #[test]
    fn verbatim_acceptances_form_one_echo_span() {
        let mut actions = Vec::new();
        let mut pos = 0;
        let mut t = 0;
        for k in 0..5 {
            let s = format!(
                "{}. ",
                words(238).trim_end_matches(['.', ' ']).replace('.', ",")
            )
            .replace("carbon", &format!("carbon{k}"));
            let s = s[..240.min(s.len())].to_string();
            actions.push((
                t,
                EventAction::SuggestionOpen {
                    suggestions: vec![s.clone(), "Other.".into()],
                },
            ));
            actions.push((t + 500, EventAction::SuggestionSelect { index: 0 }));
            actions.push((t + 800, ins(pos, &s)));
            pos += s.len();
            t += 5000;
        }
        actions.push((t, cur(pos)));
        let log = log_of(actions);
        let inserted: usize = log.events.iter().map(|e| e.inserted_chars()).sum();
        assert!(inserted >= 1150, "{inserted}");
        let spans = run(
            &log,
            PatternKind::MindlessEchoing,
            &DetectorConfig::default(),
            Some(0.08),
        );
        assert_eq!(spans.len(), 1);
        let s = &spans[0];
        assert_eq!(s.event_range, EventRange::new(2, 15));
        assert_eq!(s.evidence.ai_char_fraction, 1.0);
        assert_eq!(s.evidence.chars_generated, inserted);
        assert!(s.evidence.expansion_sum > 0.0 && s.evidence.expansion_sum <= 0.08 + 1e-12);
    }

    #[test]
    fn empty_log_yields_nothing() {
        let log = log_of(Vec::new());
        for kind in PatternKind::ALL {
            assert!(run(&log, kind, &DetectorConfig::default(), None).is_empty());
        }
    }

    fn copyedit_session(start_ms: u64, end_ms: u64) -> SessionLog {
        let text = words(600);
        let mut actions = vec![(0, ins(0, &text)), (1000, cur(0)), (1500, cur(0))];
        let mut t = start_ms;
        for k in 0..20 {
            let p = 1 + k * 7;
            let c = &text[p..p + 1];
            actions.push((t, cur(p)));
            actions.push((t + 3000, del(p, c)));
            actions.push((t + 6000, ins(p, &c.to_ascii_uppercase())));
            t += 18_000;
        }
        actions.push((t, cur(0)));
        actions.push((end_ms, cur(0)));
        log_of(actions)
    }

    #[test]
    fn copyediting_premature_and_late() {
        let early = copyedit_session(120_000, 1_800_000);
        let spans = run(
            &early,
            PatternKind::PrematureProlongedCopyediting,
            &DetectorConfig::default(),
            None,
        );
        assert_eq!(spans.len(), 1);
        assert_eq!(spans[0].evidence.delta_chars, 40);
        assert!(spans[0].evidence.expansion_sum < 0.02);
        assert!(spans[0].evidence.premature);
        assert_eq!(spans[0].t_end_ms - spans[0].t_start_ms, 19 * 18_000 + 3000);

        let late = copyedit_session(1_500_000, 1_900_000);
        let spans = run(
            &late,
            PatternKind::PrematureProlongedCopyediting,
            &DetectorConfig::default(),
            None,
        );
        assert_eq!(spans.len(), 1);
        assert!(!spans[0].evidence.premature);
    }

    #[test]
    fn short_quick_run_is_not_prolonged() {
        let text = words(300);
        let log = log_of(vec![
            (0, ins(0, &text)),
            (100, cur(0)),
            (200, cur(5)),
            (10_000, del(5, &text[5..6])),
            (12_000, ins(5, "X")),
            (15_000, del(6, &text[6..7])),
            (15_100, cur(0)),
            (15_200, cur(0)),
        ]);
        let cfg = DetectorConfig {
            min_run_events: 10,
            min_run_duration_ms: 120_000,
            ..Default::default()
        };
        assert!(run(&log, PatternKind::PrematureProlongedCopyediting, &cfg, None).is_empty());
    }

    const CLIMATE_ESSAY: &str =
        "Carbon emissions keep warming the ocean. Glaciers retreat as drought spreads. ";
    const CITY: &str = "Zoning reform lets dense transit corridors replace sprawl.";

    fn shift_session(pos: usize, text: &str, accepted: bool) -> SessionLog {
        let n = CLIMATE_ESSAY.len();
        let mut actions = vec![(0, ins(0, CLIMATE_ESSAY)), (1000, cur(n)), (2000, cur(pos))];
        if accepted {
            actions.push((
                3000,
                EventAction::SuggestionOpen {
                    suggestions: vec![text.into()],
                },
            ));
            actions.push((3500, EventAction::SuggestionSelect { index: 0 }));
        }
        actions.push((4000, ins(pos, text)));
        actions.push((9000, cur(pos)));
        log_of(actions)
    }

    #[test]
    fn topic_shift_at_paragraph_start() {
        let cfg = DetectorConfig {
            minimal_delta_chars: 200,
            substantial_expansion: 0.4,
            ..Default::default()
        };
        let text = format!("\n{CITY}");
        assert_eq!(text.len(), 59);
        let log = shift_session(CLIMATE_ESSAY.len(), &text, false);
        let spans = run(&log, PatternKind::WriterInitiatedTopicShift, &cfg, None);
        assert_eq!(spans.len(), 1);
        assert!(spans[0].evidence.starts_at_boundary);
        assert!(spans[0].evidence.expansion_sum >= 0.5);

        let mid = shift_session(10, &format!("{CITY} "), false);
        assert!(run(&mid, PatternKind::WriterInitiatedTopicShift, &cfg, None).is_empty());

        let ai = shift_session(CLIMATE_ESSAY.len(), &text, true);
        assert!(run(&ai, PatternKind::WriterInitiatedTopicShift, &cfg, None).is_empty());
        let lenient = DetectorConfig {
            topic_shift_requires_writer_source: false,
            ..cfg
        };
        assert_eq!(
            run(&ai, PatternKind::WriterInitiatedTopicShift, &lenient, None).len(),
            1
        );
    }

    #[test]
    fn opening_paragraph_is_not_a_shift() {
        let log = log_of(vec![
            (0, ins(0, "Carbon warms. ")),
            (500, ins(14, CITY)),
            (900, cur(0)),
        ]);
        let cfg = DetectorConfig {
            substantial_expansion: 0.4,
            ..Default::default()
        };
        assert!(run(&log, PatternKind::WriterInitiatedTopicShift, &cfg, None).is_empty());
    }

    #[test]
    fn two_cursor_moves_split_runs() {
        let text = words(300);
        let mut actions = vec![(0, ins(0, &text)), (100, cur(0)), (200, cur(0))];
        let mut t = 1000;
        for k in 0..8 {
            actions.push((t, del(k, &text[k..k + 1])));
            actions.push((t + 100, ins(k, &text[k..k + 1])));
            actions.push((t + 200, cur(k)));
            if k == 2 {
                actions.push((t + 300, cur(k)));
            }
            t += 1000;
        }
        let log = log_of(actions);
        let cfg = DetectorConfig {
            min_run_events: 7,
            ..Default::default()
        };
        let spans = run(&log, PatternKind::PrematureProlongedCopyediting, &cfg, None);
        assert_eq!(spans.len(), 1);
        assert_eq!(spans[0].event_range.start, 3 + 3 * 3 + 1);
        let joined = DetectorConfig {
            min_run_events: 16,
            ..cfg
        };
        assert!(run(
            &log,
            PatternKind::PrematureProlongedCopyediting,
            &joined,
            None
        )
        .is_empty());
    }

    #[test]
    fn invalid_config_rejected() {
        let log = log_of(Vec::new());
        let snaps = reconstruct_snapshots(&log).unwrap();
        let series = expansion_series(
            "t",
            &log,
            &snaps,
            &HashEmbedder::default(),
            Execution::Sequential,
        )
        .unwrap();
        let input = DetectionInput::new(&log, &snaps, &series, &[]).unwrap();
        let cfg = DetectorConfig {
            significant_expansion: f64::NAN,
            ..Default::default()
        };
        assert!(matches!(
            detect_all(&input, &cfg),
            Err(DetectError::ConfigInvalid(_))
        ));
    }
}
