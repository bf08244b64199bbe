//! Labeled synthetic sessions from scripted writer personas.
//!
//! Text is bag-of-words prose drawn from topic word banks. Every persona
//! works in episodes that end with two cursor moves, so episodes never share
//! a detector run. Ground-truth pattern spans are re-checked against the
//! detector conditions (default config, default hash embedder) before a
//! session is returned.

mod keystroke;
mod persona;
mod session;
mod vocab;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classifier::{SessionClass, Source};
use crate::detectors::{DetectError, InteractionSpan, PatternKind};
use crate::metrics::MetricsError;
use crate::par::{self, Execution};
use crate::session_log::{EventRange, LogError, SessionLog};

pub use keystroke::keystroke_log;
pub use persona::{PersonaKind, WriterPersona};
pub use session::simulate_session;
pub use vocab::{default_topic_banks, TopicBank, FUNCTION_WORDS};

#[derive(Debug, Error)]
pub enum SimulationError {
    #[error("invalid persona parameters: {0}")]
    InvalidPersonaParams(String),

    #[error("need at least 2 topic banks, got {0}")]
    TooFewTopicBanks(usize),

    #[error("duration must be positive")]
    ZeroDuration,

    #[error("{session_id}: truth span {kind:?} over events {}..{} fails its own detection conditions", range.start, range.end)]
    InconsistentTruth {
        session_id: String,
        kind: PatternKind,
        range: EventRange,
    },

    #[error(transparent)]
    Log(#[from] LogError),

    #[error(transparent)]
    Metrics(#[from] MetricsError),

    #[error(transparent)]
    Detect(#[from] DetectError),
}

/// Who typed one insert event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsertTag {
    pub seq: u64,
    pub source: Source,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSession {
    pub log: SessionLog,
    pub truth_spans: Vec<InteractionSpan>,
    pub truth_class: SessionClass,
    pub truth_authorship: Vec<InsertTag>,
}

/// Sidecar written next to a simulated log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruthFile {
    pub session_id: String,
    pub class: SessionClass,
    pub spans: Vec<InteractionSpan>,
    pub authorship: Vec<InsertTag>,
}

impl LabeledSession {
    pub fn truth_file(&self) -> TruthFile {
        TruthFile {
            session_id: self.log.session_id.clone(),
            class: self.truth_class,
            spans: self.truth_spans.clone(),
            authorship: self.truth_authorship.clone(),
        }
    }

    pub fn truth_spans_of(&self, kind: PatternKind) -> impl Iterator<Item = &InteractionSpan> {
        self.truth_spans.iter().filter(move |s| s.kind == kind)
    }

    /// Share of surviving document characters that were inserted by accepted
    /// suggestions, tracked independently of the authorship replay.
    pub fn truth_ai_char_share(&self) -> f64 {
        use crate::session_log::EventAction;
        let ai_seqs: std::collections::HashSet<u64> = self
            .truth_authorship
            .iter()
            .filter(|t| t.source == Source::Ai)
            .map(|t| t.seq)
            .collect();
        let mut owner: Vec<bool> = Vec::new();
        for e in &self.log.events {
            match &e.action {
                EventAction::Insert { pos, text } => {
                    let n = text.chars().count();
                    let ai = ai_seqs.contains(&e.seq);
                    owner.splice(*pos..*pos, std::iter::repeat(ai).take(n));
                }
                EventAction::Delete { pos, text } => {
                    owner.drain(*pos..*pos + text.chars().count());
                }
                _ => {}
            }
        }
        if owner.is_empty() {
            0.0
        } else {
            owner.iter().filter(|&&ai| ai).count() as f64 / owner.len() as f64
        }
    }
}

/// Session length for a corpus seed, uniform in 30 to 60 minutes.
pub fn default_duration_ms(seed: u64) -> u64 {
    ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_d0_7a71).gen_range(30 * 60_000..=60 * 60_000)
}

/// Sessions for each `(persona, count)` entry in order; the `i`-th session
/// overall uses seed `base_seed + i`.
pub fn generate_corpus(
    spec: &[(WriterPersona, usize)],
    base_seed: u64,
    exec: Execution,
) -> Result<Vec<LabeledSession>, SimulationError> {
    let banks = default_topic_banks();
    let jobs: Vec<(WriterPersona, u64)> = spec
        .iter()
        .flat_map(|(p, n)| std::iter::repeat(*p).take(*n))
        .enumerate()
        .map(|(i, p)| (p, base_seed + i as u64))
        .collect();
    par::map(exec, &jobs, |(persona, seed)| {
        simulate_session(persona, *seed, default_duration_ms(*seed), &banks)
    })
    .into_iter()
    .collect()
}

/// Parses `"persona:count,..."` with default parameters for each persona.
pub fn parse_corpus_spec(spec: &str) -> Result<Vec<(WriterPersona, usize)>, String> {
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, count) = part
            .split_once(':')
            .ok_or_else(|| format!("`{part}` is not persona:count"))?;
        let kind = PersonaKind::parse(name.trim())
            .ok_or_else(|| format!("unknown persona `{}`", name.trim()))?;
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| format!("bad count in `{part}`"))?;
        if count == 0 {
            return Err(format!("count must be positive in `{part}`"));
        }
        out.push((WriterPersona::default_for(kind), count));
    }
    if out.is_empty() {
        return Err("empty corpus spec".into());
    }
    Ok(out)
}
