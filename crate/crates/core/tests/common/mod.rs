//! Independent reference implementations used as test oracles. Nothing here
//! calls into the library's tokenizer, embedding, replay or detector code.

#![allow(dead_code)]

use std::collections::HashMap;

use cowrite_core::detectors::{DetectorConfig, PatternKind};
use cowrite_core::metrics::ExpansionSeries;
use cowrite_core::session_log::{EventAction, EventRange, SessionLog};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn words(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("w{i}x")).collect()
}

/// A word-vector file in the plain text layout, with a `count dim` header.
pub fn random_vectors_text(seed: u64, vocab: &[String], dim: usize) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = format!("{} {}\n", vocab.len(), dim);
    for w in vocab {
        out.push_str(w);
        for _ in 0..dim {
            let x: f32 = rng.gen_range(-1.0..1.0);
            out.push_str(&format!(" {x}"));
        }
        out.push('\n');
    }
    out
}

pub struct OracleVectors {
    pub table: HashMap<String, Vec<f64>>,
    pub dim: usize,
}

impl OracleVectors {
    pub fn parse(text: &str) -> Self {
        let mut lines = text.lines();
        let header: Vec<usize> = lines
            .next()
            .unwrap()
            .split(' ')
            .map(|x| x.parse().unwrap())
            .collect();
        let mut table = HashMap::new();
        for line in lines {
            let mut parts = line.split(' ');
            let word = parts.next().unwrap().to_lowercase();
            // Stored at single precision, widened for arithmetic.
            let v: Vec<f64> = parts
                .map(|x| f64::from(x.parse::<f32>().unwrap()))
                .collect();
            table.entry(word).or_insert(v);
        }
        OracleVectors {
            table,
            dim: header[1],
        }
    }

    pub fn mean(&self, text: &str) -> Vec<f64> {
        let mut sum = vec![0.0; self.dim];
        let mut n = 0.0;
        for tok in oracle_tokens(text) {
            if let Some(v) = self.table.get(&tok) {
                for k in 0..self.dim {
                    sum[k] += v[k];
                }
                n += 1.0;
            }
        }
        if n > 0.0 {
            for s in &mut sum {
                *s /= n;
            }
        }
        sum
    }
}

pub fn oracle_tokens(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(|t| t.to_lowercase())
        .collect()
}

pub fn oracle_cosine(u: &[f64], v: &[f64]) -> f64 {
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let nu = u.iter().map(|a| a * a).sum::<f64>().sqrt();
    let nv = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    if nu == 0.0 || nv == 0.0 {
        return 0.0;
    }
    (dot / (nu * nv)).clamp(0.0, 1.0)
}

/// Sentence count for text whose only terminal punctuation is `.` followed
/// by whitespace or the end.
pub fn oracle_sentences(text: &str) -> usize {
    text.split('.').filter(|p| !p.trim().is_empty()).count()
}

pub fn oracle_expansion(vectors: &OracleVectors, prev: &str, next: &str) -> f64 {
    if prev == next {
        return 0.0;
    }
    let sim = oracle_cosine(&vectors.mean(prev), &vectors.mean(next));
    let dn = (oracle_sentences(prev) as f64 - oracle_sentences(next) as f64).abs();
    1.0 - sim / (dn + 1.0)
}

/// Random `.`-terminated text of 0..=6 sentences over `vocab`.
pub fn random_text(rng: &mut ChaCha8Rng, vocab: &[String]) -> String {
    let n = rng.gen_range(0..=6);
    (0..n)
        .map(|_| {
            let k = rng.gen_range(2..=9);
            let ws: Vec<&str> = (0..k)
                .map(|_| vocab[rng.gen_range(0..vocab.len())].as_str())
                .collect();
            format!("{}.", ws.join(" "))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn oracle_boundary(doc: &[char], pos: usize) -> bool {
    if pos == 0 {
        return true;
    }
    if doc[pos - 1] == '\n' {
        return true;
    }
    if matches!(doc[pos - 1], '.' | '!' | '?') {
        return pos == doc.len() || doc[pos].is_whitespace();
    }
    if !doc[pos - 1].is_whitespace() {
        return false;
    }
    let mut i = pos - 1;
    while i > 0 && doc[i - 1].is_whitespace() {
        if doc[i - 1] == '\n' {
            return true;
        }
        i -= 1;
    }
    i > 0 && matches!(doc[i - 1], '.' | '!' | '?')
}

struct Edit {
    event: usize,
    inserted: usize,
    deleted: usize,
    ai: usize,
    opens_topic: bool,
    transition: usize,
    t: u64,
}

/// Exhaustive scan: every contiguous run of edits is tested against the
/// pattern conditions and the qualifying runs not contained in another
/// qualifying run are returned as event ranges.
pub fn oracle_spans(
    log: &SessionLog,
    series: &ExpansionSeries,
    cfg: &DetectorConfig,
    kind: PatternKind,
) -> Vec<EventRange> {
    let (events, qualifying) = qualifying_runs(log, series, cfg, kind);
    qualifying
        .iter()
        .filter(|&&(a, b)| {
            !qualifying
                .iter()
                .any(|&(c, d)| c <= a && b <= d && (c, d) != (a, b))
        })
        .map(|&(a, b)| EventRange::new(events[a], events[b] + 1))
        .collect()
}

/// Left-to-right partition from the exhaustive scan: the longest qualifying
/// run starting at the earliest possible edit, then resume after it.
pub fn oracle_greedy_spans(
    log: &SessionLog,
    series: &ExpansionSeries,
    cfg: &DetectorConfig,
    kind: PatternKind,
) -> Vec<EventRange> {
    let (events, qualifying) = qualifying_runs(log, series, cfg, kind);
    let mut out = Vec::new();
    let mut a = 0;
    while a < events.len() {
        match qualifying.iter().filter(|r| r.0 == a).map(|r| r.1).max() {
            Some(b) => {
                out.push(EventRange::new(events[a], events[b] + 1));
                a = b + 1;
            }
            None => a += 1,
        }
    }
    out
}

/// Event index of every edit, and all qualifying `(first, last)` edit runs.
fn qualifying_runs(
    log: &SessionLog,
    series: &ExpansionSeries,
    cfg: &DetectorConfig,
    kind: PatternKind,
) -> (Vec<usize>, Vec<(usize, usize)>) {
    // Transition that owns each event, and the document text at its start.
    let n = log.events.len();
    let mut owner = vec![0usize; n];
    let mut range_start = HashMap::new();
    for p in &series.points {
        for i in p.event_range.start..p.event_range.end {
            owner[i] = p.index;
        }
        range_start.insert(p.index, p.event_range.start);
    }
    let expansion: HashMap<usize, f64> = series
        .points
        .iter()
        .map(|p| (p.index, p.expansion))
        .collect();

    let mut doc: Vec<char> = Vec::new();
    let mut text_at_event: Vec<bool> = Vec::with_capacity(n);
    let mut edits = Vec::new();
    let mut breaks = Vec::new();
    let mut moves = 0;
    let mut offered: Vec<String> = Vec::new();
    let mut selected: Option<String> = None;
    for (i, e) in log.events.iter().enumerate() {
        text_at_event.push(doc.iter().any(|c| !c.is_whitespace()));
        let just = selected.take();
        match &e.action {
            EventAction::Insert { pos, text } => {
                let prior = range_start
                    .get(&owner[i])
                    .is_some_and(|&s| text_at_event[s]);
                let has_before = doc[..*pos].iter().any(|c| !c.is_whitespace());
                let len = text.chars().count();
                edits.push(Edit {
                    event: i,
                    inserted: len,
                    deleted: 0,
                    ai: if just.as_deref() == Some(text.as_str()) {
                        len
                    } else {
                        0
                    },
                    opens_topic: oracle_boundary(&doc, *pos) && has_before && prior,
                    transition: owner[i],
                    t: e.timestamp_ms,
                });
                breaks.push(moves >= 2);
                moves = 0;
                let chars: Vec<char> = text.chars().collect();
                doc.splice(*pos..*pos, chars);
            }
            EventAction::Delete { pos, text } => {
                let len = text.chars().count();
                edits.push(Edit {
                    event: i,
                    inserted: 0,
                    deleted: len,
                    ai: 0,
                    opens_topic: false,
                    transition: owner[i],
                    t: e.timestamp_ms,
                });
                breaks.push(moves >= 2);
                moves = 0;
                doc.drain(*pos..*pos + len);
            }
            EventAction::CursorMove { .. } => moves += 1,
            EventAction::SuggestionOpen { suggestions } => offered = suggestions.clone(),
            EventAction::SuggestionSelect { index } => selected = offered.get(*index).cloned(),
            EventAction::SuggestionDismiss => {}
        }
    }
    let mut qualifying: Vec<(usize, usize)> = Vec::new();
    for a in 0..edits.len() {
        for b in a..edits.len() {
            if b > a && breaks[b] {
                break;
            }
            let run = &edits[a..=b];
            let inserted: usize = run.iter().map(|e| e.inserted).sum();
            let deleted: usize = run.iter().map(|e| e.deleted).sum();
            let ai: usize = run.iter().map(|e| e.ai).sum();
            let exp: f64 = (run[0].transition..=run[run.len() - 1].transition)
                .map(|t| expansion.get(&t).copied().unwrap_or(0.0))
                .sum();
            let delta = inserted + deleted;
            let ai_frac = if inserted == 0 {
                0.0
            } else {
                ai as f64 / inserted as f64
            };
            let ok = match kind {
                PatternKind::MindlessEchoing => {
                    inserted >= cfg.large_text_chars
                        && exp < cfg.significant_expansion
                        && (cfg.echo_ai_fraction <= 0.0 || ai_frac >= cfg.echo_ai_fraction)
                }
                PatternKind::PrematureProlongedCopyediting => {
                    (run.len() >= cfg.min_run_events
                        || run[run.len() - 1].t - run[0].t >= cfg.min_run_duration_ms)
                        && delta < cfg.minimal_delta_chars
                        && exp < cfg.significant_expansion
                }
                PatternKind::WriterInitiatedTopicShift => {
                    run.iter()
                        .find(|e| e.inserted > 0)
                        .is_some_and(|e| e.opens_topic)
                        && delta <= cfg.minimal_delta_chars
                        && exp >= cfg.substantial_expansion
                        && (!cfg.topic_shift_requires_writer_source || ai_frac < 0.5)
                }
            };
            if ok {
                qualifying.push((a, b));
            }
        }
    }
    (edits.iter().map(|e| e.event).collect(), qualifying)
}
