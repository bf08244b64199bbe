//! Semantic expansion between consecutive snapshots, its cumulative series,
//! and textual-change magnitudes.
//!
//! For snapshots `S_{i-1}`, `S_i` with sentence counts `n_{i-1}`, `n_i`:
//!
//! ```text
//! expansion(i) = 1 - sim(S_i, S_{i-1}) / (|n_i - n_{i-1}| + 1)
//! ```
//!
//! `sim` is the clamped cosine of mean word embeddings, so every value lies
//! in `[0, 1]`. A transition out of an empty document has `sim = 0` and
//! therefore expansion 1. Identical texts always give exactly 0.

use std::io::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embeddings::{similarity, Embedder, EmbeddingError, EmbeddingVector};
use crate::par::{self, Execution};
use crate::session_log::{EventRange, SessionLog, Snapshot};

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("expansion series needs at least 2 snapshots, got {0}")]
    TooFewSnapshots(usize),

    #[error(transparent)]
    Embedding(#[from] EmbeddingError),

    #[error("csv export failed: {0}")]
    Csv(#[from] csv::Error),
}

/// Expansion of one snapshot transition `index - 1 -> index`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionPoint {
    pub index: usize,
    pub timestamp_ms: u64,
    pub expansion: f64,
    pub cumulative: f64,
    pub delta_sentences: usize,
    pub delta_chars: usize,
    /// Events folded into the later snapshot of the transition.
    pub event_range: EventRange,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionSeries {
    pub session_id: String,
    pub points: Vec<ExpansionPoint>,
}

impl ExpansionSeries {
    pub fn final_cumulative(&self) -> f64 {
        self.points.last().map_or(0.0, |p| p.cumulative)
    }

    pub fn total_expansion(&self) -> f64 {
        self.points.iter().map(|p| p.expansion).sum()
    }
}

/// The expansion formula given a similarity and the two sentence counts.
pub fn expansion_from_similarity(sim: f64, prev_sentences: usize, next_sentences: usize) -> f64 {
    let delta = prev_sentences.abs_diff(next_sentences) as f64;
    1.0 - sim / (delta + 1.0)
}

fn expansion_of(
    prev: &Snapshot,
    next: &Snapshot,
    prev_vec: &EmbeddingVector,
    next_vec: &EmbeddingVector,
) -> Result<f64, EmbeddingError> {
    if prev.text == next.text {
        return Ok(0.0);
    }
    let sim = similarity(next_vec, prev_vec)?;
    Ok(expansion_from_similarity(
        sim,
        prev.sentence_count,
        next.sentence_count,
    ))
}

/// Semantic expansion between two consecutive snapshots.
pub fn semantic_expansion(
    prev: &Snapshot,
    next: &Snapshot,
    embedder: &dyn Embedder,
) -> Result<f64, MetricsError> {
    if prev.text == next.text {
        return Ok(0.0);
    }
    let (a, b) = (embedder.embed(&prev.text), embedder.embed(&next.text));
    Ok(expansion_of(prev, next, &a, &b)?)
}

/// Inserted plus deleted characters over the text edits in `range`.
pub fn textual_delta(log: &SessionLog, range: EventRange) -> usize {
    log.events[range.start..range.end.min(log.events.len())]
        .iter()
        .map(|e| e.inserted_chars() + e.deleted_chars())
        .sum()
}

/// One point per consecutive snapshot pair with a running cumulative sum.
/// Snapshot embeddings are computed once each, in parallel when enabled.
pub fn expansion_series(
    session_id: &str,
    log: &SessionLog,
    snapshots: &[Snapshot],
    embedder: &dyn Embedder,
    exec: Execution,
) -> Result<ExpansionSeries, MetricsError> {
    if snapshots.len() < 2 {
        return Err(MetricsError::TooFewSnapshots(snapshots.len()));
    }
    let vectors = par::map(exec, snapshots, |s| embedder.embed(&s.text));
    let mut points = Vec::with_capacity(snapshots.len() - 1);
    let mut cumulative = 0.0;
    for i in 1..snapshots.len() {
        let (prev, next) = (&snapshots[i - 1], &snapshots[i]);
        let expansion = expansion_of(prev, next, &vectors[i - 1], &vectors[i])?;
        cumulative += expansion;
        points.push(ExpansionPoint {
            index: i,
            timestamp_ms: next.timestamp_ms,
            expansion,
            cumulative,
            delta_sentences: prev.sentence_count.abs_diff(next.sentence_count),
            delta_chars: textual_delta(log, next.event_range),
            event_range: next.event_range,
        });
    }
    Ok(ExpansionSeries {
        session_id: session_id.to_string(),
        points,
    })
}

pub const CSV_HEADER: [&str; 7] = [
    "session_id",
    "index",
    "t_ms",
    "expansion",
    "cumulative",
    "delta_sentences",
    "delta_chars",
];

/// Writes the series as CSV with a fixed header row.
pub fn write_series_csv<W: Write>(series: &ExpansionSeries, out: W) -> Result<(), MetricsError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for p in &series.points {
        w.write_record([
            series.session_id.clone(),
            p.index.to_string(),
            p.timestamp_ms.to_string(),
            p.expansion.to_string(),
            p.cumulative.to_string(),
            p.delta_sentences.to_string(),
            p.delta_chars.to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Mean cumulative curve over sessions, each resampled on `points` evenly
/// spaced fractions of its own duration (step interpolation).
pub fn mean_cumulative_curve(series: &[&ExpansionSeries], points: usize) -> Vec<f64> {
    if series.is_empty() || points == 0 {
        return Vec::new();
    }
    let mut acc = vec![0.0; points];
    for s in series {
        let end = s.points.last().map_or(0, |p| p.timestamp_ms).max(1) as f64;
        for (k, slot) in acc.iter_mut().enumerate() {
            let frac = if points == 1 {
                1.0
            } else {
                k as f64 / (points - 1) as f64
            };
            let t = frac * end;
            let upto = s.points.partition_point(|p| p.timestamp_ms as f64 <= t);
            *slot += if upto == 0 {
                0.0
            } else {
                s.points[upto - 1].cumulative
            };
        }
    }
    let n = series.len() as f64;
    acc.into_iter().map(|v| v / n).collect()
}
