use serde::{Deserialize, Serialize};

use super::{DetectorConfig, Evidence, InteractionSpan, PatternKind};

/// Serialized form of one span. Field order is the JSON key order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpanRecord {
    pub kind: PatternKind,
    pub first_seq: u64,
    pub last_seq: u64,
    pub t_start_ms: u64,
    pub t_end_ms: u64,
    pub evidence: Evidence,
    /// Another pattern kind was reported over an overlapping event range.
    pub overlaps_other_kind: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionReport {
    pub session_id: String,
    pub config: DetectorConfig,
    pub spans: Vec<SpanRecord>,
}

impl DetectionReport {
    pub fn new(session_id: &str, config: DetectorConfig, spans: &[InteractionSpan]) -> Self {
        let records = spans
            .iter()
            .map(|s| SpanRecord {
                kind: s.kind,
                first_seq: s.first_seq,
                last_seq: s.last_seq,
                t_start_ms: s.t_start_ms,
                t_end_ms: s.t_end_ms,
                evidence: s.evidence,
                overlaps_other_kind: spans
                    .iter()
                    .any(|o| o.kind != s.kind && o.event_range.overlaps(&s.event_range)),
            })
            .collect();
        Self {
            session_id: session_id.to_string(),
            config,
            spans: records,
        }
    }

    pub fn count(&self, kind: PatternKind) -> usize {
        self.spans.iter().filter(|s| s.kind == kind).count()
    }
}
