//! End-to-end analysis of one session or a batch: snapshots, expansion
//! series, detectors and classification, plus the corpus-level summary and
//! span scoring against simulator truth.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classifier::{
    attribute_expansion, classify_session, Classification, ClassifierThresholds, ClassifyError,
    IdeationProfile, SessionClass,
};
use crate::detectors::{
    detect_all, DetectError, DetectionInput, DetectionReport, DetectorConfig, InteractionSpan,
    PatternKind,
};
use crate::embeddings::Embedder;
use crate::metrics::{expansion_series, mean_cumulative_curve, ExpansionSeries, MetricsError};
use crate::par::{self, Execution};
use crate::session_log::{
    attribute_authorship, insert_provenance, reconstruct_snapshots, LogError, SessionLog,
};

/// Points on the normalized time axis of each class curve.
pub const CURVE_POINTS: usize = 21;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Log(#[from] LogError),

    #[error(transparent)]
    Metrics(#[from] MetricsError),

    #[error(transparent)]
    Detect(#[from] DetectError),

    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisConfig {
    pub detectors: DetectorConfig,
    pub classifier: ClassifierThresholds,
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<(), PipelineError> {
        self.detectors.validate()?;
        self.classifier.validate()?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionAnalysis {
    pub session_id: String,
    pub snapshot_count: usize,
    pub series: ExpansionSeries,
    pub spans: Vec<InteractionSpan>,
    pub classification: Classification,
}

/// Per-session JSON report. The effective configuration is echoed so every
/// number can be traced back to its thresholds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionReport {
    pub session_id: String,
    pub class: SessionClass,
    pub profile: IdeationProfile,
    pub snapshots: usize,
    pub final_cumulative_expansion: f64,
    pub detection: DetectionReport,
    pub classifier: ClassifierThresholds,
    pub embeddings: String,
}

impl SessionAnalysis {
    pub fn report(&self, config: &AnalysisConfig, embeddings: &str) -> SessionReport {
        SessionReport {
            session_id: self.session_id.clone(),
            class: self.classification.class,
            profile: self.classification.profile,
            snapshots: self.snapshot_count,
            final_cumulative_expansion: self.series.final_cumulative(),
            detection: DetectionReport::new(&self.session_id, config.detectors, &self.spans),
            classifier: config.classifier,
            embeddings: embeddings.to_string(),
        }
    }
}

/// Runs the whole pipeline on one log. `exec` controls the parallelism of
/// snapshot embedding inside the session.
pub fn analyze_session(
    log: &SessionLog,
    embedder: &dyn Embedder,
    config: &AnalysisConfig,
    exec: Execution,
) -> Result<SessionAnalysis, PipelineError> {
    config.validate()?;
    let snapshots = reconstruct_snapshots(log)?;
    let series = expansion_series(&log.session_id, log, &snapshots, embedder, exec)?;
    let provenance = insert_provenance(log);
    let input = DetectionInput::new(log, &snapshots, &series, &provenance)?;
    let spans = detect_all(&input, &config.detectors)?;
    let authorship = attribute_authorship(log)?;
    let transitions = attribute_expansion(&series, log, &provenance);
    let profile = IdeationProfile::from_transitions(&transitions, &authorship);
    let class = classify_session(&profile, &config.classifier)?;
    Ok(SessionAnalysis {
        session_id: log.session_id.clone(),
        snapshot_count: snapshots.len(),
        series,
        spans,
        classification: Classification { class, profile },
    })
}

/// Analyzes sessions concurrently; results keep input order. Each session
/// is processed sequentially inside its own task.
pub fn analyze_batch(
    logs: &[SessionLog],
    embedder: &dyn Embedder,
    config: &AnalysisConfig,
    exec: Execution,
) -> Vec<Result<SessionAnalysis, PipelineError>> {
    par::map(exec, logs, |log| {
        analyze_session(log, embedder, config, Execution::Sequential)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassCurve {
    pub class: SessionClass,
    pub sessions: usize,
    pub mean_final_cumulative: f64,
    /// Mean cumulative expansion at evenly spaced fractions of session time.
    pub mean_cumulative: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KindCount {
    pub kind: PatternKind,
    pub spans: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub sessions: usize,
    pub curves: Vec<ClassCurve>,
    pub span_counts: Vec<KindCount>,
    pub failed: Vec<String>,
}

/// Groups sessions by predicted class. Classes with no sessions are kept
/// with empty curves so the layout is stable.
pub fn corpus_summary(analyses: &[SessionAnalysis], failed: Vec<String>) -> CorpusSummary {
    let curves = SessionClass::ALL
        .into_iter()
        .map(|class| {
            let members: Vec<&ExpansionSeries> = analyses
                .iter()
                .filter(|a| a.classification.class == class)
                .map(|a| &a.series)
                .collect();
            let mean_final_cumulative = if members.is_empty() {
                0.0
            } else {
                members.iter().map(|s| s.final_cumulative()).sum::<f64>() / members.len() as f64
            };
            ClassCurve {
                class,
                sessions: members.len(),
                mean_final_cumulative,
                mean_cumulative: mean_cumulative_curve(&members, CURVE_POINTS),
            }
        })
        .collect();
    let span_counts = PatternKind::ALL
        .into_iter()
        .map(|kind| KindCount {
            kind,
            spans: analyses
                .iter()
                .map(|a| a.spans.iter().filter(|s| s.kind == kind).count())
                .sum(),
        })
        .collect();
    CorpusSummary {
        sessions: analyses.len(),
        curves,
        span_counts,
        failed,
    }
}

/// Span-level agreement between detected and true spans of one kind.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SpanScore {
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
}

impl SpanScore {
    pub fn add(&mut self, other: SpanScore) {
        self.true_positives += other.true_positives;
        self.false_positives += other.false_positives;
        self.false_negatives += other.false_negatives;
    }

    pub fn precision(&self) -> f64 {
        ratio(
            self.true_positives,
            self.true_positives + self.false_positives,
        )
    }

    pub fn recall(&self) -> f64 {
        ratio(
            self.true_positives,
            self.true_positives + self.false_negatives,
        )
    }

    /// 1.0 when there was nothing to find and nothing was reported.
    pub fn f1(&self) -> f64 {
        let denom = 2 * self.true_positives + self.false_positives + self.false_negatives;
        if denom == 0 {
            1.0
        } else {
            2.0 * self.true_positives as f64 / denom as f64
        }
    }
}

fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        1.0
    } else {
        a as f64 / b as f64
    }
}

fn jaccard(a: &InteractionSpan, b: &InteractionSpan) -> f64 {
    let (ra, rb) = (a.event_range, b.event_range);
    let inter = ra.end.min(rb.end).saturating_sub(ra.start.max(rb.start));
    let union = ra.end.max(rb.end) - ra.start.min(rb.start);
    if union == 0 {
        0.0
    } else {
        inter as f64 / union as f64
    }
}

/// One-to-one matching of `kind` spans: a detected span matches an unused
/// true span when their event ranges have Jaccard overlap of at least 0.5.
pub fn score_spans(
    kind: PatternKind,
    truth: &[InteractionSpan],
    detected: &[InteractionSpan],
) -> SpanScore {
    let truth: Vec<&InteractionSpan> = truth.iter().filter(|s| s.kind == kind).collect();
    let mut used = vec![false; truth.len()];
    let mut score = SpanScore::default();
    for d in detected.iter().filter(|s| s.kind == kind) {
        let hit = (0..truth.len())
            .filter(|&i| !used[i])
            .map(|i| (i, jaccard(d, truth[i])))
            .filter(|&(_, j)| j >= 0.5)
            .max_by(|x, y| x.1.total_cmp(&y.1));
        match hit {
            Some((i, _)) => {
                used[i] = true;
                score.true_positives += 1;
            }
            None => score.false_positives += 1,
        }
    }
    score.false_negatives = used.iter().filter(|u| !**u).count();
    score
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detectors::Evidence;
    use crate::session_log::EventRange;

    fn span(kind: PatternKind, start: usize, end: usize) -> InteractionSpan {
        InteractionSpan {
            kind,
            event_range: EventRange::new(start, end),
            first_seq: start as u64,
            last_seq: end as u64 - 1,
            t_start_ms: 0,
            t_end_ms: 0,
            evidence: Evidence {
                chars_generated: 0,
                delta_chars: 0,
                expansion_sum: 0.0,
                ai_char_fraction: 0.0,
                starts_at_boundary: false,
                premature: false,
            },
        }
    }

    #[test]
    fn span_scoring() {
        let k = PatternKind::MindlessEchoing;
        let truth = [span(k, 10, 20), span(k, 40, 50)];
        let detected = [
            span(k, 11, 20),
            span(k, 60, 70),
            span(PatternKind::WriterInitiatedTopicShift, 40, 50),
        ];
        let s = score_spans(k, &truth, &detected);
        assert_eq!(
            (s.true_positives, s.false_positives, s.false_negatives),
            (1, 1, 1)
        );
        assert!((s.f1() - 0.5).abs() < 1e-12);
        assert_eq!(score_spans(k, &[], &[]).f1(), 1.0);
        // Two detections over one truth span count once.
        let s = score_spans(k, &truth[..1], &[span(k, 10, 20), span(k, 12, 20)]);
        assert_eq!((s.true_positives, s.false_positives), (1, 1));
    }

    #[test]
    fn invalid_config_is_rejected_before_work() {
        let cfg = AnalysisConfig {
            classifier: ClassifierThresholds {
                lo: 0.9,
                hi: 0.1,
                min_alternations: 4,
            },
            ..Default::default()
        };
        let log = SessionLog::new("s", "p", "t", crate::session_log::AssistantMode::None);
        let err = analyze_session(
            &log,
            &crate::embeddings::HashEmbedder::default(),
            &cfg,
            Execution::Sequential,
        );
        assert!(matches!(err, Err(PipelineError::Classify(_))));
    }
}
