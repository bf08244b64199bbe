//! Session-level leadership classification from the provenance of semantic
//! expansion.
//!
//! Every snapshot transition is attributed to the writer or the AI by the
//! majority source of the characters inserted inside it. Expansion shares
//! and the number of source alternations then decide between human-led,
//! AI-led and co-ideation sessions.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metrics::ExpansionSeries;
use crate::session_log::{AuthorshipMap, Origin, SessionLog};

#[derive(Debug, Error, PartialEq)]
pub enum ClassifyError {
    #[error("classifier thresholds must satisfy 0 <= lo < hi <= 1 (got lo={lo}, hi={hi})")]
    ThresholdInvalid { lo: f64, hi: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Writer,
    Ai,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SessionClass {
    HumanLed,
    AiLed,
    CoIdeation,
}

impl SessionClass {
    pub const ALL: [SessionClass; 3] = [
        SessionClass::HumanLed,
        SessionClass::AiLed,
        SessionClass::CoIdeation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SessionClass::HumanLed => "human_led",
            SessionClass::AiLed => "ai_led",
            SessionClass::CoIdeation => "co_ideation",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttributedTransition {
    /// Index of the later snapshot.
    pub index: usize,
    pub expansion: f64,
    pub inserted_chars: usize,
    pub source: Source,
}

/// Source of every transition in `series`. `provenance` is the per-event
/// output of [`crate::session_log::insert_provenance`] for `log`.
pub fn attribute_expansion(
    series: &ExpansionSeries,
    log: &SessionLog,
    provenance: &[Option<Origin>],
) -> Vec<AttributedTransition> {
    let mut previous = Source::Writer;
    series
        .points
        .iter()
        .map(|p| {
            let (mut total, mut ai) = (0usize, 0usize);
            for i in p.event_range.start..p.event_range.end.min(log.events.len()) {
                let n = log.events[i].inserted_chars();
                total += n;
                if matches!(provenance.get(i), Some(Some(o)) if o.is_ai()) {
                    ai += n;
                }
            }
            let source = if total == 0 {
                previous
            } else if 2 * ai > total {
                Source::Ai
            } else {
                Source::Writer
            };
            previous = source;
            AttributedTransition {
                index: p.index,
                expansion: p.expansion,
                inserted_chars: total,
                source,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdeationProfile {
    pub writer_expansion_share: f64,
    pub ai_expansion_share: f64,
    pub alternations: usize,
    pub total_expansion: f64,
}

impl IdeationProfile {
    /// With no expansion at all, the shares fall back to the AI share of
    /// the final document's characters.
    pub fn from_transitions(
        transitions: &[AttributedTransition],
        authorship: &AuthorshipMap,
    ) -> Self {
        let total = transitions.iter().fold(0.0, |acc, t| acc + t.expansion);
        let ai = transitions
            .iter()
            .filter(|t| t.source == Source::Ai)
            .fold(0.0, |acc, t| acc + t.expansion);
        let alternations = transitions
            .windows(2)
            .filter(|w| w[0].source != w[1].source)
            .count();
        let ai_share = if total > 0.0 {
            ai / total
        } else {
            authorship.ai_char_share()
        };
        Self {
            writer_expansion_share: 1.0 - ai_share,
            ai_expansion_share: ai_share,
            alternations,
            total_expansion: total,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifierThresholds {
    pub lo: f64,
    pub hi: f64,
    pub min_alternations: usize,
}

impl Default for ClassifierThresholds {
    fn default() -> Self {
        Self {
            lo: 0.25,
            hi: 0.75,
            min_alternations: 4,
        }
    }
}

impl ClassifierThresholds {
    pub fn validate(&self) -> Result<(), ClassifyError> {
        if 0.0 <= self.lo && self.lo < self.hi && self.hi <= 1.0 {
            Ok(())
        } else {
            Err(ClassifyError::ThresholdInvalid {
                lo: self.lo,
                hi: self.hi,
            })
        }
    }
}

/// Shares at or beyond a threshold decide outright. In between, enough
/// alternations make it co-ideation; otherwise the nearer threshold wins,
/// with ties going to human-led.
pub fn classify_session(
    profile: &IdeationProfile,
    thresholds: &ClassifierThresholds,
) -> Result<SessionClass, ClassifyError> {
    thresholds.validate()?;
    let ai = profile.ai_expansion_share;
    Ok(if ai >= thresholds.hi {
        SessionClass::AiLed
    } else if ai <= thresholds.lo {
        SessionClass::HumanLed
    } else if profile.alternations >= thresholds.min_alternations {
        SessionClass::CoIdeation
    } else if ai - thresholds.lo <= thresholds.hi - ai {
        SessionClass::HumanLed
    } else {
        SessionClass::AiLed
    })
}

/// Classification block appended to a session report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub class: SessionClass,
    pub profile: IdeationProfile,
}
