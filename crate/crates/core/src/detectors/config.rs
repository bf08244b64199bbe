use serde::{Deserialize, Serialize};

use super::DetectError;

/// Thresholds for the three interaction-pattern detectors.
///
/// What counts as "large", "significant" or "minimal" depends on topic,
/// task length and analysis goals; these defaults are calibrated on the
/// bundled simulator corpus and meant to be overridden.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DetectorConfig {
    /// Echoing: minimum gross characters inserted by a run.
    pub large_text_chars: usize,
    /// Echoing and copyediting: summed expansion must stay below this.
    pub significant_expansion: f64,
    /// Copyediting (strict upper bound) and topic shift (inclusive upper
    /// bound) on inserted plus deleted characters.
    pub minimal_delta_chars: usize,
    /// Copyediting: a run is prolonged with at least this many edits...
    pub min_run_events: usize,
    /// ...or lasting at least this long.
    pub min_run_duration_ms: u64,
    /// Copyediting runs starting before this fraction of the session are premature.
    pub early_phase_fraction: f64,
    /// Topic shift: summed expansion must reach this.
    pub substantial_expansion: f64,
    /// Echoing: minimum share of AI-sourced inserted characters; 0 disables.
    pub echo_ai_fraction: f64,
    /// Topic shift: require less than half of the run's inserted characters
    /// to come from accepted suggestions.
    pub topic_shift_requires_writer_source: bool,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        Self {
            large_text_chars: 400,
            significant_expansion: 0.3,
            minimal_delta_chars: 150,
            min_run_events: 15,
            min_run_duration_ms: 120_000,
            early_phase_fraction: 0.33,
            substantial_expansion: 0.72,
            echo_ai_fraction: 0.0,
            topic_shift_requires_writer_source: true,
        }
    }
}

impl DetectorConfig {
    pub fn validate(&self) -> Result<(), DetectError> {
        let invalid = |reason: &str| Err(DetectError::ConfigInvalid(reason.to_string()));
        let finite_non_negative = |x: f64| x.is_finite() && x >= 0.0;
        if !finite_non_negative(self.significant_expansion) {
            return invalid("significant_expansion must be a finite value >= 0");
        }
        if !finite_non_negative(self.substantial_expansion) {
            return invalid("substantial_expansion must be a finite value >= 0");
        }
        if self.significant_expansion > self.substantial_expansion {
            return invalid("significant_expansion must not exceed substantial_expansion");
        }
        if !(self.early_phase_fraction > 0.0 && self.early_phase_fraction <= 1.0) {
            return invalid("early_phase_fraction must lie in (0, 1]");
        }
        if !(0.0..=1.0).contains(&self.echo_ai_fraction) {
            return invalid("echo_ai_fraction must lie in [0, 1]");
        }
        Ok(())
    }
}
