use serde::{Deserialize, Serialize};

use super::SimulationError;
use crate::classifier::SessionClass;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PersonaKind {
    CoIdeator,
    IndependentWriter,
    Echoer,
    Copyeditor,
    Initiator,
}

impl PersonaKind {
    pub const ALL: [PersonaKind; 5] = [
        PersonaKind::CoIdeator,
        PersonaKind::IndependentWriter,
        PersonaKind::Echoer,
        PersonaKind::Copyeditor,
        PersonaKind::Initiator,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PersonaKind::CoIdeator => "co_ideator",
            PersonaKind::IndependentWriter => "independent_writer",
            PersonaKind::Echoer => "echoer",
            PersonaKind::Copyeditor => "copyeditor",
            PersonaKind::Initiator => "initiator",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.as_str() == s)
    }

    /// Leadership class the persona's sessions are labeled with.
    pub fn truth_class(self) -> SessionClass {
        match self {
            PersonaKind::CoIdeator | PersonaKind::Initiator => SessionClass::CoIdeation,
            PersonaKind::IndependentWriter | PersonaKind::Copyeditor => SessionClass::HumanLed,
            PersonaKind::Echoer => SessionClass::AiLed,
        }
    }
}

impl std::fmt::Display for PersonaKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Behavior profile of a synthetic writer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WriterPersona {
    pub kind: PersonaKind,
    /// Characters typed per second.
    pub typing_rate_cps: f64,
    /// Chance of requesting suggestions after a typed sentence.
    pub suggestion_request_rate: f64,
    /// Chance that a requested suggestion is accepted.
    pub acceptance_probability: f64,
    /// Chance that an episode revises one word instead of adding a sentence.
    pub edit_probability: f64,
    /// Chance per cycle of a further topic shift after the first.
    pub topic_shift_rate: f64,
    /// Single-character replacements per copyediting burst.
    pub copyedit_burst_length: usize,
}

impl WriterPersona {
    pub fn default_for(kind: PersonaKind) -> Self {
        let base = WriterPersona {
            kind,
            typing_rate_cps: 3.5,
            suggestion_request_rate: 0.0,
            acceptance_probability: 0.0,
            edit_probability: 0.1,
            topic_shift_rate: 0.0,
            copyedit_burst_length: 40,
        };
        match kind {
            PersonaKind::CoIdeator => WriterPersona {
                suggestion_request_rate: 0.95,
                acceptance_probability: 0.85,
                ..base
            },
            PersonaKind::IndependentWriter => WriterPersona {
                suggestion_request_rate: 0.2,
                ..base
            },
            PersonaKind::Echoer => WriterPersona {
                typing_rate_cps: 2.5,
                suggestion_request_rate: 1.0,
                acceptance_probability: 1.0,
                edit_probability: 0.0,
                ..base
            },
            PersonaKind::Copyeditor => WriterPersona {
                typing_rate_cps: 3.0,
                suggestion_request_rate: 0.1,
                ..base
            },
            PersonaKind::Initiator => WriterPersona {
                suggestion_request_rate: 0.95,
                acceptance_probability: 0.85,
                topic_shift_rate: 0.1,
                ..base
            },
        }
    }

    pub fn validate(&self) -> Result<(), SimulationError> {
        let invalid = |m: &str| Err(SimulationError::InvalidPersonaParams(m.to_string()));
        if !(self.typing_rate_cps.is_finite() && self.typing_rate_cps > 0.0) {
            return invalid("typing_rate_cps must be positive");
        }
        for (name, p) in [
            ("suggestion_request_rate", self.suggestion_request_rate),
            ("acceptance_probability", self.acceptance_probability),
            ("edit_probability", self.edit_probability),
            ("topic_shift_rate", self.topic_shift_rate),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return invalid(&format!("{name} must lie in [0, 1]"));
            }
        }
        if self.copyedit_burst_length == 0 {
            return invalid("copyedit_burst_length must be positive");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate_and_names_round_trip() {
        for kind in PersonaKind::ALL {
            WriterPersona::default_for(kind).validate().unwrap();
            assert_eq!(PersonaKind::parse(kind.as_str()), Some(kind));
        }
        let bad = WriterPersona {
            acceptance_probability: 1.2,
            ..WriterPersona::default_for(PersonaKind::Echoer)
        };
        assert!(matches!(
            bad.validate(),
            Err(SimulationError::InvalidPersonaParams(_))
        ));
        let slow = WriterPersona {
            typing_rate_cps: 0.0,
            ..WriterPersona::default_for(PersonaKind::Echoer)
        };
        assert!(slow.validate().is_err());
    }
}
