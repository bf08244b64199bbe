use regex::Regex;
use serde::{Deserialize, Serialize};

use super::{AssistantError, SuggestionMode, SuggestionSet};
use crate::embeddings::{similarity, Embedder};

const BUILTIN_TEMPLATES: &str = include_str!("socratic_templates.txt");

#[derive(Debug, Clone)]
struct Template {
    text: String,
    pattern: Regex,
}

/// Socratic question patterns with `{X}`/`{Y}` slots.
#[derive(Debug, Clone)]
pub struct TemplateSet {
    templates: Vec<Template>,
}

fn normalize(s: &str) -> String {
    let t = s.trim().trim_end_matches('?').trim_end();
    t.split_whitespace().collect::<Vec<_>>().join(" ")
}

impl TemplateSet {
    /// One template per line; blank lines and `#` comments are skipped.
    pub fn parse(source: &str) -> Result<Self, AssistantError> {
        let slot = Regex::new(r"\{[A-Z]\}").unwrap();
        let mut templates = Vec::new();
        for (n, line) in source.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let norm = normalize(line);
            let mut re = String::from("(?i)^");
            let mut last = 0;
            for m in slot.find_iter(&norm) {
                re.push_str(&regex::escape(&norm[last..m.start()]));
                re.push_str("(.+)");
                last = m.end();
            }
            if last == 0 {
                return Err(AssistantError::TemplateInvalid {
                    line: n + 1,
                    reason: "pattern has no slot".into(),
                });
            }
            re.push_str(&regex::escape(&norm[last..]));
            re.push('$');
            let pattern = Regex::new(&re).map_err(|e| AssistantError::TemplateInvalid {
                line: n + 1,
                reason: e.to_string(),
            })?;
            templates.push(Template {
                text: line.to_string(),
                pattern,
            });
        }
        if templates.is_empty() {
            return Err(AssistantError::TemplateInvalid {
                line: 0,
                reason: "no templates".into(),
            });
        }
        Ok(Self { templates })
    }

    pub fn len(&self) -> usize {
        self.templates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.templates.is_empty()
    }

    pub fn template(&self, i: usize) -> &str {
        &self.templates[i].text
    }

    /// Index of the first template `question` instantiates.
    pub fn find_match(&self, question: &str) -> Option<usize> {
        let q = normalize(question);
        self.templates.iter().position(|t| t.pattern.is_match(&q))
    }

    /// Fills slots of template `i` in order of appearance.
    pub fn fill(&self, i: usize, slots: &[&str]) -> String {
        let mut out = String::new();
        let text = &self.templates[i].text;
        let mut rest = text.as_str();
        let mut k = 0;
        while let Some(open) = rest.find('{') {
            out.push_str(&rest[..open]);
            out.push_str(slots.get(k).copied().unwrap_or("this"));
            k += 1;
            rest = &rest[open + 3..];
        }
        out.push_str(rest);
        out
    }
}

impl Default for TemplateSet {
    fn default() -> Self {
        Self::parse(BUILTIN_TEMPLATES).expect("built-in templates parse")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuestionCheck {
    pub question: String,
    pub template_matched: bool,
    pub matched_template: Option<String>,
    pub context_similarity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SocraticValidationReport {
    pub questions: Vec<QuestionCheck>,
    pub template_match_rate: f64,
    pub mean_similarity: f64,
}

/// Checks `(question, context)` pairs: template instance or not, and
/// embedding similarity to the context. Empty input gives zero aggregates.
pub fn validate_questions(
    pairs: &[(&str, &str)],
    templates: &TemplateSet,
    embedder: &dyn Embedder,
) -> Result<SocraticValidationReport, AssistantError> {
    let mut questions = Vec::with_capacity(pairs.len());
    for &(question, context) in pairs {
        let matched = templates.find_match(question);
        let sim = similarity(&embedder.embed(question), &embedder.embed(context))?;
        questions.push(QuestionCheck {
            question: question.to_string(),
            template_matched: matched.is_some(),
            matched_template: matched.map(|i| templates.template(i).to_string()),
            context_similarity: sim,
        });
    }
    let n = questions.len();
    let (rate, mean) = if n == 0 {
        (0.0, 0.0)
    } else {
        let matched = questions.iter().filter(|q| q.template_matched).count();
        let total: f64 = questions.iter().map(|q| q.context_similarity).sum();
        (matched as f64 / n as f64, total / n as f64)
    };
    Ok(SocraticValidationReport {
        questions,
        template_match_rate: rate,
        mean_similarity: mean,
    })
}

pub fn validate_socratic(
    set: &SuggestionSet,
    context: &str,
    templates: &TemplateSet,
    embedder: &dyn Embedder,
) -> Result<SocraticValidationReport, AssistantError> {
    if set.mode() != SuggestionMode::Socratic {
        return Err(AssistantError::ModeMismatch {
            expected: SuggestionMode::Socratic,
            found: set.mode(),
        });
    }
    let pairs: Vec<(&str, &str)> = set.items().iter().map(|q| (q.as_str(), context)).collect();
    validate_questions(&pairs, templates, embedder)
}
