use std::time::Duration;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::prompt::dissect_prompt;
use super::{AssistantError, SuggestionMode, TemplateSet, SUGGESTION_COUNT};
use crate::embeddings::tokenize;

/// Text generation behind the two assistants.
pub trait GenerationBackend: Send + Sync {
    fn generate(&self, prompt: &str) -> Result<String, AssistantError>;
}

const STOPWORDS: &[&str] = &[
    "the", "and", "that", "this", "with", "from", "have", "were", "been", "their", "there", "they",
    "which", "what", "when", "where", "about", "into", "than", "then", "also", "more", "most",
    "some", "such", "these", "those", "would", "could", "should", "will", "your", "each", "other",
    "over", "very", "only",
];

fn content_words(text: &str) -> Vec<String> {
    let mut words: Vec<String> = Vec::new();
    for w in tokenize(text) {
        if w.chars().count() >= 4
            && w.chars().all(|c| c.is_ascii_alphabetic())
            && !STOPWORDS.contains(&w.as_str())
            && !words.contains(&w)
        {
            words.push(w);
        }
    }
    words
}

fn fnv1a(text: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in text.as_bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Deterministic, network-free backend. Socratic prompts get four filled
/// question templates; autocomplete prompts get four stub sentences. Words
/// come from the prompt's context window, or from the data description
/// when the window is empty.
#[derive(Debug, Clone)]
pub struct OfflineBackend {
    seed: u64,
    templates: TemplateSet,
}

impl OfflineBackend {
    pub fn new(seed: u64) -> Self {
        Self::with_templates(seed, TemplateSet::default())
    }

    pub fn with_templates(seed: u64, templates: TemplateSet) -> Self {
        Self { seed, templates }
    }

    fn phrase(rng: &mut ChaCha8Rng, words: &[String]) -> String {
        let n = rng.gen_range(1..=2);
        (0..n)
            .map(|_| words[rng.gen_range(0..words.len())].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl GenerationBackend for OfflineBackend {
    fn generate(&self, prompt: &str) -> Result<String, AssistantError> {
        if prompt.trim().is_empty() {
            return Err(AssistantError::EmptyPrompt);
        }
        let (mode, context) =
            dissect_prompt(prompt).unwrap_or((SuggestionMode::Autocomplete, prompt));
        let mut words = content_words(context);
        if words.is_empty() {
            words = content_words(prompt);
        }
        if words.is_empty() {
            words.push("writing".into());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ fnv1a(prompt));
        let items: Vec<String> = match mode {
            SuggestionMode::Socratic => sample(&mut rng, self.templates.len(), SUGGESTION_COUNT)
                .into_iter()
                .map(|t| {
                    let x = Self::phrase(&mut rng, &words);
                    let y = Self::phrase(&mut rng, &words);
                    self.templates.fill(t, &[&x, &y])
                })
                .collect(),
            SuggestionMode::Autocomplete => (0..SUGGESTION_COUNT)
                .map(|_| {
                    let n = rng.gen_range(6..=10);
                    let body: Vec<&str> = (0..n)
                        .map(|_| words[rng.gen_range(0..words.len())].as_str())
                        .collect();
                    let mut s = body.join(" ");
                    s[..1].make_ascii_uppercase();
                    s.push('.');
                    s
                })
                .collect(),
        };
        Ok(items
            .iter()
            .enumerate()
            .map(|(i, s)| format!("{}. {}", i + 1, s))
            .collect::<Vec<_>>()
            .join("\n"))
    }
}

pub const ENDPOINT_VAR: &str = "COWRITE_BACKEND_URL";
pub const TOKEN_VAR: &str = "COWRITE_BACKEND_TOKEN";
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(30);

/// Remote backend speaking `{"prompt": ...}` -> `{"text": ...}` over HTTP
/// POST. Failed calls are retried once.
#[cfg(feature = "http")]
#[derive(Debug, Clone)]
pub struct HttpBackend {
    endpoint: String,
    token: Option<String>,
    timeout: Duration,
}

#[cfg(feature = "http")]
impl HttpBackend {
    pub fn new(endpoint: impl Into<String>, token: Option<String>, timeout: Duration) -> Self {
        Self {
            endpoint: endpoint.into(),
            token,
            timeout,
        }
    }

    /// Endpoint from `COWRITE_BACKEND_URL`, bearer token from `COWRITE_BACKEND_TOKEN`.
    pub fn from_env() -> Result<Self, AssistantError> {
        let endpoint = std::env::var(ENDPOINT_VAR).map_err(|_| {
            AssistantError::BackendUnavailable(format!("{ENDPOINT_VAR} is not set"))
        })?;
        Ok(Self::new(
            endpoint,
            std::env::var(TOKEN_VAR).ok(),
            DEFAULT_TIMEOUT,
        ))
    }

    fn attempt(&self, agent: &ureq::Agent, prompt: &str) -> Result<String, AssistantError> {
        #[derive(serde::Deserialize)]
        struct Reply {
            text: String,
        }
        let mut req = agent.post(&self.endpoint);
        if let Some(token) = &self.token {
            req = req.header("Authorization", &format!("Bearer {token}"));
        }
        let result = req
            .send_json(serde_json::json!({ "prompt": prompt }))
            .and_then(|mut resp| resp.body_mut().read_json::<Reply>());
        match result {
            Ok(reply) => Ok(reply.text),
            Err(ureq::Error::Timeout(_)) => Err(AssistantError::BackendTimeout(self.timeout)),
            Err(ureq::Error::Io(e)) if e.kind() == std::io::ErrorKind::TimedOut => {
                Err(AssistantError::BackendTimeout(self.timeout))
            }
            Err(e) => Err(AssistantError::BackendUnavailable(e.to_string())),
        }
    }
}

#[cfg(feature = "http")]
impl GenerationBackend for HttpBackend {
    fn generate(&self, prompt: &str) -> Result<String, AssistantError> {
        if prompt.trim().is_empty() {
            return Err(AssistantError::EmptyPrompt);
        }
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(self.timeout))
            .build()
            .into();
        match self.attempt(&agent, prompt) {
            Ok(text) => Ok(text),
            Err(first) => {
                log::debug!("backend call failed, retrying once: {first}");
                self.attempt(&agent, prompt)
            }
        }
    }
}
