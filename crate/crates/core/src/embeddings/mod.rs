//! Text embeddings and the similarity function behind semantic expansion.
//!
//! A snapshot embedding is the arithmetic mean of the vectors of its
//! in-vocabulary tokens. Tokens are lowercased runs of alphanumeric
//! characters; stopwords are kept.

mod hash;
mod store;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use hash::{hash_embedder, HashEmbedder};
pub use store::{embed_text, load_word_vectors, load_word_vectors_path, WordVectorStore};

#[derive(Debug, Error)]
pub enum EmbeddingError {
    #[error("line {line}: expected {expected} components, found {found}")]
    InconsistentDimension {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("word-vector source contains no vectors")]
    EmptyStore,

    #[error("line {line}: malformed float `{token}`")]
    MalformedFloat { line: usize, token: String },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A dense, finite embedding vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingVector(Vec<f64>);

impl EmbeddingVector {
    pub fn zeros(dimension: usize) -> Self {
        Self(vec![0.0; dimension])
    }

    /// Wraps raw components, replacing non-finite values with zero.
    pub fn from_components(mut components: Vec<f64>) -> Self {
        for c in &mut components {
            if !c.is_finite() {
                *c = 0.0;
            }
        }
        Self(components)
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self(self.0.iter().map(|c| c * factor).collect())
    }
}

/// Anything that maps text to a fixed-dimension vector.
pub trait Embedder: Send + Sync {
    fn dimension(&self) -> usize;
    fn embed(&self, text: &str) -> EmbeddingVector;
}

/// Calls `f` with each lowercased alphanumeric token of `text`.
pub fn for_each_token(text: &str, mut f: impl FnMut(&str)) {
    let mut buf = String::new();
    for c in text.chars() {
        if c.is_alphanumeric() {
            if c.is_ascii() {
                buf.push(c.to_ascii_lowercase());
            } else {
                buf.extend(c.to_lowercase());
            }
        } else if !buf.is_empty() {
            f(&buf);
            buf.clear();
        }
    }
    if !buf.is_empty() {
        f(&buf);
    }
}

pub fn tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    for_each_token(text, |t| out.push(t.to_string()));
    out
}

/// Cosine similarity clamped to `[0, 1]`; zero if either vector is zero.
pub fn similarity(u: &EmbeddingVector, v: &EmbeddingVector) -> Result<f64, EmbeddingError> {
    if u.dimension() != v.dimension() {
        return Err(EmbeddingError::DimensionMismatch {
            left: u.dimension(),
            right: v.dimension(),
        });
    }
    if u.is_zero() || v.is_zero() {
        return Ok(0.0);
    }
    if u == v {
        return Ok(1.0);
    }
    let (mut dot, mut nu, mut nv) = (0.0, 0.0, 0.0);
    for (a, b) in u.0.iter().zip(&v.0) {
        dot += a * b;
        nu += a * a;
        nv += b * b;
    }
    let cos = dot / (nu.sqrt() * nv.sqrt());
    if cos < 0.0 {
        log::trace!("clamping negative cosine {cos} to 0");
    }
    Ok(cos.clamp(0.0, 1.0))
}
