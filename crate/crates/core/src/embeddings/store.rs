use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use flate2::read::MultiGzDecoder;

use super::{for_each_token, Embedder, EmbeddingError, EmbeddingVector};

/// Immutable word → vector table loaded from the plain-text vector format.
#[derive(Debug, Clone)]
pub struct WordVectorStore {
    dimension: usize,
    index: HashMap<String, usize>,
    data: Vec<f32>,
}

impl WordVectorStore {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Case-folded lookup.
    pub fn get(&self, word: &str) -> Option<&[f32]> {
        let i = match self.index.get(word) {
            Some(&i) => i,
            None => *self.index.get(&word.to_lowercase())?,
        };
        Some(&self.data[i * self.dimension..(i + 1) * self.dimension])
    }

    /// Mean of the vectors of the in-vocabulary tokens of `text`, or the
    /// zero vector when none are in vocabulary.
    pub fn embed_text(&self, text: &str) -> EmbeddingVector {
        let mut sum = vec![0.0f64; self.dimension];
        let mut count = 0usize;
        for_each_token(text, |token| {
            if let Some(&i) = self.index.get(token) {
                let row = &self.data[i * self.dimension..(i + 1) * self.dimension];
                for (s, &x) in sum.iter_mut().zip(row) {
                    *s += f64::from(x);
                }
                count += 1;
            }
        });
        if count > 0 {
            let n = count as f64;
            for s in &mut sum {
                *s /= n;
            }
        }
        EmbeddingVector::from_components(sum)
    }
}

impl Embedder for WordVectorStore {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn embed(&self, text: &str) -> EmbeddingVector {
        self.embed_text(text)
    }
}

pub fn embed_text(text: &str, store: &WordVectorStore) -> EmbeddingVector {
    store.embed_text(text)
}

fn is_header(fields: &[&str]) -> Option<usize> {
    match fields {
        [count, dim] => {
            count.parse::<u64>().ok()?;
            dim.parse::<usize>().ok().filter(|&d| d > 0)
        }
        _ => None,
    }
}

/// Loads vectors in the word2vec/GloVe text layout: an optional `count dim`
/// header, then `word x1 .. xd` per line. Gzip input is detected by its
/// magic bytes. Words are case-folded and the first occurrence wins.
pub fn load_word_vectors<R: Read>(source: R) -> Result<WordVectorStore, EmbeddingError> {
    let mut reader = BufReader::new(source);
    let is_gzip = {
        let head = reader.fill_buf()?;
        head.len() >= 2 && head[0] == 0x1f && head[1] == 0x8b
    };
    if is_gzip {
        load_lines(BufReader::new(MultiGzDecoder::new(reader)))
    } else {
        load_lines(reader)
    }
}

pub fn load_word_vectors_path(path: impl AsRef<Path>) -> Result<WordVectorStore, EmbeddingError> {
    load_word_vectors(File::open(path)?)
}

fn load_lines<R: BufRead>(reader: R) -> Result<WordVectorStore, EmbeddingError> {
    let mut dimension: Option<usize> = None;
    let mut index = HashMap::new();
    let mut data = Vec::new();
    let mut row = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if line_no == 1 {
            if let Some(d) = is_header(&fields) {
                dimension = Some(d);
                continue;
            }
        }
        let (word, values) = fields.split_first().expect("non-empty");
        let expected = *dimension.get_or_insert(values.len());
        if values.len() != expected || expected == 0 {
            return Err(EmbeddingError::InconsistentDimension {
                line: line_no,
                expected,
                found: values.len(),
            });
        }
        row.clear();
        for token in values {
            let x: f32 = token.parse().map_err(|_| EmbeddingError::MalformedFloat {
                line: line_no,
                token: token.to_string(),
            })?;
            if !x.is_finite() {
                return Err(EmbeddingError::MalformedFloat {
                    line: line_no,
                    token: token.to_string(),
                });
            }
            row.push(x);
        }
        let key = word.to_lowercase();
        if !index.contains_key(&key) {
            index.insert(key, index.len());
            data.extend_from_slice(&row);
        }
    }
    match dimension {
        Some(dimension) if !index.is_empty() => Ok(WordVectorStore {
            dimension,
            index,
            data,
        }),
        _ => Err(EmbeddingError::EmptyStore),
    }
}
