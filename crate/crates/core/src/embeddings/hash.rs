use super::{for_each_token, Embedder, EmbeddingVector};

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn mix(mut z: u64) -> u64 {
    // splitmix64 finaliser
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn token_hash(seed: u64, token: &str) -> u64 {
    let mut h = FNV_OFFSET ^ mix(seed);
    for &b in token.as_bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(FNV_PRIME);
    }
    mix(h)
}

/// Deterministic feature-hashed bag-of-words embedder.
///
/// Each token maps to one signed coordinate; the text vector is the mean of
/// its token vectors. Hashing is byte-level FNV-1a with a splitmix64
/// finaliser, so outputs are identical across runs and platforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HashEmbedder {
    pub dimension: usize,
    pub seed: u64,
}

impl HashEmbedder {
    pub const DEFAULT_DIMENSION: usize = 1024;
    pub const DEFAULT_SEED: u64 = 0;

    pub fn new(dimension: usize, seed: u64) -> Self {
        assert!(dimension > 0, "hash embedder dimension must be positive");
        Self { dimension, seed }
    }
}

impl Default for HashEmbedder {
    fn default() -> Self {
        Self::new(Self::DEFAULT_DIMENSION, Self::DEFAULT_SEED)
    }
}

impl Embedder for HashEmbedder {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn embed(&self, text: &str) -> EmbeddingVector {
        let mut sum = vec![0.0f64; self.dimension];
        let mut count = 0usize;
        for_each_token(text, |token| {
            let h = token_hash(self.seed, token);
            let slot = (h % self.dimension as u64) as usize;
            sum[slot] += if h >> 63 == 1 { -1.0 } else { 1.0 };
            count += 1;
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

/// Feature-hashed embedding of `text`; see [`HashEmbedder`].
pub fn hash_embedder(text: &str, dimension: usize, seed: u64) -> EmbeddingVector {
    HashEmbedder::new(dimension, seed).embed(text)
}
