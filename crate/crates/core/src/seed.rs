use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Named random stream. The generator seed is the SHA-256 of the master
/// seed (little-endian) followed by the UTF-8 label, so equal pairs always
/// give equal streams and distinct labels give independent ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSeed {
    pub master_seed: u64,
    pub stream_label: String,
}

impl RngSeed {
    pub fn new(master_seed: u64, stream_label: impl Into<String>) -> Self {
        Self {
            master_seed,
            stream_label: stream_label.into(),
        }
    }

    /// Child stream labelled `"<label>/<sub>"`.
    pub fn derive(&self, sub: impl fmt::Display) -> Self {
        Self {
            master_seed: self.master_seed,
            stream_label: format!("{}/{}", self.stream_label, sub),
        }
    }

    pub fn digest(&self) -> [u8; 32] {
        let mut hasher = Sha256::new();
        hasher.update(self.master_seed.to_le_bytes());
        hasher.update(self.stream_label.as_bytes());
        hasher.finalize().into()
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::from_seed(self.digest())
    }
}

impl fmt::Display for RngSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.master_seed, self.stream_label)
    }
}
