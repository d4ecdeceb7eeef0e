use std::fs::File;
use std::io::{BufReader, Read};
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::denoiser::NoiseModel;
use crate::encoder::{Encoder, EncoderConfig, SentenceEmbedding};
use crate::error::{Error, Result};
use crate::lexicon::{FrequencyTable, VectorTable};

/// Everything needed to turn raw text into a final sentence embedding.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub vectors: VectorTable,
    pub freqs: FrequencyTable,
    pub config: EncoderConfig,
    pub noise: Option<NoiseModel>,
    /// SHA-256 of the vector file, recorded in report headers.
    pub vectors_digest: Option<String>,
}

impl Pipeline {
    pub fn new(vectors: VectorTable, freqs: FrequencyTable, config: EncoderConfig) -> Result<Self> {
        Encoder::new(&vectors, &freqs, &config)?;
        Ok(Self {
            vectors,
            freqs,
            config,
            noise: None,
            vectors_digest: None,
        })
    }

    pub fn with_noise(mut self, noise: NoiseModel) -> Result<Self> {
        if noise.dim() != 2 * self.config.dim {
            return Err(Error::DimensionMismatch {
                expected: 2 * self.config.dim,
                got: noise.dim(),
            });
        }
        self.config.k = noise.k();
        self.noise = Some(noise);
        Ok(self)
    }

    pub fn with_digest(mut self, digest: impl Into<String>) -> Self {
        self.vectors_digest = Some(digest.into());
        self
    }

    pub fn encoder(&self) -> Encoder<'_> {
        Encoder::new(&self.vectors, &self.freqs, &self.config).expect("validated at construction")
    }

    /// Raw embedding, before noise removal.
    pub fn embed_raw(&self, raw: &str, diagnostics: bool) -> Result<SentenceEmbedding> {
        self.encoder().encode_str(raw, diagnostics)
    }

    /// Final embedding: raw embedding with the noise model applied, if any.
    pub fn embed(&self, raw: &str, diagnostics: bool) -> Result<SentenceEmbedding> {
        let e = self.embed_raw(raw, diagnostics)?;
        match &self.noise {
            Some(m) => m.remove(&e),
            None => Ok(e),
        }
    }

    /// One-line `key=value` summary for report headers.
    pub fn provenance(&self) -> String {
        format!(
            "a={} k={} dim={} positions={} vectors_sha256={}",
            self.config.a,
            self.noise.as_ref().map_or(0, NoiseModel::k),
            self.config.dim,
            self.config.use_positions,
            self.vectors_digest.as_deref().unwrap_or("unknown"),
        )
    }
}

/// Hex SHA-256 of a file's contents.
pub fn sha256_file(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = BufReader::with_capacity(1 << 20, file);
    let mut hasher = Sha256::new();
    let mut buf = vec![0u8; 1 << 20];
    loop {
        let n = reader.read(&mut buf).map_err(|e| Error::io(path, e))?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(hasher.finalize().iter().map(|b| format!("{b:02x}")).collect())
}
