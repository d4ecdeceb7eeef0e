//! Sentence embeddings built from static word vectors with no trained
//! parameters. Each word is paired with an attention-weighted context
//! vector, words are weighted by rarity, and the average is projected off
//! its weakest singular directions.
//!
//! ```no_run
//! use noppa::encoder::EncoderConfig;
//! use noppa::lexicon::{load_frequencies, load_vectors};
//! use noppa::pipeline::Pipeline;
//!
//! let vectors = load_vectors("glove.6B.300d.txt", None)?;
//! let freqs = load_frequencies("freq.tsv")?;
//! let pipeline = Pipeline::new(vectors, freqs, EncoderConfig::new(300, 0.05))?;
//! let embedding = pipeline.encoder().encode_str("a quiet, lovely film", false)?;
//! assert_eq!(embedding.vector.len(), 600);
//! # Ok::<(), noppa::error::Error>(())
//! ```

pub mod analysis;
pub mod cli;
pub mod denoiser;
pub mod encoder;
pub mod error;
pub mod evalkit;
pub mod lexicon;
mod linalg;
pub mod pipeline;
