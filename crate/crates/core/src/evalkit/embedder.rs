use std::str::FromStr;

use ndarray::Array2;
use rayon::prelude::*;

use crate::denoiser::NoiseModel;
use crate::encoder::{Encoder, EncoderConfig, Weighting};
use crate::error::{Error, Result};
use crate::evalkit::dataset::Example;
use crate::lexicon::{FrequencyTable, TokenSequence, VectorTable};

/// Sentence embedders compared in the evaluation: the full model, its
/// ablations, and two bag-of-words baselines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Contextual embedding + smooth frequency weights + noise removal.
    Noppa,
    /// Contextual embedding, uniform weights.
    CeAvg,
    /// Contextual embedding, uniform weights, noise removal.
    CeAvgNr,
    /// Contextual embedding with smooth frequency weights, no noise removal.
    CeSfw,
    /// Plain mean of word vectors.
    GloveAvg,
    /// Smooth-frequency-weighted mean of word vectors.
    FreqWeightedAvg,
}

impl Variant {
    pub const ALL: [Variant; 6] = [
        Variant::Noppa,
        Variant::CeAvg,
        Variant::CeAvgNr,
        Variant::CeSfw,
        Variant::GloveAvg,
        Variant::FreqWeightedAvg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Noppa => "noppa",
            Variant::CeAvg => "ce_avg",
            Variant::CeAvgNr => "ce_avg_nr",
            Variant::CeSfw => "ce_sfw",
            Variant::GloveAvg => "glove_avg",
            Variant::FreqWeightedAvg => "freq_weighted_avg",
        }
    }

    pub fn contextual(self) -> bool {
        matches!(
            self,
            Variant::Noppa | Variant::CeAvg | Variant::CeAvgNr | Variant::CeSfw
        )
    }

    pub fn uses_frequency_weights(self) -> bool {
        matches!(self, Variant::Noppa | Variant::CeSfw | Variant::FreqWeightedAvg)
    }

    pub fn uses_noise_removal(self) -> bool {
        matches!(self, Variant::Noppa | Variant::CeAvgNr)
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown variant {s:?}")))
    }
}

/// A variant together with a configuration it is compatible with.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbedderSpec {
    pub variant: Variant,
    pub config: EncoderConfig,
}

impl EmbedderSpec {
    /// Forces the settings each variant implies: uniform weighting when the
    /// variant has no frequency weights, `k = 0` when it has no noise removal.
    pub fn new(variant: Variant, mut config: EncoderConfig) -> Self {
        if !variant.uses_frequency_weights() {
            config.weighting = Weighting::Uniform;
        } else {
            config.weighting = Weighting::SmoothFrequency;
        }
        if !variant.uses_noise_removal() {
            config.k = 0;
        }
        Self { variant, config }
    }

    /// Length of one sentence vector.
    pub fn sentence_dim(&self) -> usize {
        if self.variant.contextual() {
            2 * self.config.dim
        } else {
            self.config.dim
        }
    }

    /// Embedding before noise removal. `None` when no token has a vector.
    pub fn embed_tokens(
        &self,
        tokens: &TokenSequence,
        vectors: &VectorTable,
        freqs: &FrequencyTable,
    ) -> Result<Option<Vec<f64>>> {
        if tokens.is_empty() {
            return Ok(None);
        }
        if self.variant.contextual() {
            let encoder = Encoder::new(vectors, freqs, &self.config)?;
            return match encoder.encode(tokens, false) {
                Ok(e) => Ok(Some(e.vector)),
                Err(Error::EmptyAfterFiltering) => Ok(None),
                Err(e) => Err(e),
            };
        }
        let mut out = vec![0.0; self.config.dim];
        let mut n = 0usize;
        for t in &tokens.tokens {
            let Some(v) = vectors.get(t) else { continue };
            let w = self.config.weight(freqs.prob_or_zero(t));
            for (o, &x) in out.iter_mut().zip(v) {
                *o += w * x as f64;
            }
            n += 1;
        }
        if n == 0 {
            return Ok(None);
        }
        out.iter_mut().for_each(|x| *x /= n as f64);
        Ok(Some(out))
    }
}

/// Sentence embeddings and labels for one split, before featurisation.
#[derive(Debug, Clone)]
pub struct EmbeddedSplit {
    /// One row per example (first sentence of a pair).
    pub first: Array2<f64>,
    /// Second sentences, for pair tasks.
    pub second: Option<Array2<f64>>,
    pub y: Vec<usize>,
    /// Sentences with no known token; they get an all-zero row.
    pub empty: usize,
}

impl EmbeddedSplit {
    /// Every sentence row, for fitting a noise model.
    pub fn sentence_rows(&self) -> Array2<f64> {
        match &self.second {
            Some(second) => ndarray::concatenate![ndarray::Axis(0), self.first, *second],
            None => self.first.clone(),
        }
    }

    /// Classifier inputs, with `noise` removed from each sentence first.
    /// Pairs become `[u ; v ; |u - v|]`.
    pub fn features(&self, noise: Option<&NoiseModel>) -> Result<Array2<f64>> {
        let clean = |x: &Array2<f64>| match noise {
            Some(m) if m.k() > 0 => m.remove_rows(x),
            _ => Ok(x.clone()),
        };
        let u = clean(&self.first)?;
        match &self.second {
            None => Ok(u),
            Some(second) => {
                let v = clean(second)?;
                let diff = (&u - &v).mapv(f64::abs);
                Ok(ndarray::concatenate![ndarray::Axis(1), u, v, diff])
            }
        }
    }
}

/// Embeds every example, fanning out over the current rayon pool. Row order
/// follows `examples`.
pub fn embed_examples(
    examples: &[Example],
    spec: &EmbedderSpec,
    vectors: &VectorTable,
    freqs: &FrequencyTable,
) -> Result<EmbeddedSplit> {
    let dim = spec.sentence_dim();
    let pair = examples.first().is_some_and(|e| e.pair.is_some());
    if examples.iter().any(|e| e.pair.is_some() != pair) {
        return Err(Error::Dataset("mixed single and pair examples".into()));
    }
    let embed_all = |texts: Vec<&str>| -> Result<(Array2<f64>, usize)> {
        let rows: Vec<Option<Vec<f64>>> = texts
            .par_iter()
            .map(|t| spec.embed_tokens(&vectors.tokenize(t), vectors, freqs))
            .collect::<Result<_>>()?;
        let mut data = Vec::with_capacity(rows.len() * dim);
        let mut empty = 0;
        for row in rows {
            match row {
                Some(v) => data.extend(v),
                None => {
                    data.extend(std::iter::repeat_n(0.0, dim));
                    empty += 1;
                }
            }
        }
        Ok((
            Array2::from_shape_vec((texts.len(), dim), data).expect("uniform rows"),
            empty,
        ))
    };
    let (first, mut empty) = embed_all(examples.iter().map(|e| e.text.as_str()).collect())?;
    let second = if pair {
        let (m, e) = embed_all(examples.iter().map(|e| e.pair.as_deref().unwrap_or_default()).collect())?;
        empty += e;
        Some(m)
    } else {
        None
    };
    Ok(EmbeddedSplit {
        first,
        second,
        y: examples.iter().map(|e| e.label).collect(),
        empty,
    })
}
