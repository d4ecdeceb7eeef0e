//! Raw sentence embedding: positional word vectors, non-parametric pairwise
//! attention, log-kernel pair features and smooth-frequency weighting.
//!
//! For a sentence `w_1..w_n` with word vectors `v_i` and `v'_i = v_i + pe(i)`:
//!
//! ```text
//! A_ij   = softmax_j(<v'_i, v'_j> / sqrt(d))
//! ctx_i  = sum_j A_ij * log2(1 + (v'_i - v'_j)^2)        (element-wise)
//! c_s    = 1/n * sum_i  a / (Pr(w_i) + a/2) * [ctx_i ; v_i]
//! ```
//!
//! The output has `2d` components: the contextual block first, the raw word
//! block second.

use std::f64::consts::LOG2_E;

use crate::error::{Error, Result};
use crate::lexicon::{FrequencyTable, TokenSequence, VectorTable};

/// How each word is weighted in the final average.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Weighting {
    /// `a / (Pr(w) + a/2)`.
    #[default]
    SmoothFrequency,
    /// Every word weighs 1 (the CE-avg ablation).
    Uniform,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EncoderConfig {
    /// Frequency-smoothing constant, `> 0`.
    pub a: f64,
    /// Word-vector dimension `d`.
    pub dim: usize,
    /// Add sinusoidal position embeddings before attention.
    pub use_positions: bool,
    /// Number of noise directions removed by the denoiser.
    pub k: usize,
    pub weighting: Weighting,
}

impl EncoderConfig {
    pub fn new(dim: usize, a: f64) -> Self {
        Self {
            a,
            dim,
            use_positions: true,
            k: 0,
            weighting: Weighting::SmoothFrequency,
        }
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn with_positions(mut self, on: bool) -> Self {
        self.use_positions = on;
        self
    }

    pub fn with_weighting(mut self, weighting: Weighting) -> Self {
        self.weighting = weighting;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.a.is_finite()) {
            return Err(Error::InvalidConfig(format!("a must be positive, got {}", self.a)));
        }
        if self.dim == 0 {
            return Err(Error::InvalidConfig("dim must be positive".into()));
        }
        Ok(())
    }

    /// Weight of a word with unigram probability `pr`.
    pub fn weight(&self, pr: f64) -> f64 {
        match self.weighting {
            Weighting::SmoothFrequency => sfw(pr, self.a),
            Weighting::Uniform => 1.0,
        }
    }
}

/// Sinusoidal position embedding of zero-based position `i`.
///
/// Component `2m` is `sin(i / 10000^(2m/d))` and `2m+1` the matching cosine.
/// For odd `d` the last, unpaired component is a sine.
pub fn pos_embed(i: usize, dim: usize) -> Vec<f64> {
    let mut out = vec![0.0; dim];
    add_pos_embed(i, &mut out);
    out
}

fn add_pos_embed(i: usize, row: &mut [f64]) {
    let dim = row.len() as f64;
    let pos = i as f64;
    for pair in (0..row.len()).step_by(2) {
        let angle = pos / 10000f64.powf(pair as f64 / dim);
        row[pair] += angle.sin();
        if pair + 1 < row.len() {
            row[pair + 1] += angle.cos();
        }
    }
}

/// `n × d` positional word vectors, row-major, in 64-bit.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionalVectors {
    dim: usize,
    rows: Vec<f64>,
}

impl PositionalVectors {
    /// `v'_i = v_i + pe(i)`, or just `v_i` when `use_positions` is off.
    pub fn build<'a, I>(words: I, dim: usize, use_positions: bool) -> Self
    where
        I: IntoIterator<Item = &'a [f32]>,
    {
        let mut rows = Vec::new();
        for (i, v) in words.into_iter().enumerate() {
            debug_assert_eq!(v.len(), dim);
            let start = rows.len();
            rows.extend(v.iter().map(|&x| x as f64));
            if use_positions {
                add_pos_embed(i, &mut rows[start..]);
            }
        }
        Self { dim, rows }
    }

    pub fn from_rows(dim: usize, rows: Vec<f64>) -> Self {
        assert!(dim > 0 && rows.len().is_multiple_of(dim));
        Self { dim, rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i * self.dim..(i + 1) * self.dim]
    }
}

/// Row-stochastic `n × n` attention weights.
#[derive(Debug, Clone, PartialEq)]
pub struct AttentionMatrix {
    n: usize,
    weights: Vec<f64>,
}

impl AttentionMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.weights[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.weights.chunks(self.n)
    }
}

/// Row-wise softmax of `<v'_i, v'_j> / sqrt(d)`, with max subtraction.
pub fn attention(pv: &PositionalVectors) -> AttentionMatrix {
    let n = pv.len();
    let scale = 1.0 / (pv.dim() as f64).sqrt();
    let mut weights = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let logit = dot(pv.row(i), pv.row(j)) * scale;
            weights[i * n + j] = logit;
            weights[j * n + i] = logit;
        }
    }
    for row in weights.chunks_mut(n.max(1)) {
        let max = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut total = 0.0;
        for x in row.iter_mut() {
            *x = (*x - max).exp();
            total += *x;
        }
        for x in row.iter_mut() {
            *x /= total;
        }
    }
    AttentionMatrix { n, weights }
}

/// Element-wise `log2(1 + (y - x)^2)`.
pub fn log_kernel(x: &[f64], y: &[f64]) -> Vec<f64> {
    assert_eq!(x.len(), y.len(), "log_kernel operands differ in length");
    x.iter().zip(y).map(|(&a, &b)| log_kernel_scalar(a, b)).collect()
}

#[inline]
fn log_kernel_scalar(a: f64, b: f64) -> f64 {
    let diff = b - a;
    (diff * diff).ln_1p() * LOG2_E
}

/// Smooth frequency weight `a / (pr + a/2)`, in `(0, 2]`.
pub fn sfw(pr: f64, a: f64) -> f64 {
    a / (pr + a / 2.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SentenceEmbedding {
    /// `2d` components: contextual block, then raw word block.
    pub vector: Vec<f64>,
    /// Weight applied to each surviving token.
    pub token_weights: Vec<f64>,
    pub tokens: Vec<String>,
    /// Present only when diagnostics were requested.
    pub attention: Option<AttentionMatrix>,
}

impl SentenceEmbedding {
    pub fn dim(&self) -> usize {
        self.vector.len()
    }

    pub fn norm(&self) -> f64 {
        dot(&self.vector, &self.vector).sqrt()
    }
}

/// Encoder bound to a pair of lookup tables.
#[derive(Debug, Clone, Copy)]
pub struct Encoder<'a> {
    vectors: &'a VectorTable,
    freqs: &'a FrequencyTable,
    config: &'a EncoderConfig,
}

impl<'a> Encoder<'a> {
    pub fn new(vectors: &'a VectorTable, freqs: &'a FrequencyTable, config: &'a EncoderConfig) -> Result<Self> {
        config.validate()?;
        if vectors.dim() != config.dim {
            return Err(Error::DimensionMismatch {
                expected: config.dim,
                got: vectors.dim(),
            });
        }
        Ok(Self { vectors, freqs, config })
    }

    pub fn config(&self) -> &EncoderConfig {
        self.config
    }

    pub fn vectors(&self) -> &VectorTable {
        self.vectors
    }

    pub fn freqs(&self) -> &FrequencyTable {
        self.freqs
    }

    /// Tokenizes, filters and encodes a raw sentence.
    pub fn encode_str(&self, raw: &str, diagnostics: bool) -> Result<SentenceEmbedding> {
        self.encode(&self.vectors.tokenize(raw), diagnostics)
    }

    pub fn encode(&self, tokens: &TokenSequence, diagnostics: bool) -> Result<SentenceEmbedding> {
        let (words, weights) = self.lookup(tokens)?;
        let pv = PositionalVectors::build(words.iter().copied(), self.config.dim, self.config.use_positions);
        let attn = attention(&pv);
        let vector = combine(&pv, &attn, &words, &weights);
        Ok(SentenceEmbedding {
            vector,
            token_weights: weights,
            tokens: tokens.tokens.clone(),
            attention: diagnostics.then_some(attn),
        })
    }

    /// Per-word `[ctx_i ; v_i]` vectors before weighting and averaging.
    pub fn word_vectors(&self, tokens: &TokenSequence) -> Result<Vec<Vec<f64>>> {
        let (words, _) = self.lookup(tokens)?;
        let pv = PositionalVectors::build(words.iter().copied(), self.config.dim, self.config.use_positions);
        let attn = attention(&pv);
        Ok((0..pv.len())
            .map(|i| {
                let mut out = contextual_row(&pv, &attn, i);
                out.extend(words[i].iter().map(|&x| x as f64));
                out
            })
            .collect())
    }

    fn lookup(&self, tokens: &TokenSequence) -> Result<(Vec<&'a [f32]>, Vec<f64>)> {
        if tokens.is_empty() {
            return Err(Error::EmptyAfterFiltering);
        }
        let mut words = Vec::with_capacity(tokens.len());
        let mut weights = Vec::with_capacity(tokens.len());
        for token in &tokens.tokens {
            // Callers are expected to filter first; an unknown token here is
            // treated the same way the filter would treat it.
            let Some(v) = self.vectors.get(token) else {
                continue;
            };
            words.push(v);
            weights.push(self.config.weight(self.freqs.prob_or_zero(token)));
        }
        if words.is_empty() {
            return Err(Error::EmptyAfterFiltering);
        }
        Ok((words, weights))
    }
}

/// Free-function form of [`Encoder::encode`].
pub fn encode(
    tokens: &TokenSequence,
    vectors: &VectorTable,
    freqs: &FrequencyTable,
    config: &EncoderConfig,
    diagnostics: bool,
) -> Result<SentenceEmbedding> {
    Encoder::new(vectors, freqs, config)?.encode(tokens, diagnostics)
}

/// `ctx_i = sum_j A_ij * log_kernel(v'_i, v'_j)`.
pub fn contextual_row(pv: &PositionalVectors, attn: &AttentionMatrix, i: usize) -> Vec<f64> {
    let mut out = vec![0.0; pv.dim()];
    let vi = pv.row(i);
    for j in 0..pv.len() {
        let w = attn.get(i, j);
        for ((o, &a), &b) in out.iter_mut().zip(vi).zip(pv.row(j)) {
            *o += w * log_kernel_scalar(a, b);
        }
    }
    out
}

/// Weighted average of `[ctx_i ; v_i]`.
///
/// The kernel is symmetric, so each unordered pair is evaluated once and
/// scattered with coefficient `(w_i A_ij + w_j A_ji) / n`.
fn combine(pv: &PositionalVectors, attn: &AttentionMatrix, words: &[&[f32]], weights: &[f64]) -> Vec<f64> {
    let n = pv.len();
    let d = pv.dim();
    let inv_n = 1.0 / n as f64;
    let mut out = vec![0.0; 2 * d];
    let (ctx, raw) = out.split_at_mut(d);
    for i in 0..n {
        let vi = pv.row(i);
        for j in (i + 1)..n {
            let coef = (weights[i] * attn.get(i, j) + weights[j] * attn.get(j, i)) * inv_n;
            for ((o, &a), &b) in ctx.iter_mut().zip(vi).zip(pv.row(j)) {
                *o += coef * log_kernel_scalar(a, b);
            }
        }
        let w = weights[i] * inv_n;
        for (o, &x) in raw.iter_mut().zip(words[i]) {
            *o += w * x as f64;
        }
    }
    out
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
