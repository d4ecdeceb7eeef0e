use std::hint::black_box;
use std::time::Instant;

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

use crate::denoiser::{self, NoiseModel};
use crate::encoder::{Encoder, EncoderConfig};
use crate::error::{Error, Result};
use crate::lexicon::{FrequencyTable, TokenSequence, VectorTable};
use crate::pipeline::Pipeline;

/// Summary of repeated wall-time samples, in seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct TimingStats {
    pub samples: Vec<f64>,
    pub mean: f64,
    /// Standard error of the mean.
    pub stderr: f64,
    pub best: f64,
}

impl TimingStats {
    pub fn from_samples(samples: Vec<f64>) -> Self {
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let var = if samples.len() > 1 {
            samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        let best = samples.iter().copied().fold(f64::INFINITY, f64::min);
        Self {
            samples,
            mean,
            stderr: (var / n).sqrt(),
            best,
        }
    }
}

impl std::fmt::Display for TimingStats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{:.4}s ± {:.4}s (best {:.4}s, n={})",
            self.mean,
            self.stderr,
            self.best,
            self.samples.len()
        )
    }
}

#[derive(Debug, Clone)]
pub struct ThroughputReport {
    pub sentences: usize,
    /// Sentences with no known token; skipped in both passes.
    pub failed: usize,
    pub encode: TimingStats,
    pub encode_denoise: TimingStats,
    /// Rank of the projection applied in the second pass (0 when the
    /// pipeline carries no noise model).
    pub k: usize,
}

fn time<T>(f: impl FnOnce() -> T) -> (f64, T) {
    let t0 = Instant::now();
    let out = f();
    (t0.elapsed().as_secs_f64(), out)
}

/// Wall time of encoding `sentences` end to end, with and without the
/// pipeline's noise removal. Encoding fans out over the current rayon pool.
pub fn bench_throughput(sentences: &[String], pipeline: &Pipeline, repetitions: usize) -> Result<ThroughputReport> {
    if repetitions < 3 {
        return Err(Error::InvalidConfig(format!(
            "repetitions must be >= 3, got {repetitions}"
        )));
    }
    let encoder = pipeline.encoder();
    let identity = NoiseModel::identity(2 * pipeline.config.dim);
    let noise = pipeline.noise.as_ref().unwrap_or(&identity);
    let encode_all = |denoise: bool| -> Result<usize> {
        let rows: Vec<Option<Vec<f64>>> = sentences
            .par_iter()
            .map(|s| match encoder.encode_str(s, false) {
                Ok(e) if denoise => noise.remove_vector(&e.vector).map(Some),
                Ok(e) => Ok(Some(e.vector)),
                Err(Error::EmptyAfterFiltering) => Ok(None),
                Err(e) => Err(e),
            })
            .collect::<Result<_>>()?;
        Ok(black_box(rows).iter().filter(|r| r.is_none()).count())
    };
    let mut encode = Vec::with_capacity(repetitions);
    let mut both = Vec::with_capacity(repetitions);
    let mut failed = 0;
    for _ in 0..repetitions {
        let (t, f) = time(|| encode_all(false));
        failed = f?;
        encode.push(t);
        let (t, f) = time(|| encode_all(true));
        f?;
        both.push(t);
    }
    Ok(ThroughputReport {
        sentences: sentences.len(),
        failed,
        encode: TimingStats::from_samples(encode),
        encode_denoise: TimingStats::from_samples(both),
        k: noise.k(),
    })
}

/// Encode and denoise timings for synthetic sentences of length `n` and `2n`.
#[derive(Debug, Clone)]
pub struct ScalingReport {
    pub n: usize,
    pub dim: usize,
    pub count: usize,
    /// Best-of encode time for length `n`.
    pub encode_short: f64,
    /// Best-of encode time for length `2n`.
    pub encode_long: f64,
    pub denoise_short: f64,
    pub denoise_long: f64,
}

impl ScalingReport {
    pub fn encode_ratio(&self) -> f64 {
        self.encode_long / self.encode_short
    }

    pub fn denoise_ratio(&self) -> f64 {
        self.denoise_long / self.denoise_short
    }
}

impl std::fmt::Display for ScalingReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "d={} sentences={} encode n={}: {:.4}s, n={}: {:.4}s, ratio {:.3}; denoise {:.5}s vs {:.5}s, ratio {:.3}",
            self.dim,
            self.count,
            self.n,
            self.encode_short,
            2 * self.n,
            self.encode_long,
            self.encode_ratio(),
            self.denoise_short,
            self.denoise_long,
            self.denoise_ratio()
        )
    }
}

/// Random Gaussian vocabulary with Zipf-like counts, for benchmarks and demos.
pub fn synthetic_tables(vocab: usize, dim: usize, seed: u64) -> Result<(VectorTable, FrequencyTable)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0f32, 0.4).expect("valid normal");
    let words: Vec<String> = (0..vocab).map(|i| format!("w{i}")).collect();
    let vt = VectorTable::from_pairs(
        dim,
        words.iter().map(|w| {
            (
                w.as_str(),
                (0..dim).map(|_| normal.sample(&mut rng)).collect::<Vec<_>>(),
            )
        }),
    )?;
    let ft = FrequencyTable::from_counts(
        words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.as_str(), 1 + 1_000_000 / (i as u64 + 1))),
    )?;
    Ok((vt, ft))
}

fn random_sentences(vt: &VectorTable, len: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<TokenSequence> {
    let vocab: Vec<&str> = vt.iter().map(|(w, _)| w).collect();
    (0..count)
        .map(|_| {
            TokenSequence::new(
                (0..len)
                    .map(|_| vocab[rng.random_range(0..vocab.len())].to_string())
                    .collect(),
            )
        })
        .collect()
}

/// Times the encoder on `count` random sentences of length `n` and `2n`
/// (best of `repetitions`), and the noise projection on both sets of
/// embeddings. The pairwise stage is quadratic in length, so the encode
/// ratio should approach 4; the projection acts on fixed-size vectors, so
/// its ratio should stay near 1.
pub fn scaling_probe(
    n: usize,
    dim: usize,
    count: usize,
    repetitions: usize,
    k: usize,
    seed: u64,
) -> Result<ScalingReport> {
    if repetitions == 0 || n == 0 || count == 0 {
        return Err(Error::InvalidConfig(
            "scaling probe needs n, count and repetitions > 0".into(),
        ));
    }
    let (vt, ft) = synthetic_tables(2000, dim, seed)?;
    let cfg = EncoderConfig::new(dim, 0.01);
    let encoder = Encoder::new(&vt, &ft, &cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5ca1e);
    let short = random_sentences(&vt, n, count, &mut rng);
    let long = random_sentences(&vt, 2 * n, count, &mut rng);

    let encode_set = |set: &[TokenSequence]| -> Result<(f64, Array2<f64>)> {
        let mut best = f64::INFINITY;
        let mut rows = Vec::new();
        for _ in 0..repetitions {
            let (t, out) = time(|| {
                set.par_iter()
                    .map(|s| encoder.encode(s, false).map(|e| e.vector))
                    .collect::<Result<Vec<_>>>()
            });
            rows = black_box(out?);
            best = best.min(t);
        }
        denoiser::stack(rows.iter().map(Vec::as_slice)).map(|m| (best, m))
    };
    let (encode_short, x_short) = encode_set(&short)?;
    let (encode_long, x_long) = encode_set(&long)?;

    let model = denoiser::fit(&x_short, k.min(2 * dim))?;
    // The projection is cheap, so it gets more samples than the encoder.
    let denoise_set = |x: &Array2<f64>| -> Result<f64> {
        let mut best = f64::INFINITY;
        for _ in 0..repetitions.max(3) * 5 {
            let (t, out) = time(|| model.remove_rows(x));
            black_box(out?);
            best = best.min(t);
        }
        Ok(best)
    };
    let denoise_short = denoise_set(&x_short)?;
    let denoise_long = denoise_set(&x_long)?;
    Ok(ScalingReport {
        n,
        dim,
        count,
        encode_short,
        encode_long,
        denoise_short,
        denoise_long,
    })
}

/// One-line description of the host, printed next to timings.
pub fn machine_info() -> String {
    let cpu = std::fs::read_to_string("/proc/cpuinfo")
        .ok()
        .and_then(|s| {
            s.lines()
                .find(|l| l.starts_with("model name"))
                .and_then(|l| l.split_once(':'))
                .map(|(_, v)| v.trim().to_string())
        })
        .unwrap_or_else(|| "unknown cpu".into());
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    format!(
        "# machine: {cpu}; {} {}; {cores} logical cores; {} worker threads; {} build",
        std::env::consts::OS,
        std::env::consts::ARCH,
        rayon::current_num_threads(),
        if cfg!(debug_assertions) { "debug" } else { "optimized" }
    )
}
