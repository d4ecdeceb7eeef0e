use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;

use crate::denoiser::{NoiseModel, NoiseSpectrum};
use crate::encoder::EncoderConfig;
use crate::error::{Error, Result};
use crate::evalkit::classifier::{train_classifier, ClassifierConfig};
use crate::evalkit::dataset::LabeledDataset;
use crate::evalkit::embedder::{embed_examples, EmbedderSpec, Variant};
use crate::lexicon::{FrequencyTable, VectorTable};

/// Documented search ranges for `a` and `k`.
pub const A_RANGE: (f64, f64) = (0.01, 0.15);
pub const K_RANGE: (usize, usize) = (0, 24);

pub const RUN_LOG_HEADER: &str = "dataset,variant,a,k,seed,dev_acc,test_acc,embed_ms,train_ms";

#[derive(Debug, Clone)]
pub struct GridConfig {
    pub a_grid: Vec<f64>,
    pub k_grid: Vec<usize>,
    pub seeds: Vec<u64>,
    pub classifier: ClassifierConfig,
    pub use_positions: bool,
    /// Fit the noise model on train and (unlabelled) test sentences.
    pub include_unlabeled_test: bool,
    /// Reject grid points outside [`A_RANGE`] / [`K_RANGE`].
    pub enforce_ranges: bool,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            a_grid: vec![0.01, 0.03, 0.05, 0.1],
            k_grid: vec![0, 5, 10, 15, 20],
            seeds: vec![1034],
            classifier: ClassifierConfig::default(),
            use_positions: true,
            include_unlabeled_test: false,
            enforce_ranges: true,
        }
    }
}

/// One trained-and-scored configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult {
    pub dataset: String,
    pub variant: Variant,
    pub a: f64,
    pub k: usize,
    pub seed: u64,
    /// Percent.
    pub dev_accuracy: f64,
    /// Percent.
    pub test_accuracy: f64,
    /// Embedding plus noise fitting for this `a`, shared across `k` and seeds.
    pub embed_ms: f64,
    pub train_ms: f64,
}

impl EvalResult {
    /// One CSV line matching [`RUN_LOG_HEADER`].
    pub fn log_line(&self) -> String {
        format!(
            "{},{},{},{},{},{:.2},{:.2},{:.1},{:.1}",
            self.dataset,
            self.variant,
            self.a,
            self.k,
            self.seed,
            self.dev_accuracy,
            self.test_accuracy,
            self.embed_ms,
            self.train_ms
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeedSummary {
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
    pub seeds: usize,
}

impl std::fmt::Display for SeedSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:.1}±{:.2}", self.mean, self.std)
    }
}

pub fn summarize(values: &[f64]) -> SeedSummary {
    let n = values.len().max(1) as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    SeedSummary {
        mean,
        std: var.sqrt(),
        seeds: values.len(),
    }
}

#[derive(Debug, Clone)]
pub struct GridReport {
    /// Every run in evaluation order.
    pub runs: Vec<EvalResult>,
}

impl GridReport {
    /// Highest dev accuracy over all runs; the earliest run wins ties.
    pub fn best(&self) -> &EvalResult {
        argmax_dev(self.runs.iter()).expect("grid has at least one run")
    }

    /// Dev-selected run for each seed, in seed order of first appearance.
    pub fn best_per_seed(&self) -> Vec<&EvalResult> {
        let mut seeds: Vec<u64> = Vec::new();
        for r in &self.runs {
            if !seeds.contains(&r.seed) {
                seeds.push(r.seed);
            }
        }
        seeds
            .iter()
            .filter_map(|&s| argmax_dev(self.runs.iter().filter(|r| r.seed == s)))
            .collect()
    }

    /// Mean and spread of the dev-selected test accuracy across seeds.
    pub fn summary(&self) -> SeedSummary {
        let accs: Vec<f64> = self.best_per_seed().iter().map(|r| r.test_accuracy).collect();
        summarize(&accs)
    }

    pub fn log(&self) -> String {
        let mut out = String::from(RUN_LOG_HEADER);
        out.push('\n');
        for r in &self.runs {
            writeln!(out, "{}", r.log_line()).expect("String write");
        }
        out
    }
}

fn argmax_dev<'a>(runs: impl Iterator<Item = &'a EvalResult>) -> Option<&'a EvalResult> {
    runs.fold(None, |best: Option<&EvalResult>, r| match best {
        Some(b) if b.dev_accuracy >= r.dev_accuracy => Some(b),
        _ => Some(r),
    })
}

fn check_ranges(grid: &GridConfig) -> Result<()> {
    if grid.a_grid.is_empty() || grid.k_grid.is_empty() || grid.seeds.is_empty() {
        return Err(Error::InvalidConfig(
            "a grid, k grid and seeds must be non-empty".into(),
        ));
    }
    if grid.a_grid.iter().any(|&a| a.is_nan() || a <= 0.0) {
        return Err(Error::InvalidConfig("a must be positive".into()));
    }
    if grid.enforce_ranges {
        if let Some(a) = grid.a_grid.iter().find(|&&a| a < A_RANGE.0 || a > A_RANGE.1) {
            return Err(Error::InvalidConfig(format!(
                "a = {a} outside [{}, {}]",
                A_RANGE.0, A_RANGE.1
            )));
        }
        if let Some(k) = grid.k_grid.iter().find(|&&k| k > K_RANGE.1) {
            return Err(Error::InvalidConfig(format!(
                "k = {k} outside [{}, {}]",
                K_RANGE.0, K_RANGE.1
            )));
        }
    }
    Ok(())
}

/// Exhaustive search over `a_grid × k_grid × seeds`.
///
/// Axes a variant does not use collapse to one point: the first `a` for
/// unweighted variants and `k = 0` without noise removal. Each run trains a
/// fresh classifier on the train split, is scored on dev for selection and
/// on test for reporting.
pub fn grid_search(
    dataset: &LabeledDataset,
    variant: Variant,
    vectors: &VectorTable,
    freqs: &FrequencyTable,
    grid: &GridConfig,
) -> Result<GridReport> {
    check_ranges(grid)?;
    let a_grid: Vec<f64> = if variant.uses_frequency_weights() {
        grid.a_grid.clone()
    } else {
        grid.a_grid[..1].to_vec()
    };
    let k_grid: Vec<usize> = if variant.uses_noise_removal() {
        grid.k_grid.clone()
    } else {
        vec![0]
    };

    let mut runs = Vec::new();
    for &a in &a_grid {
        let started = Instant::now();
        let config = EncoderConfig::new(vectors.dim(), a).with_positions(grid.use_positions);
        let spec = EmbedderSpec::new(variant, config);
        let train = embed_examples(&dataset.train, &spec, vectors, freqs)?;
        let dev = embed_examples(&dataset.dev, &spec, vectors, freqs)?;
        let test = embed_examples(&dataset.test, &spec, vectors, freqs)?;
        let spectrum = if variant.uses_noise_removal() {
            let fit_rows = if grid.include_unlabeled_test {
                ndarray::concatenate![ndarray::Axis(0), train.sentence_rows(), test.sentence_rows()]
            } else {
                train.sentence_rows()
            };
            Some(NoiseSpectrum::fit(&fit_rows)?)
        } else {
            None
        };
        let embed_ms = started.elapsed().as_secs_f64() * 1e3;

        for &k in &k_grid {
            let noise: Option<NoiseModel> = spectrum.as_ref().map(|s| s.model(k)).transpose()?;
            let train_x = train.features(noise.as_ref())?;
            let dev_x = dev.features(noise.as_ref())?;
            let test_x = test.features(noise.as_ref())?;
            let results: Vec<EvalResult> = grid
                .seeds
                .par_iter()
                .map(|&seed| {
                    let t0 = Instant::now();
                    let cfg = ClassifierConfig {
                        seed,
                        ..grid.classifier.clone()
                    };
                    let (model, report) =
                        train_classifier(&train_x, &train.y, &dev_x, &dev.y, dataset.label_count, &cfg)?;
                    let train_ms = t0.elapsed().as_secs_f64() * 1e3;
                    let dev_accuracy = if dev.y.is_empty() {
                        report.best_dev_accuracy
                    } else {
                        model.accuracy(&dev_x, &dev.y)
                    };
                    Ok(EvalResult {
                        dataset: dataset.name.clone(),
                        variant,
                        a,
                        k,
                        seed,
                        dev_accuracy,
                        test_accuracy: model.accuracy(&test_x, &test.y),
                        embed_ms,
                        train_ms,
                    })
                })
                .collect::<Result<_>>()?;
            runs.extend(results);
        }
    }
    Ok(GridReport { runs })
}
