//! Compare every embedder variant on a sentiment task with the grid search
//! and MLP classifier.
//!
//! Uses SST-2 or MR from `$NOPPA_DATA_DIR` (2,000 / 500 / 500 subset) when
//! available, otherwise a generated toy task over the demo vocabulary.
//!
//! ```text
//! cargo run --release --example downstream_eval
//! ```

mod common;

use noppa::evalkit::{grid_search, Example, GridConfig, LabeledDataset, Resources, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Short reviews built from the demo vocabulary; the label follows the
/// adjective, with a few negations flipping it.
fn toy_task() -> LabeledDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let nouns = ["film", "movie", "story", "plot", "ending", "show", "scene", "actor"];
    let good = ["good", "great", "moving", "brilliant", "fine", "funny"];
    let bad = ["bad", "awful", "dull", "boring", "poor", "mess"];
    let filler = ["very", "the", "a", "this", "it", "and", "with", "man", "women", "past"];
    let mut make = |n: usize| -> Vec<Example> {
        (0..n)
            .map(|_| {
                let mut label = rng.random_range(0..2);
                let adj = if label == 1 {
                    good[rng.random_range(0..good.len())]
                } else {
                    bad[rng.random_range(0..bad.len())]
                };
                let negated = rng.random_bool(0.15);
                if negated {
                    label = 1 - label;
                }
                let mut words = vec!["the", nouns[rng.random_range(0..nouns.len())], "was"];
                if negated {
                    words.push("not");
                }
                words.push(adj);
                for _ in 0..rng.random_range(0..5) {
                    words.push(filler[rng.random_range(0..filler.len())]);
                }
                words.push(".");
                Example {
                    text: words.join(" "),
                    pair: None,
                    label,
                }
            })
            .collect()
    };
    LabeledDataset {
        name: "toy".into(),
        train: make(600),
        dev: make(150),
        test: make(150),
        label_count: 2,
    }
}

fn main() -> noppa::error::Result<()> {
    let (vectors, freqs, source) = common::tables();
    let dataset = match Resources::from_env().and_then(|r| r.sentiment_dataset()) {
        Ok(ds) => ds.subsample(2000, 500, 500, 1034),
        Err(_) => toy_task(),
    };
    println!(
        "# {source}; dataset {} ({} train / {} dev / {} test)",
        dataset.name,
        dataset.train.len(),
        dataset.dev.len(),
        dataset.test.len()
    );
    let k_max = (2 * vectors.dim()).min(20);
    let grid = GridConfig {
        a_grid: vec![0.01, 0.03, 0.05, 0.1],
        k_grid: [0, 5, 10, 15, 20].into_iter().filter(|&k| k <= k_max).collect(),
        seeds: vec![1034, 1035, 1036],
        ..Default::default()
    };
    println!("{:<18} {:>12} {:>8} {:>4}", "variant", "test acc", "best a", "k");
    for variant in Variant::ALL {
        let report = grid_search(&dataset, variant, &vectors, &freqs, &grid)?;
        let best = report.best();
        println!(
            "{:<18} {:>12} {:>8} {:>4}",
            variant.name(),
            report.summary().to_string(),
            best.a,
            best.k
        );
    }
    Ok(())
}
