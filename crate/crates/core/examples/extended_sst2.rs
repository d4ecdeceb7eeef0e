//! Full-split SST-2 run with a dense grid and five seeds, reported against
//! the published 84.1 ± 1.0 target. Needs GloVe-6B, `freq.tsv` and SST-2
//! under `$NOPPA_DATA_DIR`; expect hours of CPU time.
//!
//! Shortfalls are most likely explained by tokenisation and OOV handling,
//! which the reference numbers leave unspecified: this crate lowercases,
//! splits off punctuation and drops words without a vector.
//!
//! ```text
//! NOPPA_DATA_DIR=/data cargo run --release --example extended_sst2 -- [runs.csv]
//! ```

use std::process::ExitCode;

use noppa::evalkit::{grid_search, GridConfig, Resources, Variant};

const TARGET: f64 = 84.1;
const TOLERANCE: f64 = 1.0;

fn main() -> ExitCode {
    let resources = match Resources::from_env() {
        Ok(r) if r.sst2.is_some() => r,
        Ok(_) => {
            eprintln!("SST-2 not found under $NOPPA_DATA_DIR (expected SST2/sentiment-{{train,dev,test}})");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    match run(&resources) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(resources: &Resources) -> noppa::error::Result<bool> {
    let (vectors, freqs) = resources.load_tables()?;
    let dataset = resources.sentiment_dataset()?;
    let oov: usize = dataset
        .train
        .iter()
        .map(|e| vectors.tokenize(&e.text).dropped.len())
        .sum();
    println!(
        "# vectors {} d={}; sst2 {} / {} / {}; {oov} OOV train tokens dropped",
        resources.vectors.display(),
        vectors.dim(),
        dataset.train.len(),
        dataset.dev.len(),
        dataset.test.len()
    );
    let grid = GridConfig {
        a_grid: vec![0.01, 0.02, 0.03, 0.05, 0.07, 0.1, 0.15],
        k_grid: (0..=24).step_by(2).collect(),
        seeds: vec![1034, 1035, 1036, 1037, 1038],
        ..Default::default()
    };
    let report = grid_search(&dataset, Variant::Noppa, &vectors, &freqs, &grid)?;
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, report.log()).map_err(|e| noppa::error::Error::Io {
            path: path.into(),
            source: e,
        })?;
    }
    let summary = report.summary();
    let best = report.best();
    println!("sst2 noppa {summary} (dev-best a={} k={})", best.a, best.k);
    let gap = summary.mean - TARGET;
    if gap.abs() <= TOLERANCE {
        println!("within {TOLERANCE} pt of {TARGET}");
        Ok(true)
    } else {
        println!("off target by {gap:+.2} pt; see the tokenisation/OOV note in this example's header");
        Ok(false)
    }
}
