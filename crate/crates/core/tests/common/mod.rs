#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const WORDS: [&str; 24] = [
    "the", "a", "of", "and", "is", "film", "movie", "story", "actor", "plot", "good", "great", "fine", "moving", "bad",
    "awful", "dull", "poor", "was", "very", "not", "really", "quite", "ending",
];

/// Writes a random `dim`-dimensional vector file and a matching frequency
/// file for [`WORDS`] into `dir`; returns `(vectors, freq)`.
pub fn write_tables(dir: &Path, dim: usize, seed: u64) -> (PathBuf, PathBuf) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vectors = String::new();
    let mut freq = String::new();
    for (i, w) in WORDS.iter().enumerate() {
        let mut row = vec![w.to_string()];
        // Sentiment words share a signed first component so a classifier can
        // separate them.
        for j in 0..dim {
            let base = match (j, i) {
                (0, 10..=13) => 1.0,
                (0, 14..=17) => -1.0,
                _ => 0.0,
            };
            row.push(format!("{:.5}", base + rng.random_range(-0.3..0.3)));
        }
        vectors.push_str(&row.join(" "));
        vectors.push('\n');
        freq.push_str(&format!("{w}\t{}\n", 100_000 / (i + 1)));
    }
    let vp = dir.join("vectors.txt");
    let fp = dir.join("freq.tsv");
    fs::write(&vp, vectors).unwrap();
    fs::write(&fp, freq).unwrap();
    (vp, fp)
}

/// Random sentences over [`WORDS`], one per line.
pub fn sentences(count: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.random_range(3..12);
            (0..len)
                .map(|_| WORDS[rng.random_range(0..WORDS.len())])
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}

/// Labelled `label<TAB>sentence` lines whose label follows the sentiment
/// word they contain.
pub fn labelled(count: usize, seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::new();
    for i in 0..count {
        let label = i % 2;
        let adj = if label == 1 {
            WORDS[10 + rng.random_range(0..4)]
        } else {
            WORDS[14 + rng.random_range(0..4)]
        };
        let noun = WORDS[5 + rng.random_range(0..5)];
        let filler = WORDS[18 + rng.random_range(0..6)];
        out.push_str(&format!("{label}\tthe {noun} {filler} {adj} {i}\n"));
    }
    out
}

pub fn noppa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_noppa"))
        .args(args)
        .output()
        .expect("spawn noppa")
}

pub fn noppa_env(args: &[&str], key: &str, value: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_noppa"))
        .args(args)
        .env(key, value)
        .output()
        .expect("spawn noppa")
}

pub fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

pub fn parse_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .map(|l| l.split(',').map(|x| x.parse::<f64>().unwrap()).collect())
        .collect()
}
