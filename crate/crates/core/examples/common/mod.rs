//! Shared setup for the examples: real resources from `$NOPPA_DATA_DIR` when
//! present, otherwise a small built-in vocabulary so every example runs
//! offline.

#![allow(dead_code)]

use noppa::evalkit::Resources;
use noppa::lexicon::{FrequencyTable, VectorTable};

const DIM: usize = 8;

/// `(word, topic, rank)`: words in one topic share a direction; rank orders
/// the made-up corpus counts.
const DEMO: &[(&str, usize, u64)] = &[
    ("the", 0, 1),
    (".", 0, 2),
    (",", 0, 3),
    ("of", 0, 4),
    ("and", 0, 5),
    ("to", 0, 6),
    ("a", 0, 7),
    ("in", 0, 8),
    ("is", 0, 9),
    ("was", 0, 10),
    ("it", 0, 11),
    ("with", 0, 12),
    ("by", 0, 13),
    ("at", 0, 14),
    ("are", 0, 15),
    ("this", 0, 16),
    ("not", 0, 20),
    ("very", 0, 30),
    ("film", 1, 120),
    ("movie", 1, 150),
    ("story", 1, 300),
    ("plot", 1, 900),
    ("actor", 1, 700),
    ("ending", 1, 1500),
    ("show", 1, 200),
    ("scene", 1, 800),
    ("good", 2, 100),
    ("great", 2, 180),
    ("moving", 2, 2500),
    ("brilliant", 2, 3000),
    ("fine", 2, 600),
    ("funny", 2, 1200),
    ("bad", 3, 400),
    ("awful", 3, 4000),
    ("dull", 3, 5000),
    ("boring", 3, 3500),
    ("poor", 3, 1100),
    ("mess", 3, 4500),
    ("man", 4, 110),
    ("women", 4, 350),
    ("dogs", 4, 2000),
    ("cats", 4, 2200),
    ("name", 4, 250),
    ("phone", 4, 1300),
    ("air", 4, 600),
    ("special", 4, 400),
    ("large", 4, 500),
    ("past", 4, 450),
    ("emotional", 2, 2600),
    ("easy", 2, 900),
    ("need", 0, 140),
    ("found", 0, 160),
    ("ran", 4, 1800),
    ("park", 4, 1600),
    ("barked", 4, 6000),
    ("loudly", 4, 5500),
];

/// Deterministic demo tables: topic direction plus a small word-specific
/// offset, and Zipf counts `10^7 / rank`.
pub fn demo_tables() -> (VectorTable, FrequencyTable) {
    let vectors = DEMO.iter().enumerate().map(|(i, &(w, topic, _))| {
        let v: Vec<f32> = (0..DIM)
            .map(|j| {
                let axis = if j == topic { 1.0 } else { 0.0 };
                let jitter = ((i * 31 + j * 17) as f32 * 0.618).sin() * 0.25;
                let sign = if topic == 3 && j == 2 { -1.0 } else { 0.0 };
                axis + sign + jitter
            })
            .collect();
        (w, v)
    });
    let vt = VectorTable::from_pairs(DIM, vectors).expect("demo vectors");
    let ft = FrequencyTable::from_counts(DEMO.iter().map(|&(w, _, rank)| (w, 10_000_000 / rank))).expect("demo counts");
    (vt, ft)
}

/// Tables from `$NOPPA_DATA_DIR` if available, else the demo tables. The
/// label says which.
pub fn tables() -> (VectorTable, FrequencyTable, &'static str) {
    match Resources::from_env().and_then(|r| r.load_tables()) {
        Ok((vt, ft)) => (vt, ft, "pre-trained vectors from NOPPA_DATA_DIR"),
        Err(_) => {
            let (vt, ft) = demo_tables();
            (vt, ft, "built-in demo vocabulary")
        }
    }
}

pub const SENTENCES: &[&str] = &[
    "The film was good .",
    "The movie was very boring .",
    "A brilliant and moving story with a great ending .",
    "The plot is a dull mess , the actor is awful .",
    "The man found the dogs in the park .",
    "The dogs barked loudly at the cats .",
    "This show is funny and easy to watch .",
    "It was not a good film .",
];

/// `count` random word sequences over the demo vocabulary.
pub fn random_sentences(count: usize, seed: u64) -> Vec<String> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.random_range(4..16);
            (0..len)
                .map(|_| DEMO[rng.random_range(0..DEMO.len())].0)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}
