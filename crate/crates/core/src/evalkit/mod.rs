//! Downstream evaluation: dataset loading, a small MLP classifier, baseline
//! embedders, grid search and timing harnesses.

pub mod bench;
pub mod classifier;
pub mod dataset;
pub mod embedder;
pub mod grid;
pub mod resources;

pub use bench::{bench_throughput, scaling_probe, ScalingReport, ThroughputReport};
pub use classifier::{train_classifier, ClassifierConfig, Mlp, TrainReport};
pub use dataset::{load_dataset, DatasetFormat, Example, LabeledDataset, Split};
pub use embedder::{embed_examples, EmbedderSpec, Variant};
pub use grid::{grid_search, EvalResult, GridConfig, GridReport};
pub use resources::Resources;
