//! End-to-end encoding throughput, with and without noise removal.
//!
//! ```text
//! cargo run --release --example throughput_bench -- [sentences.txt]
//! ```

mod common;

use noppa::denoiser;
use noppa::encoder::EncoderConfig;
use noppa::evalkit::bench::{bench_throughput, machine_info};
use noppa::pipeline::Pipeline;

fn main() -> noppa::error::Result<()> {
    let (vectors, freqs, source) = common::tables();
    let sentences: Vec<String> = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path)
            .map_err(|e| noppa::error::Error::Io {
                path: path.into(),
                source: e,
            })?
            .lines()
            .map(str::to_owned)
            .collect(),
        None => (0..2000)
            .map(|i| common::SENTENCES[i % common::SENTENCES.len()].to_owned())
            .collect(),
    };
    let config = EncoderConfig::new(vectors.dim(), 0.05);
    let pipeline = Pipeline::new(vectors, freqs, config)?;
    let raw: Vec<Vec<f64>> = sentences
        .iter()
        .filter_map(|s| pipeline.embed_raw(s, false).ok())
        .map(|e| e.vector)
        .collect();
    let k = 5.min(raw.len()).min(2 * pipeline.config.dim);
    let model = denoiser::fit(&denoiser::stack(raw.iter().map(Vec::as_slice))?, k)?;
    let pipeline = pipeline.with_noise(model)?;

    let report = bench_throughput(&sentences, &pipeline, 10)?;
    println!("{}", machine_info());
    println!(
        "# {source}; {} sentences, {} without known tokens, k = {}",
        report.sentences, report.failed, report.k
    );
    println!("encode          {}", report.encode);
    println!("encode+denoise  {}", report.encode_denoise);
    Ok(())
}
