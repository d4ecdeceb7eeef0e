//! Rank the words of a sentence by how much they contribute to its
//! embedding (cosine of each word with the sentence vector).
//!
//! ```text
//! cargo run --example contribution_scores -- "a brilliant and moving story"
//! ```

mod common;

use noppa::analysis::contribution_report;
use noppa::encoder::EncoderConfig;
use noppa::pipeline::Pipeline;

fn main() -> noppa::error::Result<()> {
    let sentence = std::env::args()
        .nth(1)
        .unwrap_or_else(|| common::SENTENCES[2].to_owned());
    let (vectors, freqs, source) = common::tables();
    println!("# {source}");
    let config = EncoderConfig::new(vectors.dim(), 0.05);
    let pipeline = Pipeline::new(vectors, freqs, config)?;
    let report = contribution_report(&sentence, &pipeline, false)?;
    let mut ranked: Vec<(&String, &f64)> = report.tokens.iter().zip(&report.scores).collect();
    ranked.sort_by(|a, b| b.1.total_cmp(a.1));
    for (token, score) in ranked {
        let bar = "#".repeat((score.max(0.0) * 40.0).round() as usize);
        println!("{token:>12} {score:+.3} {bar}");
    }
    Ok(())
}
