//! Encode a few sentences and print their embeddings and token weights.
//!
//! ```text
//! cargo run --example embed_sentences
//! ```

mod common;

use noppa::encoder::EncoderConfig;
use noppa::pipeline::Pipeline;

fn main() -> noppa::error::Result<()> {
    let (vectors, freqs, source) = common::tables();
    println!("# {source}, d = {}", vectors.dim());
    let config = EncoderConfig::new(vectors.dim(), 0.05);
    let pipeline = Pipeline::new(vectors, freqs, config)?;
    for sentence in common::SENTENCES {
        let e = pipeline.embed(sentence, false)?;
        let head: Vec<String> = e.vector.iter().take(4).map(|x| format!("{x:+.4}")).collect();
        println!("{sentence}");
        println!(
            "  dim {} norm {:.4} first components [{}]",
            e.dim(),
            e.norm(),
            head.join(", ")
        );
        let weights: Vec<String> = e
            .tokens
            .iter()
            .zip(&e.token_weights)
            .map(|(t, w)| format!("{t}:{w:.3}"))
            .collect();
        println!("  weights {}", weights.join(" "));
    }
    Ok(())
}
