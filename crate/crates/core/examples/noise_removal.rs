//! Fit a noise model on a training batch, save and reload it, and show how
//! much of each held-out embedding the projection removes.
//!
//! ```text
//! cargo run --example noise_removal
//! ```

mod common;

use noppa::denoiser::{self, NoiseModel};
use noppa::encoder::EncoderConfig;
use noppa::pipeline::Pipeline;

fn main() -> noppa::error::Result<()> {
    let (vectors, freqs, source) = common::tables();
    println!("# {source}");
    let config = EncoderConfig::new(vectors.dim(), 0.05);
    let pipeline = Pipeline::new(vectors, freqs, config)?;

    let train: Vec<Vec<f64>> = common::random_sentences(500, 11)
        .iter()
        .filter_map(|s| pipeline.embed_raw(s, false).ok())
        .map(|e| e.vector)
        .collect();
    let x = denoiser::stack(train.iter().map(Vec::as_slice))?;
    let spectrum = denoiser::NoiseSpectrum::fit(&x)?;
    let sv: Vec<String> = spectrum.singular_values().iter().map(|s| format!("{s:.3}")).collect();
    println!("singular values: {}", sv.join(" "));

    let k = 3;
    let model = spectrum.model(k)?;
    let path = std::env::temp_dir().join("noppa-example-noise.txt");
    model.save(&path)?;
    let reloaded = NoiseModel::load(&path)?;
    assert_eq!(model, reloaded);
    println!("saved k={k} model to {}", path.display());

    let pipeline = pipeline.with_noise(reloaded)?;
    for sentence in common::SENTENCES {
        let before = pipeline.embed_raw(sentence, false)?.vector;
        let after = pipeline.embed(sentence, false)?.vector;
        let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
        println!(
            "{:>8.4}% of norm removed  {sentence}",
            100.0 * (1.0 - norm(&after) / norm(&before))
        );
    }
    Ok(())
}
