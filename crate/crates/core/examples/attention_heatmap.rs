//! Print the attention matrix of a sentence as a shaded text heatmap, then
//! the CSV the `attention` subcommand writes.
//!
//! ```text
//! cargo run --example attention_heatmap -- "the dogs barked loudly at the cats"
//! ```

mod common;

use noppa::analysis::attention_report;
use noppa::encoder::EncoderConfig;
use noppa::pipeline::Pipeline;

fn main() -> noppa::error::Result<()> {
    let sentence = std::env::args()
        .nth(1)
        .unwrap_or_else(|| common::SENTENCES[5].to_owned());
    let (vectors, freqs, source) = common::tables();
    println!("# {source}");
    let config = EncoderConfig::new(vectors.dim(), 0.05);
    let pipeline = Pipeline::new(vectors, freqs, config)?;
    let report = attention_report(&sentence, &pipeline)?;

    let shades = [' ', '.', ':', '-', '=', '+', '*', '#', '%', '@'];
    let width = report.tokens.iter().map(String::len).max().unwrap_or(1);
    for (token, row) in report.tokens.iter().zip(&report.weights) {
        let cells: String = row
            .iter()
            .map(|&w| shades[((w * (shades.len() - 1) as f64).round() as usize).min(shades.len() - 1)])
            .flat_map(|c| [c, c])
            .collect();
        println!("{token:>width$} |{cells}|");
    }
    println!();
    report.write_csv(std::io::stdout())
}
