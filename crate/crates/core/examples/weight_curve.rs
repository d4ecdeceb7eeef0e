//! Mean frequency weight of stopwords and content words as `a` shrinks: the
//! gap between the two groups shows which `a` separates them best.
//!
//! ```text
//! cargo run --example weight_curve
//! ```

mod common;

use noppa::analysis::{weight_curve, DEFAULT_A_GRID, DEFAULT_CONTENT_WORDS, DEFAULT_STOPWORDS};

fn main() -> noppa::error::Result<()> {
    let (_, freqs, source) = common::tables();
    println!("# {source}");
    let groups = vec![
        ("stopwords".to_owned(), DEFAULT_STOPWORDS.to_vec()),
        ("content".to_owned(), DEFAULT_CONTENT_WORDS.to_vec()),
    ];
    let curve = weight_curve(&groups, &freqs, &DEFAULT_A_GRID)?;
    let stop = curve.group("stopwords").expect("group");
    let content = curve.group("content").expect("group");
    println!("{:>10} {:>10} {:>10} {:>8}", "a", "stopwords", "content", "gap");
    for (i, a) in curve.a_values.iter().enumerate() {
        println!(
            "{a:>10} {:>10.4} {:>10.4} {:>8.4}",
            stop[i],
            content[i],
            content[i] - stop[i]
        );
    }
    curve.write_csv(std::io::stdout(), source)
}
