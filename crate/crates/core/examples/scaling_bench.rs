//! Length-scaling probe: encode time for sentences of length n and 2n.
//!
//! ```text
//! cargo run --release --example scaling_bench -- [n] [count] [dim]
//! ```

use noppa::evalkit::bench::{machine_info, scaling_probe};

fn main() -> noppa::error::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<usize>().expect("integer argument"));
    let n = args.next().unwrap_or(64);
    let count = args.next().unwrap_or(1000);
    let dim = args.next().unwrap_or(300);
    println!("{}", machine_info());
    let report = scaling_probe(n, dim, count, 3, 10, 7)?;
    println!("{report}");
    println!(
        "encode ratio {:.2} (quadratic pairwise stage predicts just under 4); denoise ratio {:.2}",
        report.encode_ratio(),
        report.denoise_ratio()
    );
    Ok(())
}
