//! Diagnostic exports: attention heatmaps, per-word contribution scores and
//! weight-versus-`a` curves. Everything is emitted as CSV with a `#` comment
//! header describing the configuration.

use std::io::Write;

use crate::encoder::{dot, sfw};
use crate::error::{Error, Result};
use crate::lexicon::FrequencyTable;
use crate::pipeline::Pipeline;

/// Thirteen high-frequency function words and punctuation.
pub const DEFAULT_STOPWORDS: [&str; 13] = [
    "of", "the", "a", "in", "at", "to", "with", "by", "and", "are", "is", ".", ",",
];

/// Sixteen ordinary content words.
pub const DEFAULT_CONTENT_WORDS: [&str; 16] = [
    "film",
    "man",
    "women",
    "dogs",
    "cats",
    "name",
    "air",
    "phone",
    "special",
    "large",
    "past",
    "emotional",
    "easy",
    "need",
    "found",
    "show",
];

/// Log-spaced `a` values from 1 down to 3e-6.
pub const DEFAULT_A_GRID: [f64; 12] = [
    1.0, 0.3, 0.1, 0.03, 0.01, 0.003, 0.001, 0.0003, 0.0001, 0.00003, 0.00001, 0.000003,
];

#[derive(Debug, Clone)]
pub struct AttentionReport {
    pub tokens: Vec<String>,
    /// Row `i` holds the attention word `i` pays to every word.
    pub weights: Vec<Vec<f64>>,
    pub provenance: String,
}

pub fn attention_report(sentence: &str, pipeline: &Pipeline) -> Result<AttentionReport> {
    let e = pipeline.embed_raw(sentence, true)?;
    let attn = e.attention.expect("diagnostics requested");
    Ok(AttentionReport {
        tokens: e.tokens,
        weights: attn.rows().map(<[f64]>::to_vec).collect(),
        provenance: pipeline.provenance(),
    })
}

impl AttentionReport {
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# attention {}", self.provenance).map_err(io)?;
        writeln!(
            out,
            "# rows are softmax outputs rounded to 6 decimal places; each row sums to 1 within 1e-6"
        )
        .map_err(io)?;
        let mut csv = csv::Writer::from_writer(out);
        let mut header = vec![String::new()];
        header.extend(self.tokens.iter().cloned());
        csv.write_record(&header).map_err(csv_err)?;
        for (token, row) in self.tokens.iter().zip(&self.weights) {
            let mut record = vec![token.clone()];
            record.extend(row.iter().map(|x| format!("{x:.6}")));
            csv.write_record(&record).map_err(csv_err)?;
        }
        csv.flush().map_err(io)
    }
}

#[derive(Debug, Clone)]
pub struct ContributionReport {
    pub tokens: Vec<String>,
    /// Cosine between each word's tiled vector and the sentence embedding.
    pub scores: Vec<f64>,
    pub provenance: String,
}

/// Cosine similarity of `[v_w ; v_w]` against the sentence embedding.
///
/// Uses the denoised embedding when the pipeline carries a noise model,
/// unless `pre_denoise` is set.
pub fn contribution_report(sentence: &str, pipeline: &Pipeline, pre_denoise: bool) -> Result<ContributionReport> {
    let e = if pre_denoise {
        pipeline.embed_raw(sentence, false)?
    } else {
        pipeline.embed(sentence, false)?
    };
    let sentence_norm = e.norm();
    if sentence_norm == 0.0 || !sentence_norm.is_finite() {
        return Err(Error::DegenerateEmbedding);
    }
    let d = pipeline.config.dim;
    let (first, second) = e.vector.split_at(d);
    let scores = e
        .tokens
        .iter()
        .map(|t| {
            let v: Vec<f64> = pipeline
                .vectors
                .get(t)
                .expect("encoded tokens have vectors")
                .iter()
                .map(|&x| x as f64)
                .collect();
            let word_norm = (2.0 * dot(&v, &v)).sqrt();
            if word_norm == 0.0 {
                return 0.0;
            }
            let cos = (dot(&v, first) + dot(&v, second)) / (word_norm * sentence_norm);
            cos.clamp(-1.0, 1.0)
        })
        .collect();
    Ok(ContributionReport {
        tokens: e.tokens,
        scores,
        provenance: pipeline.provenance(),
    })
}

impl ContributionReport {
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# contribution {}", self.provenance).map_err(io)?;
        let mut csv = csv::Writer::from_writer(out);
        csv.write_record(["token", "cosine"]).map_err(csv_err)?;
        for (t, s) in self.tokens.iter().zip(&self.scores) {
            csv.write_record([t.as_str(), &format!("{s:.6}")]).map_err(csv_err)?;
        }
        csv.flush().map_err(io)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightCurve {
    /// Descending.
    pub a_values: Vec<f64>,
    /// `(group name, normalised mean weight at each a)`.
    pub groups: Vec<(String, Vec<f64>)>,
}

/// Mean smooth-frequency weight of each token group at each `a`, divided by
/// the large-`a` limit 2 so every value lies in `(0, 1]`.
pub fn weight_curve<S: AsRef<str>>(
    groups: &[(String, Vec<S>)],
    freqs: &FrequencyTable,
    a_grid: &[f64],
) -> Result<WeightCurve> {
    if groups.is_empty() {
        return Err(Error::InvalidConfig("no token groups".into()));
    }
    if a_grid.is_empty() || a_grid.iter().any(|&a| !(a > 0.0 && a.is_finite())) {
        return Err(Error::InvalidConfig("a grid must be non-empty and positive".into()));
    }
    let mut a_values = a_grid.to_vec();
    a_values.sort_by(|x, y| y.total_cmp(x));
    a_values.dedup();

    let mut out = Vec::with_capacity(groups.len());
    for (name, tokens) in groups {
        if tokens.is_empty() {
            return Err(Error::InvalidConfig(format!("group {name:?} is empty")));
        }
        let probs: Vec<f64> = tokens.iter().map(|t| freqs.prob_or_zero(t.as_ref())).collect();
        let means = a_values
            .iter()
            .map(|&a| probs.iter().map(|&p| sfw(p, a)).sum::<f64>() / (2.0 * probs.len() as f64))
            .collect();
        out.push((name.clone(), means));
    }
    Ok(WeightCurve { a_values, groups: out })
}

impl WeightCurve {
    pub fn group(&self, name: &str) -> Option<&[f64]> {
        self.groups.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_slice())
    }

    pub fn write_csv<W: Write>(&self, mut out: W, comment: &str) -> Result<()> {
        writeln!(out, "# weight-curve {comment}").map_err(io)?;
        let mut csv = csv::Writer::from_writer(out);
        let mut header = vec!["a".to_owned()];
        header.extend(self.groups.iter().map(|(n, _)| n.clone()));
        csv.write_record(&header).map_err(csv_err)?;
        for (i, a) in self.a_values.iter().enumerate() {
            let mut record = vec![format!("{a}")];
            record.extend(self.groups.iter().map(|(_, v)| format!("{:.6}", v[i])));
            csv.write_record(&record).map_err(csv_err)?;
        }
        csv.flush().map_err(io)
    }
}

fn io(e: std::io::Error) -> Error {
    Error::io("<report>", e)
}

fn csv_err(e: csv::Error) -> Error {
    Error::io("<report>", std::io::Error::other(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::denoiser::fit;
    use crate::encoder::EncoderConfig;
    use crate::lexicon::VectorTable;
    use ndarray::Array2;

    fn pipeline() -> Pipeline {
        let vt = VectorTable::from_pairs(
            3,
            [
                ("the", vec![0.1, 0.2, -0.1]),
                ("girl", vec![0.9, -0.4, 0.3]),
                ("eats", vec![-0.5, 0.8, 0.7]),
                ("cake", vec![0.6, 0.6, -0.9]),
                ("zero", vec![0.0, 0.0, 0.0]),
            ],
        )
        .unwrap();
        let ft = FrequencyTable::from_counts([("the", 50), ("girl", 2), ("eats", 1), ("cake", 1)]).unwrap();
        Pipeline::new(vt, ft, EncoderConfig::new(3, 0.05)).unwrap()
    }

    #[test]
    fn single_word_attention_csv() {
        let report = attention_report("girl", &pipeline()).unwrap();
        assert_eq!(report.weights, vec![vec![1.0]]);
        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(body, [",girl", "girl,1.000000"]);
    }

    #[test]
    fn attention_rows_sum_after_rounding() {
        let report = attention_report("the girl eats cake , the cake", &pipeline()).unwrap();
        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let mut rows = 0;
        for rec in reader.records() {
            let rec = rec.unwrap();
            let sum: f64 = rec.iter().skip(1).map(|x| x.parse::<f64>().unwrap()).sum();
            assert!((sum - 1.0).abs() <= 1e-5, "{sum}");
            rows += 1;
        }
        assert_eq!(rows, 6);
    }

    #[test]
    fn single_word_contribution_is_positive() {
        let report = contribution_report("cake", &pipeline(), false).unwrap();
        assert!((report.scores[0] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn zero_embedding_is_degenerate() {
        assert!(matches!(
            contribution_report("zero", &pipeline(), false),
            Err(Error::DegenerateEmbedding)
        ));
    }

    #[test]
    fn contribution_uses_denoised_vector_by_default() {
        let p = pipeline();
        let rows: Vec<Vec<f64>> = ["the girl", "girl eats cake", "cake", "the cake eats"]
            .iter()
            .map(|s| p.embed_raw(s, false).unwrap().vector)
            .collect();
        let x = Array2::from_shape_vec((4, 6), rows.concat()).unwrap();
        let noisy = p.clone().with_noise(fit(&x, 2).unwrap()).unwrap();
        let post = contribution_report("the girl eats cake", &noisy, false).unwrap();
        let pre = contribution_report("the girl eats cake", &noisy, true).unwrap();
        let plain = contribution_report("the girl eats cake", &p, false).unwrap();
        assert_eq!(pre.scores, plain.scores);
        assert_ne!(post.scores, pre.scores);
        assert!(post.scores.iter().all(|s| s.abs() <= 1.0));
    }

    #[test]
    fn zero_frequency_group_is_flat() {
        let ft = FrequencyTable::from_counts([("x", 1)]).unwrap();
        let groups = vec![("unseen".to_owned(), vec!["p", "q"])];
        let curve = weight_curve(&groups, &ft, &DEFAULT_A_GRID).unwrap();
        assert!(curve.group("unseen").unwrap().iter().all(|&m| m == 1.0));
    }

    #[test]
    fn weight_curve_errors_and_ordering() {
        let ft = FrequencyTable::from_counts([("x", 1)]).unwrap();
        let empty: Vec<(String, Vec<&str>)> = vec![("g".into(), vec![])];
        assert!(weight_curve(&empty, &ft, &[0.1]).is_err());
        assert!(weight_curve::<&str>(&[], &ft, &[0.1]).is_err());
        let g = vec![("g".to_owned(), vec!["x"])];
        assert!(weight_curve(&g, &ft, &[0.0]).is_err());
        let c = weight_curve(&g, &ft, &[0.01, 1.0, 0.1]).unwrap();
        assert_eq!(c.a_values, vec![1.0, 0.1, 0.01]);
    }

    #[test]
    fn stop_to_content_ratio_shrinks_with_a() {
        // Pr_stop = 0.05, Pr_content = 1e-4.
        let ft = FrequencyTable::from_counts([("stop", 500), ("content", 1), ("rest", 9499)]).unwrap();
        let groups = vec![
            ("stop".to_owned(), vec!["stop"]),
            ("content".to_owned(), vec!["content"]),
        ];
        let grid: Vec<f64> = (0..=20).map(|i| 0.1 * 10f64.powf(-(i as f64) / 10.0)).collect();
        let c = weight_curve(&groups, &ft, &grid).unwrap();
        let ratio: Vec<f64> = c
            .group("stop")
            .unwrap()
            .iter()
            .zip(c.group("content").unwrap())
            .map(|(s, m)| s / m)
            .collect();
        // Closed form: (Pr_m + a/2) / (Pr_s + a/2).
        for (r, a) in ratio.iter().zip(&c.a_values) {
            let want = (1e-4 + a / 2.0) / (0.05 + a / 2.0);
            assert!((r - want).abs() < 1e-12);
        }
        assert!(ratio.windows(2).all(|w| w[1] < w[0]));
    }
}
