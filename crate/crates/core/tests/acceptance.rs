//! Acceptance suite. Each test prints one `acceptance <n> PASS|WARN|FAIL`
//! line to stderr (uncaptured, so it shows in plain `cargo test` output).
//!
//! Criteria 3, 4 and 7 need pre-trained vectors, a frequency table and a
//! sentiment dataset under `$NOPPA_DATA_DIR`; they are `#[ignore]`d and run
//! with `cargo test --test acceptance -- --ignored`.

use std::io::Write;
use std::sync::{Mutex, OnceLock};

use nalgebra::DMatrix;
use ndarray::Array2;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use noppa::analysis::weight_curve;
use noppa::denoiser::{self, NoiseModel};
use noppa::encoder::{attention, log_kernel, sfw, Encoder, EncoderConfig, PositionalVectors, Weighting};
use noppa::evalkit::bench::scaling_probe;
use noppa::evalkit::grid::{grid_search, GridConfig, GridReport};
use noppa::evalkit::{Resources, Variant};
use noppa::lexicon::{FrequencyTable, TokenSequence, VectorTable};
use noppa::pipeline::Pipeline;

const INSTANCES: usize = 1000;

/// Serialises the suite so the timing criterion runs on an idle process.
static SERIAL: Mutex<()> = Mutex::new(());

fn serial() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

fn report(criterion: u32, status: &str, detail: &str) {
    let _ = writeln!(std::io::stderr(), "acceptance {criterion} {status} {detail}");
}

/// Runs `check`, prints the verdict line and fails the test on error.
fn verdict(criterion: u32, title: &str, check: impl FnOnce() -> Result<String, String>) {
    match check() {
        Ok(detail) => report(criterion, "PASS", &format!("{title}: {detail}")),
        Err(why) => {
            report(criterion, "FAIL", &format!("{title}: {why}"));
            panic!("criterion {criterion} failed: {why}");
        }
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gaussian(rng: &mut ChaCha8Rng, scale: f64) -> f64 {
    let z: f64 = rng.sample(StandardNormal);
    z * scale
}

/// Random vocabulary `t0..t{size}` with f32 vectors and positive counts.
fn random_tables(rng: &mut ChaCha8Rng, size: usize, dim: usize, scale: f64) -> (VectorTable, FrequencyTable) {
    let words: Vec<String> = (0..size).map(|i| format!("t{i}")).collect();
    let vt = VectorTable::from_pairs(
        dim,
        words.iter().map(|w| {
            (
                w.as_str(),
                (0..dim).map(|_| gaussian(rng, scale) as f32).collect::<Vec<_>>(),
            )
        }),
    )
    .unwrap();
    let ft = FrequencyTable::from_counts(words.iter().map(|w| (w.as_str(), rng.random_range(1..100_000u64)))).unwrap();
    (vt, ft)
}

/// Between 1 and `max_len` tokens drawn uniformly from `vocab` words.
fn random_sentence(rng: &mut ChaCha8Rng, vocab: usize, max_len: usize) -> TokenSequence {
    let len = rng.random_range(1..=max_len);
    TokenSequence::new((0..len).map(|_| format!("t{}", rng.random_range(0..vocab))).collect())
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

// ---------------------------------------------------------------------------
// 1. Property suite
// ---------------------------------------------------------------------------

fn prop_attention_rows(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for case in 0..INSTANCES {
        let n = rng.random_range(1..=16);
        let d = rng.random_range(1..=12);
        let scale = 10f64.powf(rng.random_range(-2.0..1.5));
        let rows: Vec<f64> = (0..n * d).map(|_| gaussian(rng, scale)).collect();
        let attn = attention(&PositionalVectors::from_rows(d, rows));
        for i in 0..n {
            let row = attn.row(i);
            let sum: f64 = row.iter().sum();
            ensure(
                row.iter().all(|&x| x >= 0.0 && x.is_finite()) && (sum - 1.0).abs() <= 1e-9,
                || format!("case {case}: attention row {i} sums to {sum}"),
            )?;
        }
    }
    Ok(())
}

fn prop_log_kernel(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for case in 0..INSTANCES {
        let d = rng.random_range(1..=16);
        let x: Vec<f64> = (0..d).map(|_| gaussian(rng, 10.0)).collect();
        let y: Vec<f64> = (0..d).map(|_| gaussian(rng, 10.0)).collect();
        let xy = log_kernel(&x, &y);
        ensure(xy.iter().all(|&v| v >= 0.0), || {
            format!("case {case}: negative kernel value")
        })?;
        ensure(xy == log_kernel(&y, &x), || {
            format!("case {case}: kernel not symmetric")
        })?;
        ensure(log_kernel(&x, &x).iter().all(|&v| v == 0.0), || {
            format!("case {case}: kernel(x, x) != 0")
        })?;
    }
    Ok(())
}

fn prop_sfw(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for case in 0..INSTANCES {
        let a = 10f64.powf(rng.random_range(-6.0..1.0));
        let p1: f64 = rng.random_range(0.0..=1.0);
        let p2: f64 = rng.random_range(0.0..=1.0);
        let (lo, hi) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
        let (wl, wh) = (sfw(lo, a), sfw(hi, a));
        ensure(wl > 0.0 && wl <= 2.0 && wh > 0.0 && wh <= 2.0, || {
            format!("case {case}: weight outside (0, 2]")
        })?;
        ensure(wl >= wh, || format!("case {case}: sfw not non-increasing in pr"))?;
        ensure(sfw(0.0, a) == 2.0, || format!("case {case}: sfw(0, a) != 2"))?;
    }
    Ok(())
}

fn prop_single_token(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for case in 0..INSTANCES {
        let d = rng.random_range(1..=12);
        let (vt, ft) = random_tables(rng, 3, d, 1.0);
        let a = rng.random_range(0.001..0.2);
        let cfg = EncoderConfig::new(d, a).with_positions(rng.random_bool(0.5));
        let e = Encoder::new(&vt, &ft, &cfg)
            .unwrap()
            .encode(&TokenSequence::new(vec!["t1".into()]), false)
            .unwrap();
        let w = sfw(ft.prob_or_zero("t1"), a);
        let expected: Vec<f64> = std::iter::repeat_n(0.0, d)
            .chain(vt.get("t1").unwrap().iter().map(|&x| w * x as f64))
            .collect();
        ensure(max_abs_diff(&e.vector, &expected) <= 1e-15, || {
            format!("case {case}: single-token form differs")
        })?;
    }
    Ok(())
}

fn prop_concatenation(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for case in 0..INSTANCES {
        let d = rng.random_range(1..=16);
        let (vt, ft) = random_tables(rng, 30, d, 1.0);
        let cfg = EncoderConfig::new(d, rng.random_range(0.01..0.15));
        let enc = Encoder::new(&vt, &ft, &cfg).unwrap();
        let tokens = random_sentence(rng, 30, 20);
        let fast = enc.encode(&tokens, false).unwrap();
        let per_word = enc.word_vectors(&tokens).unwrap();
        let n = per_word.len() as f64;
        let mut slow = vec![0.0; 2 * d];
        for (t, row) in tokens.tokens.iter().zip(&per_word) {
            let w = cfg.weight(ft.prob_or_zero(t));
            for (s, x) in slow.iter_mut().zip(row) {
                *s += w * x / n;
            }
        }
        let diff = max_abs_diff(&fast.vector, &slow);
        ensure(diff <= 1e-12, || {
            format!("case {case}: fast and per-word routes differ by {diff:e}")
        })?;
    }
    Ok(())
}

fn prop_permutation(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for case in 0..INSTANCES {
        let d = rng.random_range(1..=12);
        let (vt, ft) = random_tables(rng, 20, d, 1.0);
        let cfg = EncoderConfig::new(d, 0.05).with_positions(false);
        let enc = Encoder::new(&vt, &ft, &cfg).unwrap();
        let tokens = random_sentence(rng, 20, 15);
        let mut shuffled = tokens.tokens.clone();
        shuffled.shuffle(rng);
        let a = enc.encode(&tokens, false).unwrap();
        let b = enc.encode(&TokenSequence::new(shuffled), false).unwrap();
        let diff = max_abs_diff(&a.vector, &b.vector);
        ensure(diff <= 1e-10, || {
            format!("case {case}: permutation changed the embedding by {diff:e}")
        })?;
    }
    Ok(())
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Array2<f64> {
    Array2::from_shape_fn((rows, cols), |_| gaussian(rng, 1.0))
}

fn prop_projector(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for case in 0..INSTANCES {
        let l = rng.random_range(2..40);
        let dim = rng.random_range(2..=12);
        let k = rng.random_range(0..=l.min(dim));
        let m = denoiser::fit(&random_matrix(rng, l, dim), k).map_err(|e| e.to_string())?;
        let c: Vec<f64> = (0..dim).map(|_| gaussian(rng, 3.0)).collect();
        let r = m.remove_vector(&c).unwrap();
        let rr = m.remove_vector(&r).unwrap();
        ensure(max_abs_diff(&r, &rr) <= 1e-8, || {
            format!("case {case}: projection not idempotent")
        })?;
        for row in m.directions().rows() {
            let dot: f64 = row.iter().zip(&r).map(|(a, b)| a * b).sum();
            ensure(dot.abs() <= 1e-8, || {
                format!("case {case}: residual not orthogonal ({dot:e})")
            })?;
        }
        let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
        ensure(norm(&r) <= norm(&c) + 1e-8, || {
            format!("case {case}: projection increased the norm")
        })?;
    }
    Ok(())
}

fn prop_round_trip(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for case in 0..INSTANCES {
        let l = rng.random_range(2..30);
        let dim = rng.random_range(1..=10);
        let k = rng.random_range(0..=l.min(dim));
        let m = denoiser::fit(&random_matrix(rng, l, dim), k).unwrap();
        let back = NoiseModel::from_text(&m.to_text()).map_err(|e| format!("case {case}: {e}"))?;
        let bits = |m: &NoiseModel| -> Vec<u64> {
            m.directions()
                .iter()
                .chain(m.singular_values())
                .map(|x| x.to_bits())
                .collect()
        };
        ensure(bits(&m) == bits(&back) && back.k() == k && back.dim() == dim, || {
            format!("case {case}: save/load changed the model")
        })?;
    }
    Ok(())
}

type Property = fn(&mut ChaCha8Rng) -> Result<(), String>;

#[test]
fn criterion_1_property_suite() {
    let _guard = serial();
    verdict(1, "property suite", || {
        let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
        let props: [(&str, Property); 8] = [
            ("attention rows stochastic (1e-9)", prop_attention_rows),
            ("log-kernel non-negative and symmetric", prop_log_kernel),
            ("weight in (0, 2] and monotone", prop_sfw),
            ("single-token closed form", prop_single_token),
            ("fast route equals per-word concatenation (1e-12)", prop_concatenation),
            ("permutation invariance without positions (1e-10)", prop_permutation),
            (
                "projector idempotent, orthogonal, norm non-increasing (1e-8)",
                prop_projector,
            ),
            ("noise model save/load bit round trip", prop_round_trip),
        ];
        for (name, prop) in props {
            prop(&mut rng).map_err(|e| format!("{name}: {e}"))?;
        }
        Ok(format!("{} properties x {INSTANCES} instances", props.len()))
    });
}

// ---------------------------------------------------------------------------
// 2. Oracle equivalence
// ---------------------------------------------------------------------------

/// Straight-line reference: positions, scaled softmax, log kernel, weighted
/// average of `[ctx ; v]`, then the projection with the given directions.
#[allow(clippy::needless_range_loop)]
fn scalar_oracle(words: &[Vec<f64>], probs: &[f64], a: f64, vk: &[Vec<f64>]) -> Vec<f64> {
    let n = words.len();
    let d = words[0].len();
    let mut shifted = vec![vec![0.0; d]; n];
    for i in 0..n {
        for c in 0..d {
            let m = (c / 2) as f64;
            let angle = i as f64 / 10000f64.powf(2.0 * m / d as f64);
            let pe = if c % 2 == 0 { angle.sin() } else { angle.cos() };
            shifted[i][c] = words[i][c] + pe;
        }
    }
    let mut attn = vec![vec![0.0; n]; n];
    for i in 0..n {
        let mut total = 0.0;
        for j in 0..n {
            let mut s = 0.0;
            for c in 0..d {
                s += shifted[i][c] * shifted[j][c];
            }
            attn[i][j] = (s / (d as f64).sqrt()).exp();
            total += attn[i][j];
        }
        for j in 0..n {
            attn[i][j] /= total;
        }
    }
    let mut out = vec![0.0; 2 * d];
    for i in 0..n {
        let w = a / (probs[i] + a / 2.0);
        for c in 0..d {
            let mut ctx = 0.0;
            for j in 0..n {
                let diff = shifted[i][c] - shifted[j][c];
                ctx += attn[i][j] * (1.0 + diff * diff).log2();
            }
            out[c] += w * ctx / n as f64;
            out[d + c] += w * words[i][c] / n as f64;
        }
    }
    let coefs: Vec<f64> = vk
        .iter()
        .map(|v| v.iter().zip(&out).map(|(x, y)| x * y).sum())
        .collect();
    for (v, coef) in vk.iter().zip(coefs) {
        for c in 0..2 * d {
            out[c] -= coef * v[c];
        }
    }
    out
}

/// Largest principal angle between the row spaces of two `k × n` matrices
/// with orthonormal rows, computed from the residual of projecting one onto
/// the other (accurate for small angles).
fn subspace_angle(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    if a.nrows() == 0 {
        return 0.0;
    }
    let residual = a - (a * b.transpose()) * b;
    let sin = residual.singular_values().max();
    sin.min(1.0).asin()
}

#[test]
fn criterion_2_oracle_equivalence() {
    let _guard = serial();
    verdict(2, "oracle equivalence", || {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let mut worst = 0.0f64;
        for case in 0..20 {
            let d = rng.random_range(1..=8);
            let (vt, ft) = random_tables(&mut rng, 12, d, 1.0);
            let a = rng.random_range(0.01..0.15);
            let config = EncoderConfig::new(d, a);
            assert_eq!(config.weighting, Weighting::SmoothFrequency);
            // Noise model fitted on a batch of other random sentences.
            let enc = Encoder::new(&vt, &ft, &config).unwrap();
            let batch: Vec<Vec<f64>> = (0..30)
                .map(|_| enc.encode(&random_sentence(&mut rng, 12, 6), false).unwrap().vector)
                .collect();
            let k = rng.random_range(0..=(2 * d).min(4));
            let model = denoiser::fit(&denoiser::stack(batch.iter().map(Vec::as_slice)).unwrap(), k).unwrap();
            let vk: Vec<Vec<f64>> = model.directions().rows().into_iter().map(|r| r.to_vec()).collect();
            let pipeline = Pipeline::new(vt.clone(), ft.clone(), config)
                .unwrap()
                .with_noise(model)
                .unwrap();

            let tokens = random_sentence(&mut rng, 12, 6);
            let sentence = tokens.tokens.join(" ");
            let words: Vec<Vec<f64>> = tokens
                .tokens
                .iter()
                .map(|t| vt.get(t).unwrap().iter().map(|&x| x as f64).collect())
                .collect();
            let probs: Vec<f64> = tokens.tokens.iter().map(|t| ft.prob_or_zero(t)).collect();
            let expected = scalar_oracle(&words, &probs, a, &vk);
            let got = pipeline.embed(&sentence, false).unwrap().vector;
            let diff = max_abs_diff(&got, &expected);
            worst = worst.max(diff);
            ensure(diff <= 1e-10, || {
                format!("sentence {case}: engine differs from scalar oracle by {diff:e}")
            })?;
        }

        let mut worst_angle = 0.0f64;
        for case in 0..20 {
            let x = random_matrix(&mut rng, 50, 8);
            let k = 1 + case % 5;
            let engine = denoiser::fit(&x, k).unwrap();
            let e = DMatrix::from_row_slice(k, 8, engine.directions().as_slice().unwrap());
            let svd = DMatrix::from_row_slice(50, 8, x.as_slice().unwrap()).svd(false, true);
            let v_t = svd.v_t.unwrap();
            let mut order: Vec<usize> = (0..8).collect();
            order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
            let smallest = DMatrix::from_fn(k, 8, |r, c| v_t[(order[r], c)]);
            let angle = subspace_angle(&e, &smallest);
            worst_angle = worst_angle.max(angle);
            ensure(angle <= 1e-4, || format!("matrix {case}: subspace angle {angle:e} rad"))?;
        }
        Ok(format!(
            "20 sentences max |diff| {worst:.2e} (tol 1e-10); 20 matrices max angle {worst_angle:.2e} rad (tol 1e-4)"
        ))
    });
}

// ---------------------------------------------------------------------------
// 3, 4. Desk-scale downstream (data-gated)
// ---------------------------------------------------------------------------

struct DeskRun {
    dataset: String,
    noppa: GridReport,
    glove_avg: GridReport,
    ce_avg: GridReport,
}

fn desk_run() -> &'static Result<DeskRun, String> {
    static RUN: OnceLock<Result<DeskRun, String>> = OnceLock::new();
    RUN.get_or_init(|| {
        let resources = Resources::from_env().map_err(|e| format!("data unavailable: {e}"))?;
        let (vt, ft) = resources.load_tables().map_err(|e| e.to_string())?;
        let dataset = resources
            .sentiment_dataset()
            .map_err(|e| e.to_string())?
            .subsample(2000, 500, 500, 1034);
        let grid = GridConfig {
            a_grid: vec![0.01, 0.03, 0.05, 0.1],
            k_grid: vec![0, 5, 10, 15, 20],
            seeds: vec![1034, 1035, 1036],
            ..Default::default()
        };
        let run = |v: Variant| grid_search(&dataset, v, &vt, &ft, &grid).map_err(|e| e.to_string());
        Ok(DeskRun {
            dataset: dataset.name.clone(),
            noppa: run(Variant::Noppa)?,
            glove_avg: run(Variant::GloveAvg)?,
            ce_avg: run(Variant::CeAvg)?,
        })
    })
}

#[test]
#[ignore = "needs GloVe-6B, freq.tsv and SST-2 or MR under NOPPA_DATA_DIR"]
fn criterion_3_desk_downstream() {
    let _guard = serial();
    let run = match desk_run() {
        Ok(run) => run,
        Err(e) => {
            report(3, "FAIL", e);
            panic!("{e}");
        }
    };
    let ours = run.noppa.summary();
    let base = run.glove_avg.summary();
    let detail = format!("{}: noppa {ours} vs glove_avg {base}", run.dataset);
    if ours.mean >= base.mean {
        report(3, "PASS", &detail);
    } else if ours.mean >= base.mean - 0.5 {
        report(3, "WARN", &format!("inconclusive, within 0.5 pt: {detail}"));
    } else {
        report(3, "FAIL", &detail);
        panic!("criterion 3 failed: {detail}");
    }
}

#[test]
#[ignore = "needs GloVe-6B, freq.tsv and SST-2 or MR under NOPPA_DATA_DIR"]
fn criterion_4_ablation_ordering() {
    let _guard = serial();
    verdict(4, "ablation ordering", || {
        let run = desk_run().as_ref().map_err(Clone::clone)?;
        let full = run.noppa.summary();
        let ce = run.ce_avg.summary();
        let detail = format!("{}: noppa {full} vs ce_avg {ce} over 3 seeds", run.dataset);
        ensure(full.mean >= ce.mean - 0.5, || detail.clone())?;
        Ok(detail)
    });
}

// ---------------------------------------------------------------------------
// 5. Scaling benchmark
// ---------------------------------------------------------------------------

#[test]
fn criterion_5_scaling() {
    let _guard = serial();
    verdict(5, "length scaling", || {
        let probe = scaling_probe(64, 300, 1000, 3, 10, 2024).map_err(|e| e.to_string())?;
        let ratio = probe.encode_ratio();
        let denoise = probe.denoise_ratio();
        ensure((3.0..=5.0).contains(&ratio), || {
            format!("encode ratio {ratio:.3} outside [3, 5]: {probe}")
        })?;
        ensure((denoise - 1.0).abs() <= 0.2, || {
            format!("denoise ratio {denoise:.3} not within 20% of 1: {probe}")
        })?;
        Ok(probe.to_string())
    });
}

// ---------------------------------------------------------------------------
// 6. Weight curves
// ---------------------------------------------------------------------------

#[test]
fn criterion_6_weight_curves() {
    let _guard = serial();
    verdict(6, "weight curves", || {
        // 13 stopwords at 0.05 each, 16 content words at 1e-4 each, the rest
        // of the mass on a filler token.
        let stop: Vec<String> = (0..13).map(|i| format!("stop{i}")).collect();
        let content: Vec<String> = (0..16).map(|i| format!("word{i}")).collect();
        let counts = stop
            .iter()
            .map(|w| (w.as_str(), 50_000u64))
            .chain(content.iter().map(|w| (w.as_str(), 100)))
            .chain([("filler", 1_000_000 - 13 * 50_000 - 16 * 100)]);
        let ft = FrequencyTable::from_counts(counts).unwrap();
        ensure(
            (ft.prob_or_zero("stop0") - 0.05).abs() < 1e-15 && (ft.prob_or_zero("word0") - 1e-4).abs() < 1e-15,
            || "synthetic probabilities off".into(),
        )?;
        let groups = vec![("stopwords".to_owned(), stop), ("meaningful".to_owned(), content)];
        let curve = weight_curve(&groups, &ft, &[1.0, 0.1, 0.01, 0.001]).map_err(|e| e.to_string())?;
        let s = curve.group("stopwords").unwrap();
        let m = curve.group("meaningful").unwrap();
        for (i, a) in curve.a_values.iter().enumerate() {
            ensure(m[i] >= s[i], || {
                format!("a={a}: meaningful {} < stopwords {}", m[i], s[i])
            })?;
        }
        let gaps: Vec<f64> = m.iter().zip(s).map(|(x, y)| x - y).collect();
        let best = (0..gaps.len()).max_by(|&i, &j| gaps[i].total_cmp(&gaps[j])).unwrap();
        let a_best = curve.a_values[best];
        ensure((0.001..=0.1).contains(&a_best), || format!("largest gap at a={a_best}"))?;
        Ok(format!(
            "meaningful >= stopwords at every a; largest gap {:.3} at a={a_best}",
            gaps[best]
        ))
    });
}

// ---------------------------------------------------------------------------
// 7. Extended full-split run (data-gated, beyond desk scale)
// ---------------------------------------------------------------------------

#[test]
#[ignore = "full SST-2 run, hours of CPU; needs data under NOPPA_DATA_DIR"]
fn criterion_7_extended_sst2() {
    let _guard = serial();
    verdict(7, "extended SST-2", || {
        let resources = Resources::from_env().map_err(|e| format!("data unavailable: {e}"))?;
        ensure(resources.sst2.is_some(), || "SST-2 not found".into())?;
        let (vt, ft) = resources.load_tables().map_err(|e| e.to_string())?;
        let dataset = resources.sentiment_dataset().map_err(|e| e.to_string())?;
        let grid = GridConfig {
            a_grid: vec![0.01, 0.02, 0.03, 0.05, 0.07, 0.1, 0.15],
            k_grid: (0..=24).step_by(2).collect(),
            seeds: vec![1034, 1035, 1036, 1037, 1038],
            ..Default::default()
        };
        let report = grid_search(&dataset, Variant::Noppa, &vt, &ft, &grid).map_err(|e| e.to_string())?;
        let summary = report.summary();
        let detail = format!("sst2 noppa {summary} (target 84.1 +/- 1.0)");
        ensure((summary.mean - 84.1).abs() <= 1.0, || detail.clone())?;
        Ok(detail)
    });
}
