//! Command-line front end. `run` parses arguments, dispatches to a
//! subcommand and maps failures onto the exit-code table:
//!
//! | code | meaning                                   |
//! |------|-------------------------------------------|
//! | 0    | success                                   |
//! | 1    | malformed data or other runtime failure   |
//! | 2    | missing or unreadable input               |
//! | 3    | infeasible configuration                  |
//! | 64   | usage error                               |

use std::ffi::OsString;
use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::analysis::{self, DEFAULT_A_GRID, DEFAULT_CONTENT_WORDS, DEFAULT_STOPWORDS};
use crate::denoiser::{self, NoiseModel};
use crate::encoder::EncoderConfig;
use crate::error::{Error, Result};
use crate::evalkit::bench::{self, synthetic_tables};
use crate::evalkit::grid::{self, GridConfig, RUN_LOG_HEADER};
use crate::evalkit::{load_dataset, ClassifierConfig, DatasetFormat, Variant};
use crate::lexicon::{load_frequencies, load_vectors, FrequencyTable, VectorTable};
use crate::pipeline::{sha256_file, Pipeline};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_MISSING_INPUT: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

/// Relative input paths that do not exist in the working directory are
/// looked up under this directory.
pub use crate::evalkit::resources::DATA_DIR_ENV;

#[derive(Debug, Parser)]
#[command(
    name = "noppa",
    version,
    about = "Non-parametric pairwise-attention sentence embeddings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Embed one sentence per line; writes one CSV row of 2d reals per line.
    Embed {
        /// Text file, one sentence per line.
        input: PathBuf,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Fit a noise model on the embeddings of one sentence per line.
    FitNoise {
        /// Text file, one sentence per line.
        input: PathBuf,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Attention matrix of one sentence as CSV.
    Attention {
        /// Raw sentence; tokenized like `embed` input.
        sentence: String,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Per-word contribution scores of one sentence as CSV.
    Contrib {
        /// Raw sentence; tokenized like `embed` input.
        sentence: String,
        /// Score against the embedding before noise removal.
        #[arg(long)]
        pre_denoise: bool,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Normalised mean word weight of token groups over a range of `a`.
    WeightCurve {
        /// Frequency file, `token<TAB>count` per line.
        #[arg(long)]
        freq: PathBuf,
        /// Token group as `name=w1,w2,...`; repeatable. Defaults to a
        /// stopword group and a content-word group.
        #[arg(long = "group", value_name = "NAME=TOKENS")]
        groups: Vec<String>,
        /// Values of `a` to evaluate.
        #[arg(long, value_delimiter = ',', value_name = "A,...")]
        a_grid: Vec<f64>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Grid search with a downstream classifier; prints the run log and a
    /// mean ± std summary per variant.
    Eval {
        /// Dataset file or directory.
        #[arg(long)]
        dataset: PathBuf,
        /// Dataset layout: tsv, sst or polarity.
        #[arg(long, default_value = "tsv")]
        format: String,
        /// Name recorded in the run log. Defaults to the file stem.
        #[arg(long)]
        name: Option<String>,
        /// Number of classes.
        #[arg(long, default_value_t = 2)]
        labels: usize,
        /// Embedders to evaluate.
        #[arg(long, value_delimiter = ',', default_value = "noppa")]
        variant: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "0.01,0.03,0.05,0.1")]
        a_grid: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0,5,10,15,20")]
        k_grid: Vec<usize>,
        /// Classifier seeds; overrides --seed.
        #[arg(long, value_delimiter = ',')]
        seeds: Vec<u64>,
        /// Cap on training examples (random subset drawn with --seed).
        #[arg(long)]
        train_size: Option<usize>,
        /// Cap on dev examples.
        #[arg(long)]
        dev_size: Option<usize>,
        /// Cap on test examples.
        #[arg(long)]
        test_size: Option<usize>,
        /// Fit noise models on train and unlabelled test sentences.
        #[arg(long)]
        include_test_in_noise: bool,
        /// Append run-log lines to this file.
        #[arg(long)]
        log: Option<PathBuf>,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Throughput and length-scaling timings.
    Bench {
        /// Sentences to time, one per line. Without it, random sentences over
        /// a synthetic vocabulary are used.
        input: Option<PathBuf>,
        /// Word vector file; give together with --freq, or neither for a synthetic vocabulary.
        #[arg(long)]
        vectors: Option<PathBuf>,
        /// Frequency file, `token<TAB>count` per line.
        #[arg(long)]
        freq: Option<PathBuf>,
        /// Smoothing constant of the frequency weight.
        #[arg(short = 'a', default_value_t = 0.05)]
        a: f64,
        /// Noise model applied in the encode+denoise pass; identity if omitted.
        #[arg(long)]
        noise_model: Option<PathBuf>,
        /// Timed passes per stage; at least 3.
        #[arg(long, default_value_t = 10)]
        repetitions: usize,
        /// Also run the length-scaling probe with this base length.
        #[arg(long, value_name = "N")]
        scaling: Option<usize>,
        /// Sentences per length in the scaling probe.
        #[arg(long, default_value_t = 1000)]
        scaling_count: usize,
        /// Vector dimension in the scaling probe.
        #[arg(long, default_value_t = 300)]
        scaling_dim: usize,
        #[command(flatten)]
        run: RunArgs,
    },
}

/// Word tables and encoder settings.
#[derive(Debug, Args)]
struct ModelArgs {
    /// Word vector file, `token f1 ... fd` per line.
    #[arg(long)]
    vectors: PathBuf,
    /// Frequency file, `token<TAB>count` per line.
    #[arg(long)]
    freq: PathBuf,
    /// Expected vector dimension; inferred from the first line if omitted.
    #[arg(long)]
    dim: Option<usize>,
    /// Smoothing constant of the frequency weight.
    #[arg(short = 'a', default_value_t = 0.05)]
    a: f64,
    /// Number of noise directions to fit (fit-noise, eval) or expected in the
    /// loaded noise model.
    #[arg(short = 'k')]
    k: Option<usize>,
    /// Disable positional encodings.
    #[arg(long)]
    no_positions: bool,
    /// Noise model to apply after encoding.
    #[arg(long)]
    noise_model: Option<PathBuf>,
}

/// Execution settings shared by every subcommand.
#[derive(Debug, Args)]
struct RunArgs {
    /// Seed for every random choice (classifier init, shuffling, subsets).
    #[arg(long, default_value_t = 1034)]
    seed: u64,
    /// Worker threads for per-sentence encoding; defaults to all cores.
    #[arg(long)]
    jobs: Option<usize>,
    /// Output file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Accept `a` outside [0.01, 0.15] and `k` above 24.
    #[arg(long)]
    unsafe_ranges: bool,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let jobs = cli.command.run_args().jobs;
    let result = match jobs {
        Some(0) => Err(Error::InvalidConfig("--jobs must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))
            .and_then(|pool| pool.install(|| dispatch(cli.command))),
        None => dispatch(cli.command),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Exit code for a failed command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { source, .. } if source.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Error::Io { .. } | Error::EmptyFile { .. } => EXIT_MISSING_INPUT,
        Error::InvalidConfig(_) | Error::InfeasibleRank { .. } | Error::DimensionMismatch { .. } => EXIT_INFEASIBLE,
        _ => EXIT_FAILURE,
    }
}

impl Command {
    fn run_args(&self) -> &RunArgs {
        match self {
            Command::Embed { run, .. }
            | Command::FitNoise { run, .. }
            | Command::Attention { run, .. }
            | Command::Contrib { run, .. }
            | Command::WeightCurve { run, .. }
            | Command::Eval { run, .. }
            | Command::Bench { run, .. } => run,
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Embed { input, model, run } => cmd_embed(&input, &model, &run),
        Command::FitNoise { input, model, run } => cmd_fit_noise(&input, &model, &run),
        Command::Attention { sentence, model, run } => {
            let pipeline = build_pipeline(&model, &run)?;
            let mut buf = Vec::new();
            analysis::attention_report(&sentence, &pipeline)?.write_csv(&mut buf)?;
            emit(&run, &buf)
        }
        Command::Contrib {
            sentence,
            pre_denoise,
            model,
            run,
        } => {
            let pipeline = build_pipeline(&model, &run)?;
            let mut buf = Vec::new();
            analysis::contribution_report(&sentence, &pipeline, pre_denoise)?.write_csv(&mut buf)?;
            emit(&run, &buf)
        }
        Command::WeightCurve {
            freq,
            groups,
            a_grid,
            run,
        } => cmd_weight_curve(&freq, &groups, &a_grid, &run),
        Command::Eval {
            dataset,
            format,
            name,
            labels,
            variant,
            a_grid,
            k_grid,
            seeds,
            train_size,
            dev_size,
            test_size,
            include_test_in_noise,
            log,
            model,
            run,
        } => {
            let args = EvalArgs {
                dataset,
                format,
                name,
                labels,
                variants: variant,
                a_grid,
                k_grid,
                seeds,
                sizes: (train_size, dev_size, test_size),
                include_test_in_noise,
                log,
            };
            cmd_eval(&args, &model, &run)
        }
        Command::Bench {
            input,
            vectors,
            freq,
            a,
            noise_model,
            repetitions,
            scaling,
            scaling_count,
            scaling_dim,
            run,
        } => {
            let args = BenchArgs {
                input,
                vectors,
                freq,
                a,
                noise_model,
                repetitions,
                scaling,
                scaling_count,
                scaling_dim,
            };
            cmd_bench(&args, &run)
        }
    }
}

/// Resolves an input path: as given if it exists, else under `$NOPPA_DATA_DIR`.
pub fn resolve_input(path: &Path) -> PathBuf {
    if path.is_relative() && !path.exists() {
        if let Some(dir) = std::env::var_os(DATA_DIR_ENV) {
            let candidate = Path::new(&dir).join(path);
            if candidate.exists() {
                return candidate;
            }
        }
    }
    path.to_path_buf()
}

fn check_ranges(a: &[f64], k: &[usize], run: &RunArgs) -> Result<()> {
    if run.unsafe_ranges {
        return Ok(());
    }
    if let Some(a) = a.iter().find(|&&a| !(grid::A_RANGE.0..=grid::A_RANGE.1).contains(&a)) {
        return Err(Error::InvalidConfig(format!(
            "a = {a} is outside [{}, {}]; pass --unsafe-ranges to allow it",
            grid::A_RANGE.0,
            grid::A_RANGE.1
        )));
    }
    if let Some(k) = k.iter().find(|&&k| k > grid::K_RANGE.1) {
        return Err(Error::InvalidConfig(format!(
            "k = {k} is outside [{}, {}]; pass --unsafe-ranges to allow it",
            grid::K_RANGE.0,
            grid::K_RANGE.1
        )));
    }
    Ok(())
}

fn load_tables(vectors: &Path, freq: &Path, dim: Option<usize>) -> Result<(VectorTable, FrequencyTable, String)> {
    let vectors = resolve_input(vectors);
    let freq = resolve_input(freq);
    let vt = load_vectors(&vectors, dim)?;
    let ft = load_frequencies(&freq)?;
    Ok((vt, ft, sha256_file(&vectors)?))
}

fn build_pipeline(model: &ModelArgs, run: &RunArgs) -> Result<Pipeline> {
    check_ranges(&[model.a], model.k.as_slice(), run)?;
    let (vt, ft, digest) = load_tables(&model.vectors, &model.freq, model.dim)?;
    let config = EncoderConfig::new(vt.dim(), model.a).with_positions(!model.no_positions);
    let mut pipeline = Pipeline::new(vt, ft, config)?.with_digest(digest);
    if let Some(path) = &model.noise_model {
        let noise = NoiseModel::load(resolve_input(path))?;
        if let Some(k) = model.k {
            if k != noise.k() {
                return Err(Error::InvalidConfig(format!(
                    "-k {k} disagrees with the noise model's k = {}",
                    noise.k()
                )));
            }
        }
        pipeline = pipeline.with_noise(noise)?;
    }
    Ok(pipeline)
}

fn read_lines(path: &Path) -> Result<Vec<String>> {
    let path = resolve_input(path);
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    Ok(text.lines().map(str::to_owned).collect())
}

/// Encodes every line in parallel; `None` marks a line with no known token.
fn embed_lines(lines: &[String], pipeline: &Pipeline) -> Result<Vec<Option<Vec<f64>>>> {
    lines
        .par_iter()
        .map(|line| match pipeline.embed(line, false) {
            Ok(e) => Ok(Some(e.vector)),
            Err(Error::EmptyAfterFiltering) => Ok(None),
            Err(e) => Err(e),
        })
        .collect()
}

fn emit(run: &RunArgs, bytes: &[u8]) -> Result<()> {
    match &run.out {
        Some(path) => fs::write(path, bytes).map_err(|e| Error::io(path, e)),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|()| stdout.flush())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}

fn cmd_embed(input: &Path, model: &ModelArgs, run: &RunArgs) -> Result<()> {
    let pipeline = build_pipeline(model, run)?;
    let lines = read_lines(input)?;
    let rows = embed_lines(&lines, &pipeline)?;
    let width = 2 * pipeline.config.dim;
    let mut out = String::with_capacity(rows.len() * width * 20);
    for (i, row) in rows.iter().enumerate() {
        match row {
            Some(v) => push_row(&mut out, v.iter()),
            None => {
                eprintln!("warning: line {}: no token with a vector; writing a nan row", i + 1);
                push_row(&mut out, std::iter::repeat_n(&f64::NAN, width));
            }
        }
    }
    emit(run, out.as_bytes())
}

fn push_row<'a>(out: &mut String, values: impl Iterator<Item = &'a f64>) {
    use std::fmt::Write as _;
    for (j, v) in values.enumerate() {
        if j > 0 {
            out.push(',');
        }
        if v.is_nan() {
            out.push_str("nan");
        } else {
            // Shortest representation that parses back to the same f64.
            write!(out, "{v}").expect("String write");
        }
    }
    out.push('\n');
}

fn cmd_fit_noise(input: &Path, model: &ModelArgs, run: &RunArgs) -> Result<()> {
    let Some(k) = model.k else {
        return Err(Error::InvalidConfig("fit-noise needs -k".into()));
    };
    if model.noise_model.is_some() {
        return Err(Error::InvalidConfig("fit-noise does not take --noise-model".into()));
    }
    let pipeline = build_pipeline(model, run)?;
    let lines = read_lines(input)?;
    let rows = embed_lines(&lines, &pipeline)?;
    for (i, row) in rows.iter().enumerate() {
        if row.is_none() {
            eprintln!("warning: line {}: no token with a vector; skipped", i + 1);
        }
    }
    let kept: Vec<&[f64]> = rows.iter().flatten().map(Vec::as_slice).collect();
    if kept.is_empty() {
        return Err(Error::InfeasibleRank {
            k,
            rows: 0,
            cols: 2 * pipeline.config.dim,
        });
    }
    let noise = denoiser::fit(&denoiser::stack(kept)?, k)?;
    emit(run, noise.to_text().as_bytes())
}

fn cmd_weight_curve(freq: &Path, groups: &[String], a_grid: &[f64], run: &RunArgs) -> Result<()> {
    let ft = load_frequencies(resolve_input(freq))?;
    let groups: Vec<(String, Vec<String>)> = if groups.is_empty() {
        vec![
            (
                "stopwords".into(),
                DEFAULT_STOPWORDS.iter().map(|s| s.to_string()).collect(),
            ),
            (
                "content".into(),
                DEFAULT_CONTENT_WORDS.iter().map(|s| s.to_string()).collect(),
            ),
        ]
    } else {
        groups.iter().map(|g| parse_group(g)).collect::<Result<_>>()?
    };
    let a_grid = if a_grid.is_empty() {
        DEFAULT_A_GRID.to_vec()
    } else {
        a_grid.to_vec()
    };
    let curve = analysis::weight_curve(&groups, &ft, &a_grid)?;
    let mut buf = Vec::new();
    curve.write_csv(&mut buf, &format!("freq_sha256={}", sha256_file(resolve_input(freq))?))?;
    emit(run, &buf)
}

fn parse_group(spec: &str) -> Result<(String, Vec<String>)> {
    let (name, tokens) = spec
        .split_once('=')
        .ok_or_else(|| Error::InvalidConfig(format!("group {spec:?} is not NAME=TOKENS")))?;
    let tokens: Vec<String> = tokens.split(',').filter(|t| !t.is_empty()).map(str::to_owned).collect();
    Ok((name.to_owned(), tokens))
}

struct EvalArgs {
    dataset: PathBuf,
    format: String,
    name: Option<String>,
    labels: usize,
    variants: Vec<String>,
    a_grid: Vec<f64>,
    k_grid: Vec<usize>,
    seeds: Vec<u64>,
    sizes: (Option<usize>, Option<usize>, Option<usize>),
    include_test_in_noise: bool,
    log: Option<PathBuf>,
}

fn cmd_eval(args: &EvalArgs, model: &ModelArgs, run: &RunArgs) -> Result<()> {
    if model.noise_model.is_some() || model.k.is_some() {
        return Err(Error::InvalidConfig("eval searches k itself; use --k-grid".into()));
    }
    check_ranges(&args.a_grid, &args.k_grid, run)?;
    let variants: Vec<Variant> = args.variants.iter().map(|v| v.parse()).collect::<Result<_>>()?;
    let format: DatasetFormat = args.format.parse()?;
    let path = resolve_input(&args.dataset);
    let name = args.name.clone().unwrap_or_else(|| {
        path.file_stem()
            .map_or_else(|| "dataset".into(), |s| s.to_string_lossy().into_owned())
    });
    let mut dataset = load_dataset(&name, &path, format, args.labels)?;
    if args.sizes != (None, None, None) {
        let (tr, dv, te) = args.sizes;
        dataset = dataset.subsample(
            tr.unwrap_or(usize::MAX),
            dv.unwrap_or(usize::MAX),
            te.unwrap_or(usize::MAX),
            run.seed,
        );
    }
    let (vt, ft, _) = load_tables(&model.vectors, &model.freq, model.dim)?;
    let config = GridConfig {
        a_grid: args.a_grid.clone(),
        k_grid: args.k_grid.clone(),
        seeds: if args.seeds.is_empty() {
            vec![run.seed]
        } else {
            args.seeds.clone()
        },
        classifier: ClassifierConfig::default(),
        use_positions: !model.no_positions,
        include_unlabeled_test: args.include_test_in_noise,
        enforce_ranges: !run.unsafe_ranges,
    };

    let mut report = String::from(RUN_LOG_HEADER);
    report.push('\n');
    let mut summaries = Vec::new();
    let mut log_lines = String::new();
    for variant in variants {
        let result = grid::grid_search(&dataset, variant, &vt, &ft, &config)?;
        for r in &result.runs {
            report.push_str(&r.log_line());
            report.push('\n');
            log_lines.push_str(&r.log_line());
            log_lines.push('\n');
        }
        let best = result.best();
        summaries.push(format!(
            "# {} {}: test {} over {} seed(s); dev-best a={} k={}",
            dataset.name,
            variant,
            result.summary(),
            result.summary().seeds,
            best.a,
            best.k
        ));
    }
    for s in summaries {
        report.push_str(&s);
        report.push('\n');
    }
    if let Some(log) = &args.log {
        append_log(log, &log_lines)?;
    }
    emit(run, report.as_bytes())
}

fn append_log(path: &Path, lines: &str) -> Result<()> {
    let fresh = !path.exists() || fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::io(path, e))?;
    let header = if fresh {
        format!("{RUN_LOG_HEADER}\n")
    } else {
        String::new()
    };
    file.write_all(format!("{header}{lines}").as_bytes())
        .map_err(|e| Error::io(path, e))
}

struct BenchArgs {
    input: Option<PathBuf>,
    vectors: Option<PathBuf>,
    freq: Option<PathBuf>,
    a: f64,
    noise_model: Option<PathBuf>,
    repetitions: usize,
    scaling: Option<usize>,
    scaling_count: usize,
    scaling_dim: usize,
}

fn cmd_bench(args: &BenchArgs, run: &RunArgs) -> Result<()> {
    check_ranges(&[args.a], &[], run)?;
    let (vt, ft, label) = match (&args.vectors, &args.freq) {
        (Some(v), Some(f)) => {
            let (vt, ft, digest) = load_tables(v, f, None)?;
            (vt, ft, format!("vectors_sha256={digest}"))
        }
        (None, None) => {
            let (vt, ft) = synthetic_tables(5000, 300, run.seed)?;
            (vt, ft, "synthetic vocabulary=5000 dim=300".to_owned())
        }
        _ => {
            return Err(Error::InvalidConfig(
                "give both --vectors and --freq, or neither".into(),
            ))
        }
    };
    let sentences = match &args.input {
        Some(path) => read_lines(path)?,
        None => synthetic_sentences(&vt, 1000, run.seed),
    };
    let config = EncoderConfig::new(vt.dim(), args.a);
    let mut pipeline = Pipeline::new(vt, ft, config)?;
    if let Some(path) = &args.noise_model {
        pipeline = pipeline.with_noise(NoiseModel::load(resolve_input(path))?)?;
    }
    let report = bench::bench_throughput(&sentences, &pipeline, args.repetitions)?;

    use std::fmt::Write as _;
    let mut out = String::new();
    writeln!(out, "{}", bench::machine_info()).expect("String write");
    writeln!(out, "# {label} a={} k={}", args.a, report.k).expect("String write");
    writeln!(out, "stage,sentences,skipped,repetitions,mean_s,stderr_s,best_s").expect("String write");
    for (stage, t) in [("encode", &report.encode), ("encode+denoise", &report.encode_denoise)] {
        writeln!(
            out,
            "{stage},{},{},{},{:.6},{:.6},{:.6}",
            report.sentences,
            report.failed,
            t.samples.len(),
            t.mean,
            t.stderr,
            t.best
        )
        .expect("String write");
    }
    if let Some(n) = args.scaling {
        let probe = bench::scaling_probe(n, args.scaling_dim, args.scaling_count, 3, 10, run.seed)?;
        writeln!(out, "# scaling {probe}").expect("String write");
    }
    emit(run, out.as_bytes())
}

fn synthetic_sentences(vt: &VectorTable, count: usize, seed: u64) -> Vec<String> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let vocab: Vec<&str> = vt.iter().map(|(w, _)| w).collect();
    (0..count)
        .map(|_| {
            let len = rng.random_range(5..=30);
            (0..len)
                .map(|_| vocab[rng.random_range(0..vocab.len())])
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}
