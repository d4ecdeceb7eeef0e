use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Example {
    pub text: String,
    /// Second sentence for pair tasks (entailment, paraphrase).
    pub pair: Option<String>,
    pub label: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Split {
    Train,
    Dev,
    Test,
}

/// Train/dev/test examples with dense integer labels `0..label_count`.
#[derive(Debug, Clone)]
pub struct LabeledDataset {
    pub name: String,
    pub train: Vec<Example>,
    pub dev: Vec<Example>,
    pub test: Vec<Example>,
    pub label_count: usize,
}

/// On-disk layouts understood by [`load_dataset`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetFormat {
    /// `label<TAB>sentence[<TAB>sentence2]`. A single file is hash-split; a
    /// directory must hold `train.tsv` and `test.tsv`, plus optional `dev.tsv`.
    Tsv,
    /// SentEval SST layout: `sentiment-{train,dev,test}`, `sentence<TAB>label`.
    Sst,
    /// Sentence-polarity layout (MR, CR, SUBJ): a directory with one `*.neg`
    /// and one `*.pos` file, one Latin-1 sentence per line. Hash-split.
    Polarity,
}

impl std::str::FromStr for DatasetFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tsv" => Ok(Self::Tsv),
            "sst" => Ok(Self::Sst),
            "polarity" => Ok(Self::Polarity),
            other => Err(Error::Dataset(format!("unknown dataset format {other:?}"))),
        }
    }
}

/// Deterministic bucket for sources without an official split: the first 8
/// bytes of SHA-256(sentence) as a big-endian integer, mod 10. Buckets 0-7
/// train, 8 dev, 9 test.
pub fn hash_split(sentence: &str) -> Split {
    let digest = Sha256::digest(sentence.as_bytes());
    let head = u64::from_be_bytes(digest[..8].try_into().expect("8 bytes"));
    match head % 10 {
        8 => Split::Dev,
        9 => Split::Test,
        _ => Split::Train,
    }
}

pub fn load_dataset(
    name: &str,
    path: impl AsRef<Path>,
    format: DatasetFormat,
    label_count: usize,
) -> Result<LabeledDataset> {
    let path = path.as_ref();
    if label_count < 2 {
        return Err(Error::Dataset("label_count must be at least 2".into()));
    }
    let mut ds = LabeledDataset {
        name: name.to_owned(),
        train: Vec::new(),
        dev: Vec::new(),
        test: Vec::new(),
        label_count,
    };
    match format {
        DatasetFormat::Tsv if path.is_file() => {
            let all = parse_tsv(&read(path)?, label_count, LabelColumn::First)?;
            ds.assign_by_hash(all);
        }
        DatasetFormat::Tsv => {
            ds.train = parse_tsv(&read(&path.join("train.tsv"))?, label_count, LabelColumn::First)?;
            ds.test = parse_tsv(&read(&path.join("test.tsv"))?, label_count, LabelColumn::First)?;
            let dev = path.join("dev.tsv");
            if dev.exists() {
                ds.dev = parse_tsv(&read(&dev)?, label_count, LabelColumn::First)?;
            } else {
                ds.carve_dev_from_train();
            }
        }
        DatasetFormat::Sst => {
            let load = |split: &str| -> Result<Vec<Example>> {
                parse_tsv(
                    &read(&path.join(format!("sentiment-{split}")))?,
                    label_count,
                    LabelColumn::Last,
                )
            };
            ds.train = load("train")?;
            ds.dev = load("dev")?;
            ds.test = load("test")?;
        }
        DatasetFormat::Polarity => {
            let mut neg = None;
            let mut pos = None;
            for entry in fs::read_dir(path).map_err(|e| Error::io(path, e))? {
                let p = entry.map_err(|e| Error::io(path, e))?.path();
                match p.extension().and_then(|e| e.to_str()) {
                    Some("neg") => neg = Some(p),
                    Some("pos") => pos = Some(p),
                    _ => {}
                }
            }
            let (neg, pos) = neg
                .zip(pos)
                .ok_or_else(|| Error::Dataset(format!("{}: expected one *.neg and one *.pos file", path.display())))?;
            let mut all = Vec::new();
            for (file, label) in [(neg, 0), (pos, 1)] {
                let bytes = fs::read(&file).map_err(|e| Error::io(&file, e))?;
                // Latin-1: every byte maps to the code point of the same value.
                let text: String = bytes.iter().map(|&b| b as char).collect();
                all.extend(text.lines().filter(|l| !l.trim().is_empty()).map(|l| Example {
                    text: l.trim().to_owned(),
                    pair: None,
                    label,
                }));
            }
            ds.assign_by_hash(all);
        }
    }
    ds.validate()?;
    Ok(ds)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

#[derive(Clone, Copy)]
enum LabelColumn {
    First,
    Last,
}

fn parse_tsv(text: &str, label_count: usize, column: LabelColumn) -> Result<Vec<Example>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let (label, sentences) = match column {
            LabelColumn::First => (fields[0], &fields[1..]),
            LabelColumn::Last => (fields[fields.len() - 1], &fields[..fields.len() - 1]),
        };
        if sentences.is_empty() || sentences.len() > 2 {
            return Err(Error::Dataset(format!(
                "line {}: expected 2 or 3 tab-separated fields",
                i + 1
            )));
        }
        let label: usize = label.trim().parse().ok().filter(|&l| l < label_count).ok_or_else(|| {
            Error::Dataset(format!(
                "line {}: unknown label {label:?} (label_count = {label_count})",
                i + 1
            ))
        })?;
        out.push(Example {
            text: sentences[0].to_owned(),
            pair: sentences.get(1).map(|s| (*s).to_owned()),
            label,
        });
    }
    Ok(out)
}

impl LabeledDataset {
    fn assign_by_hash(&mut self, all: Vec<Example>) {
        for ex in all {
            let key = split_key(&ex);
            match hash_split(&key) {
                Split::Train => self.train.push(ex),
                Split::Dev => self.dev.push(ex),
                Split::Test => self.test.push(ex),
            }
        }
    }

    fn carve_dev_from_train(&mut self) {
        let (dev, train): (Vec<_>, Vec<_>) = std::mem::take(&mut self.train)
            .into_iter()
            .partition(|ex| hash_split(&split_key(ex)) == Split::Dev);
        self.train = train;
        self.dev = dev;
    }

    fn validate(&self) -> Result<()> {
        if self.train.is_empty() {
            return Err(Error::Dataset(format!("{}: train split is empty", self.name)));
        }
        if self.test.is_empty() {
            return Err(Error::Dataset(format!("{}: test split is empty", self.name)));
        }
        Ok(())
    }

    /// Deterministic random subset with at most `train`, `dev` and `test`
    /// examples per split.
    pub fn subsample(&self, train: usize, dev: usize, test: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut take = |xs: &[Example], n: usize| {
            let mut v = xs.to_vec();
            v.shuffle(&mut rng);
            v.truncate(n);
            v
        };
        Self {
            name: self.name.clone(),
            train: take(&self.train, train),
            dev: take(&self.dev, dev),
            test: take(&self.test, test),
            label_count: self.label_count,
        }
    }

    pub fn split(&self, split: Split) -> &[Example] {
        match split {
            Split::Train => &self.train,
            Split::Dev => &self.dev,
            Split::Test => &self.test,
        }
    }

    pub fn is_pair_task(&self) -> bool {
        self.train.first().is_some_and(|e| e.pair.is_some())
    }
}

fn split_key(ex: &Example) -> String {
    match &ex.pair {
        Some(p) => format!("{}\t{}", ex.text, p),
        None => ex.text.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Chosen so the SHA-256 buckets come out 8 / 1 / 1.
    pub(crate) const TOY: &str = include_str!("../../tests/data/toy.tsv");

    #[test]
    fn toy_file_splits_8_1_1() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("toy.tsv");
        fs::write(&p, TOY).unwrap();
        let ds = load_dataset("toy", &p, DatasetFormat::Tsv, 2).unwrap();
        assert_eq!((ds.train.len(), ds.dev.len(), ds.test.len()), (8, 1, 1));
        let again = load_dataset("toy", &p, DatasetFormat::Tsv, 2).unwrap();
        assert_eq!(ds.test, again.test);
    }

    #[test]
    fn out_of_range_label_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.tsv");
        fs::write(&p, "0\tfine\n3\tnot fine\n").unwrap();
        let err = load_dataset("bad", &p, DatasetFormat::Tsv, 2).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        fs::write(&p, "pos\tnope\n").unwrap();
        assert!(load_dataset("bad", &p, DatasetFormat::Tsv, 2).is_err());
    }

    #[test]
    fn official_splits_and_sst_layout() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("sentiment-train"), "good film\t1\nbad film\t0\n").unwrap();
        fs::write(dir.path().join("sentiment-dev"), "fine\t1\n").unwrap();
        fs::write(dir.path().join("sentiment-test"), "awful\t0\nlovely\t1\n").unwrap();
        let ds = load_dataset("sst", dir.path(), DatasetFormat::Sst, 2).unwrap();
        assert_eq!((ds.train.len(), ds.dev.len(), ds.test.len()), (2, 1, 2));
        assert_eq!(ds.test[1].label, 1);
    }

    #[test]
    fn pair_rows_and_polarity() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("pairs.tsv");
        let mut text = String::new();
        for i in 0..60 {
            text.push_str(&format!("{}\tsentence {i}\tother {i}\n", i % 3));
        }
        fs::write(&p, text).unwrap();
        let ds = load_dataset("pairs", &p, DatasetFormat::Tsv, 3).unwrap();
        assert!(ds.is_pair_task());
        assert_eq!(ds.train.len() + ds.dev.len() + ds.test.len(), 60);

        let pol = tempfile::tempdir().unwrap();
        let neg: Vec<u8> = (0..40)
            .flat_map(|i| {
                format!("dull caf\u{e9} {i}\n")
                    .chars()
                    .map(|c| c as u8)
                    .collect::<Vec<_>>()
            })
            .collect();
        fs::write(pol.path().join("rt-polarity.neg"), neg).unwrap();
        fs::write(
            pol.path().join("rt-polarity.pos"),
            (0..40).map(|i| format!("bright {i}\n")).collect::<String>(),
        )
        .unwrap();
        let ds = load_dataset("mr", pol.path(), DatasetFormat::Polarity, 2).unwrap();
        let all: Vec<&Example> = ds.train.iter().chain(&ds.dev).chain(&ds.test).collect();
        assert_eq!(all.len(), 80);
        assert!(all.iter().any(|e| e.text.starts_with("dull caf\u{e9}")));
    }

    #[test]
    fn subsample_is_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("d.tsv");
        fs::write(&p, (0..200).map(|i| format!("{}\ts{i}\n", i % 2)).collect::<String>()).unwrap();
        let ds = load_dataset("d", &p, DatasetFormat::Tsv, 2).unwrap();
        let a = ds.subsample(20, 5, 5, 7);
        let b = ds.subsample(20, 5, 5, 7);
        assert_eq!(a.train, b.train);
        assert_eq!(a.train.len(), 20);
    }
}
