//! Locating the standard external resources (pre-trained vectors, unigram
//! counts, sentiment datasets) under a data root such as `$NOPPA_DATA_DIR`.
//!
//! Expected layout:
//!
//! ```text
//! <root>/glove.6B.300d.txt       (or glove.6B.{200,100,50}d.txt)
//! <root>/freq.tsv                token<TAB>count
//! <root>/SST2/sentiment-{train,dev,test}   or <root>/SST/binary/...
//! <root>/MR/rt-polarity.{neg,pos}
//! ```

use std::io;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::evalkit::dataset::{load_dataset, DatasetFormat, LabeledDataset};
use crate::lexicon::{load_frequencies, load_vectors, FrequencyTable, VectorTable};

pub const DATA_DIR_ENV: &str = "NOPPA_DATA_DIR";

const VECTOR_FILES: [&str; 4] = [
    "glove.6B.300d.txt",
    "glove.6B.200d.txt",
    "glove.6B.100d.txt",
    "glove.6B.50d.txt",
];
const SST_DIRS: [&str; 2] = ["SST2", "SST/binary"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resources {
    pub root: PathBuf,
    pub vectors: PathBuf,
    pub freq: PathBuf,
    pub sst2: Option<PathBuf>,
    pub mr: Option<PathBuf>,
}

fn missing(path: PathBuf, what: &str) -> Error {
    Error::io(
        path,
        io::Error::new(io::ErrorKind::NotFound, format!("{what} not found")),
    )
}

impl Resources {
    pub fn locate(root: impl AsRef<Path>) -> Result<Self> {
        let root = root.as_ref().to_path_buf();
        let vectors = VECTOR_FILES
            .iter()
            .map(|f| root.join(f))
            .find(|p| p.is_file())
            .ok_or_else(|| missing(root.join(VECTOR_FILES[0]), "word vectors"))?;
        let freq = root.join("freq.tsv");
        if !freq.is_file() {
            return Err(missing(freq, "frequency table"));
        }
        let sst2 = SST_DIRS
            .iter()
            .map(|d| root.join(d))
            .find(|p| p.join("sentiment-train").is_file());
        let mr = Some(root.join("MR")).filter(|p| p.is_dir());
        if sst2.is_none() && mr.is_none() {
            return Err(missing(root.join("SST2"), "SST-2 or MR dataset"));
        }
        Ok(Self {
            root,
            vectors,
            freq,
            sst2,
            mr,
        })
    }

    /// Resources under `$NOPPA_DATA_DIR`.
    pub fn from_env() -> Result<Self> {
        let root =
            std::env::var_os(DATA_DIR_ENV).ok_or_else(|| Error::InvalidConfig(format!("{DATA_DIR_ENV} is not set")))?;
        Self::locate(root)
    }

    pub fn load_tables(&self) -> Result<(VectorTable, FrequencyTable)> {
        Ok((load_vectors(&self.vectors, None)?, load_frequencies(&self.freq)?))
    }

    /// SST-2 when present, MR otherwise.
    pub fn sentiment_dataset(&self) -> Result<LabeledDataset> {
        match (&self.sst2, &self.mr) {
            (Some(p), _) => load_dataset("sst2", p, DatasetFormat::Sst, 2),
            (None, Some(p)) => load_dataset("mr", p, DatasetFormat::Polarity, 2),
            (None, None) => Err(missing(self.root.join("SST2"), "SST-2 or MR dataset")),
        }
    }
}
