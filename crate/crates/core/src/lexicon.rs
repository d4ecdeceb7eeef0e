//! Word vectors, unigram frequencies and tokenization.
//!
//! Vector files use the plain GloVe text layout (`token f1 f2 ... fd`), and
//! frequency files are `token<TAB>count`. Both tables are immutable once
//! loaded and can be shared freely between worker threads.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Token → dense `f32` vector, all of one dimension.
#[derive(Debug, Clone)]
pub struct VectorTable {
    dim: usize,
    index: HashMap<String, usize>,
    tokens: Vec<String>,
    data: Vec<f32>,
    parsed_lines: usize,
}

impl VectorTable {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidConfig("vector dimension must be positive".into()));
        }
        Ok(Self {
            dim,
            index: HashMap::new(),
            tokens: Vec::new(),
            data: Vec::new(),
            parsed_lines: 0,
        })
    }

    /// Builds a table from in-memory pairs. Duplicates keep the first vector.
    pub fn from_pairs<I, S>(dim: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Vec<f32>)>,
        S: Into<String>,
    {
        let mut table = Self::new(dim)?;
        for (token, vector) in pairs {
            table.insert(token.into(), &vector)?;
        }
        Ok(table)
    }

    /// Inserts a vector; returns `false` if the token was already present.
    pub fn insert(&mut self, token: String, vector: &[f32]) -> Result<bool> {
        if vector.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: vector.len(),
            });
        }
        if vector.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("word vector"));
        }
        if self.index.contains_key(&token) {
            return Ok(false);
        }
        self.index.insert(token.clone(), self.tokens.len());
        self.tokens.push(token);
        self.data.extend_from_slice(vector);
        Ok(true)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vocab_size(&self) -> usize {
        self.tokens.len()
    }

    /// Number of lines parsed when the table was loaded from a file,
    /// duplicates included.
    pub fn parsed_lines(&self) -> usize {
        self.parsed_lines
    }

    /// `None` for absent tokens, never a zero vector.
    pub fn get(&self, token: &str) -> Option<&[f32]> {
        self.index.get(token).map(|&row| self.row(row))
    }

    pub fn contains(&self, token: &str) -> bool {
        self.index.contains_key(token)
    }

    fn row(&self, row: usize) -> &[f32] {
        &self.data[row * self.dim..(row + 1) * self.dim]
    }

    /// Iterates entries in insertion (file) order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &[f32])> {
        self.tokens
            .iter()
            .enumerate()
            .map(move |(i, t)| (t.as_str(), self.row(i)))
    }

    /// Writes the table in GloVe text format. `f32` values are printed with
    /// their shortest round-trip representation, so reloading is lossless.
    pub fn write_text<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (token, vector) in self.iter() {
            out.write_all(token.as_bytes())?;
            for x in vector {
                write!(out, " {x}")?;
            }
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut out = BufWriter::new(file);
        self.write_text(&mut out)
            .and_then(|_| out.flush())
            .map_err(|e| Error::io(path, e))
    }

    /// Tokenizes `raw` and drops tokens that have no vector.
    pub fn tokenize(&self, raw: &str) -> TokenSequence {
        tokenize(raw).retain_known(self)
    }
}

/// Loads a GloVe-format text file.
///
/// The dimension is taken from `expected_dim` or, when absent, from the first
/// line. Every later line must agree.
pub fn load_vectors(path: impl AsRef<Path>, expected_dim: Option<usize>) -> Result<VectorTable> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_vectors(BufReader::with_capacity(1 << 20, file), expected_dim).map_err(|e| match e {
        Error::EmptyFile { .. } => Error::EmptyFile { path: path.into() },
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    })
}

/// Parses GloVe text from any reader; see [`load_vectors`].
pub fn read_vectors<R: BufRead>(mut reader: R, expected_dim: Option<usize>) -> Result<VectorTable> {
    let mut table: Option<VectorTable> = None;
    let mut buf = String::new();
    let mut values = Vec::new();
    let mut line_no = 0;
    loop {
        buf.clear();
        let read = reader.read_line(&mut buf).map_err(|e| Error::io("<vectors>", e))?;
        if read == 0 {
            break;
        }
        line_no += 1;
        let line = buf.trim_end_matches(['\n', '\r']);
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(' ').filter(|f| !f.is_empty());
        let token = fields.next().unwrap_or_default();
        values.clear();
        for field in fields {
            let x: f32 = field.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("unparseable float {field:?}"),
            })?;
            if !x.is_finite() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("non-finite value {field:?}"),
                });
            }
            values.push(x);
        }
        let table = match table.as_mut() {
            Some(t) => t,
            None => {
                let dim = expected_dim.unwrap_or(values.len());
                table.insert(VectorTable::new(dim).map_err(|_| Error::Parse {
                    line: line_no,
                    message: "line has no vector components".into(),
                })?)
            }
        };
        if values.len() != table.dim {
            return Err(Error::DimMismatchAtLine {
                line: line_no,
                expected: table.dim,
                found: values.len(),
            });
        }
        table.parsed_lines += 1;
        table.insert(token.to_owned(), &values)?;
    }
    table.ok_or_else(|| Error::EmptyFile {
        path: "<vectors>".into(),
    })
}

/// Unigram probabilities, `count / total_count`.
#[derive(Debug, Clone)]
pub struct FrequencyTable {
    probs: HashMap<String, f64>,
    total_count: u64,
}

impl FrequencyTable {
    /// Builds the table from raw counts; rejects zero counts and duplicates.
    pub fn from_counts<I, S>(counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, u64)>,
        S: Into<String>,
    {
        let mut raw: Vec<(String, u64)> = Vec::new();
        let mut seen = HashMap::new();
        for (i, (token, count)) in counts.into_iter().enumerate() {
            let token = token.into();
            if count == 0 {
                return Err(Error::NonPositiveCount { line: i + 1, token });
            }
            if seen.insert(token.clone(), ()).is_some() {
                return Err(Error::DuplicateToken { line: i + 1, token });
            }
            raw.push((token, count));
        }
        let total_count: u64 = raw.iter().map(|(_, c)| c).sum();
        if total_count == 0 {
            return Err(Error::EmptyFile {
                path: "<frequencies>".into(),
            });
        }
        let total = total_count as f64;
        let probs = raw.into_iter().map(|(t, c)| (t, c as f64 / total)).collect();
        Ok(Self { probs, total_count })
    }

    /// `Pr(w)`, or `None` if the token was never counted.
    pub fn get(&self, token: &str) -> Option<f64> {
        self.probs.get(token).copied()
    }

    /// `Pr(w)` with the out-of-vocabulary policy applied: unseen tokens are
    /// treated as probability zero, which gives them the maximal weight.
    pub fn prob_or_zero(&self, token: &str) -> f64 {
        self.get(token).unwrap_or(0.0)
    }

    pub fn total_count(&self) -> u64 {
        self.total_count
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.probs.iter().map(|(t, &p)| (t.as_str(), p))
    }
}

/// Loads a `token<TAB>count` file.
pub fn load_frequencies(path: impl AsRef<Path>) -> Result<FrequencyTable> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut counts = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let (token, count) = line.rsplit_once('\t').ok_or_else(|| Error::Parse {
            line: line_no,
            message: "expected `token<TAB>count`".into(),
        })?;
        let count: i64 = count.trim().parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("unparseable count {count:?}"),
        })?;
        if count <= 0 {
            return Err(Error::NonPositiveCount {
                line: line_no,
                token: token.to_owned(),
            });
        }
        if seen.insert(token.to_owned(), line_no).is_some() {
            return Err(Error::DuplicateToken {
                line: line_no,
                token: token.to_owned(),
            });
        }
        counts.push((token.to_owned(), count as u64));
    }
    if counts.is_empty() {
        return Err(Error::EmptyFile { path: path.into() });
    }
    FrequencyTable::from_counts(counts)
}

/// A tokenized sentence plus the tokens removed for lack of a vector.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenSequence {
    pub tokens: Vec<String>,
    /// `(original position, token)`, positions strictly increasing.
    pub dropped: Vec<(usize, String)>,
}

impl TokenSequence {
    pub fn new(tokens: Vec<String>) -> Self {
        Self {
            tokens,
            dropped: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Moves tokens without a vector into `dropped`.
    pub fn retain_known(self, vectors: &VectorTable) -> Self {
        // Positions refer to the sequence before any filtering, so merge the
        // already-dropped entries back in by position.
        let mut all: Vec<(usize, String, bool)> = Vec::with_capacity(self.tokens.len() + self.dropped.len());
        let mut prior = self.dropped.into_iter().peekable();
        let mut pos = 0;
        for token in self.tokens {
            while prior.peek().is_some_and(|(p, _)| *p == pos) {
                let (p, t) = prior.next().unwrap();
                all.push((p, t, false));
                pos += 1;
            }
            all.push((pos, token, true));
            pos += 1;
        }
        all.extend(prior.map(|(p, t)| (p, t, false)));

        let mut out = TokenSequence::default();
        for (p, t, live) in all {
            if live && vectors.contains(&t) {
                out.tokens.push(t);
            } else {
                out.dropped.push((p, t));
            }
        }
        out
    }
}

const PUNCTUATION: [char; 9] = ['.', ',', '!', '?', ';', ':', '"', '(', ')'];

/// Lowercases, splits on whitespace and isolates `. , ! ? ; : " ( )`.
///
/// No vocabulary filtering happens here; see [`TokenSequence::retain_known`].
pub fn tokenize(raw: &str) -> TokenSequence {
    let mut tokens = Vec::new();
    for word in raw.split_whitespace() {
        let lowered = word.to_lowercase();
        let mut current = String::new();
        for ch in lowered.chars() {
            if PUNCTUATION.contains(&ch) {
                if !current.is_empty() {
                    tokens.push(std::mem::take(&mut current));
                }
                tokens.push(ch.to_string());
            } else {
                current.push(ch);
            }
        }
        if !current.is_empty() {
            tokens.push(current);
        }
    }
    TokenSequence::new(tokens)
}
