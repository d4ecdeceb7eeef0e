//! Noise removal: project sentence embeddings off the right singular vectors
//! of the training matrix that carry the smallest singular values.
//!
//! The right singular vectors of `X` (l × 2d) are the eigenvectors of the Gram
//! matrix `XᵀX`, and the singular values are the square roots of its
//! eigenvalues. Working on the 2d × 2d Gram matrix keeps fitting cheap when
//! `l` runs into the tens of thousands. `X` is used as-is, without
//! mean-centering.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use ndarray::{Array1, Array2, ArrayView1, Axis};

use crate::encoder::SentenceEmbedding;
use crate::error::{Error, Result};
use crate::linalg::symmetric_eigen;

const HEADER_MAGIC: &str = "NOPPA-NOISE";
const HEADER_VERSION: &str = "v1";

/// `k` orthonormal directions (rows of `vk`) to project out.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseModel {
    vk: Array2<f64>,
    singular_values: Vec<f64>,
}

/// Full right-singular spectrum of a training matrix.
///
/// `models` for different `k` share one decomposition, which is what a grid
/// search over `k` wants.
#[derive(Debug, Clone)]
pub struct NoiseSpectrum {
    /// Singular values, descending.
    singular_values: Vec<f64>,
    /// Row `r` pairs with `singular_values[r]`.
    directions: Array2<f64>,
    rows: usize,
}

impl NoiseSpectrum {
    pub fn fit(x: &Array2<f64>) -> Result<Self> {
        if x.nrows() == 0 || x.ncols() == 0 {
            return Err(Error::InvalidConfig("training matrix is empty".into()));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("training embeddings"));
        }
        let gram = x.t().dot(x);
        let eig = symmetric_eigen(&gram);
        let dim = x.ncols();
        let mut directions = Array2::zeros((dim, dim));
        let mut singular_values = Vec::with_capacity(dim);
        // Ascending eigenvalues -> descending singular values.
        for (r, col) in (0..dim).rev().enumerate() {
            singular_values.push(eig.values[col].max(0.0).sqrt());
            let mut row = directions.row_mut(r);
            row.assign(&eig.vectors.column(col));
            canonical_sign(row.as_slice_mut().expect("row-major"));
        }
        Ok(Self {
            singular_values,
            directions,
            rows: x.nrows(),
        })
    }

    pub fn singular_values(&self) -> &[f64] {
        &self.singular_values
    }

    pub fn dim(&self) -> usize {
        self.directions.ncols()
    }

    pub fn max_k(&self) -> usize {
        self.rows.min(self.dim())
    }

    /// The `k` directions with the smallest singular values, kept in the
    /// descending order of the full spectrum.
    pub fn model(&self, k: usize) -> Result<NoiseModel> {
        if k > self.max_k() {
            return Err(Error::InfeasibleRank {
                k,
                rows: self.rows,
                cols: self.dim(),
            });
        }
        let dim = self.dim();
        let start = dim - k;
        Ok(NoiseModel {
            vk: self.directions.slice(ndarray::s![start.., ..]).to_owned(),
            singular_values: self.singular_values[start..].to_vec(),
        })
    }
}

/// Flip `v` so its largest-magnitude component is positive.
fn canonical_sign(v: &mut [f64]) {
    let pivot = v.iter().copied().enumerate().fold(
        (0, 0.0f64),
        |best, (i, x)| if x.abs() > best.1.abs() { (i, x) } else { best },
    );
    if pivot.1 < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// Fits a noise model with `k` directions on `embeddings` (one row per sentence).
pub fn fit(embeddings: &Array2<f64>, k: usize) -> Result<NoiseModel> {
    let max_k = embeddings.nrows().min(embeddings.ncols());
    if k > max_k {
        return Err(Error::InfeasibleRank {
            k,
            rows: embeddings.nrows(),
            cols: embeddings.ncols(),
        });
    }
    NoiseSpectrum::fit(embeddings)?.model(k)
}

/// Stacks equal-length vectors into a row matrix.
pub fn stack<'a, I>(rows: I) -> Result<Array2<f64>>
where
    I: IntoIterator<Item = &'a [f64]>,
{
    let mut data = Vec::new();
    let mut dim = None;
    let mut count = 0;
    for row in rows {
        match dim {
            None => dim = Some(row.len()),
            Some(d) if d != row.len() => {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: row.len(),
                })
            }
            _ => {}
        }
        data.extend_from_slice(row);
        count += 1;
    }
    let dim = dim.ok_or_else(|| Error::InvalidConfig("no rows to stack".into()))?;
    Ok(Array2::from_shape_vec((count, dim), data).expect("shape checked"))
}

impl NoiseModel {
    /// A model that removes nothing.
    pub fn identity(dim: usize) -> Self {
        Self {
            vk: Array2::zeros((0, dim)),
            singular_values: Vec::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.vk.nrows()
    }

    pub fn dim(&self) -> usize {
        self.vk.ncols()
    }

    pub fn directions(&self) -> &Array2<f64> {
        &self.vk
    }

    pub fn singular_values(&self) -> &[f64] {
        &self.singular_values
    }

    /// `c - (c Vkᵀ) Vk`.
    pub fn remove_vector(&self, c: &[f64]) -> Result<Vec<f64>> {
        if c.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: c.len(),
            });
        }
        let mut out = c.to_vec();
        let view = ArrayView1::from(c);
        for row in self.vk.axis_iter(Axis(0)) {
            let coef = row.dot(&view);
            for (o, r) in out.iter_mut().zip(row.iter()) {
                *o -= coef * r;
            }
        }
        Ok(out)
    }

    pub fn remove(&self, e: &SentenceEmbedding) -> Result<SentenceEmbedding> {
        Ok(SentenceEmbedding {
            vector: self.remove_vector(&e.vector)?,
            ..e.clone()
        })
    }

    /// Applies the projection to every row of `x`.
    pub fn remove_rows(&self, x: &Array2<f64>) -> Result<Array2<f64>> {
        if x.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.ncols(),
            });
        }
        if self.k() == 0 {
            return Ok(x.clone());
        }
        let coefs = x.dot(&self.vk.t());
        Ok(x - &coefs.dot(&self.vk))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{HEADER_MAGIC} {HEADER_VERSION} k={} dim={}\n", self.k(), self.dim());
        for row in self.vk.axis_iter(Axis(0)) {
            push_reals(&mut out, row.iter().copied());
        }
        push_reals(&mut out, self.singular_values.iter().copied());
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let corrupt = |msg: String| Error::CorruptedModel(msg);
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| corrupt("missing header".into()))?;
        let (k, dim) = parse_header(header).ok_or_else(|| corrupt(format!("bad header {header:?}")))?;
        if dim == 0 {
            return Err(corrupt("dim must be positive".into()));
        }

        let mut vk = Array2::zeros((k, dim));
        for r in 0..k {
            let line = lines
                .next()
                .ok_or_else(|| corrupt(format!("expected {k} direction rows, found {r}")))?;
            let values = parse_reals(line).map_err(|m| corrupt(format!("row {r}: {m}")))?;
            if values.len() != dim {
                return Err(corrupt(format!(
                    "row {r} has {} values, header says dim={dim}",
                    values.len()
                )));
            }
            vk.row_mut(r).assign(&Array1::from(values));
        }
        let sv_line = lines
            .next()
            .ok_or_else(|| corrupt("missing singular-value line".into()))?;
        let singular_values = parse_reals(sv_line).map_err(|m| corrupt(format!("singular values: {m}")))?;
        if singular_values.len() != k {
            return Err(corrupt(format!("{} singular values for k={k}", singular_values.len())));
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(corrupt("trailing data after singular values".into()));
        }

        for i in 0..k {
            for j in i..k {
                let g = vk.row(i).dot(&vk.row(j));
                let want = if i == j { 1.0 } else { 0.0 };
                if (g - want).abs() > 1e-6 {
                    return Err(corrupt(format!("rows {i} and {j} are not orthonormal")));
                }
            }
        }
        Ok(Self { vk, singular_values })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_text(&text)
    }
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let mut parts = line.split_whitespace();
    if parts.next()? != HEADER_MAGIC || parts.next()? != HEADER_VERSION {
        return None;
    }
    let k = parts.next()?.strip_prefix("k=")?.parse().ok()?;
    let dim = parts.next()?.strip_prefix("dim=")?.parse().ok()?;
    parts.next().is_none().then_some((k, dim))
}

// 17 significant digits round-trip every f64 exactly.
fn push_reals(out: &mut String, values: impl Iterator<Item = f64>) {
    for (i, x) in values.enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{x:.16e}").expect("writing to a String");
    }
    out.push('\n');
}

fn parse_reals(line: &str) -> std::result::Result<Vec<f64>, String> {
    line.split_whitespace()
        .map(|f| {
            f.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| format!("bad real {f:?}"))
        })
        .collect()
}
