//! Entropy and mutual information in bits.
//!
//! All sums use `0·log 0 = 0`. The input alphabet is binary throughout; the
//! output alphabet has two symbols for the basic model and three (with the
//! inconclusive symbol) for key distribution.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const NORMALIZATION_TOL: f64 = 1e-9;

fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        p * p.log2()
    } else {
        0.0
    }
}

/// Shannon entropy of a probability vector.
pub fn entropy(probs: &[f64]) -> f64 {
    -probs.iter().map(|&p| plogp(p)).sum::<f64>()
}

pub fn binary_entropy(p: f64) -> f64 {
    entropy(&[p, 1.0 - p])
}

/// Joint law `p(s, y)` stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointDistribution {
    rows: usize,
    cols: usize,
    p: Vec<f64>,
}

impl JointDistribution {
    pub fn new(rows: usize, cols: usize, p: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || p.len() != rows * cols {
            return Err(Error::MalformedMatrix(format!(
                "{} entries for a {rows}x{cols} table",
                p.len()
            )));
        }
        if let Some(bad) = p.iter().find(|v| !(**v >= 0.0)) {
            return Err(Error::MalformedMatrix(format!("entry {bad} is not >= 0")));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized { sum });
        }
        Ok(JointDistribution { rows, cols, p })
    }

    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::MalformedMatrix("ragged rows".into()));
        }
        Self::new(
            rows.len(),
            cols,
            rows.iter().flat_map(|r| r.iter().copied()).collect(),
        )
    }

    pub fn get(&self, s: usize, y: usize) -> f64 {
        self.p[s * self.cols + y]
    }

    pub fn input_marginal(&self) -> Vec<f64> {
        self.p
            .chunks(self.cols)
            .map(|row| row.iter().sum())
            .collect()
    }

    pub fn output_marginal(&self) -> Vec<f64> {
        (0..self.cols)
            .map(|y| (0..self.rows).map(|s| self.get(s, y)).sum())
            .collect()
    }

    /// `I(S;Y) = Σ p(s,y) log₂ [p(s,y) / (p(s) p(y))]`.
    pub fn mutual_information(&self) -> f64 {
        let ps = self.input_marginal();
        let py = self.output_marginal();
        let mut mi = 0.0;
        for s in 0..self.rows {
            for y in 0..self.cols {
                let pj = self.get(s, y);
                if pj > 0.0 {
                    mi += pj * (pj / (ps[s] * py[y])).log2();
                }
            }
        }
        mi.max(0.0)
    }
}

pub fn mutual_information(joint: &JointDistribution) -> f64 {
    joint.mutual_information()
}

/// Channel `p(y | s)`, one row per input symbol.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransitionMatrix {
    cols: usize,
    rows: Vec<f64>,
}

impl TransitionMatrix {
    /// `data` holds the rows for `s = 0` then `s = 1`.
    pub fn new(cols: usize, data: Vec<f64>) -> Result<Self> {
        if cols == 0 || data.is_empty() || !data.len().is_multiple_of(cols) {
            return Err(Error::MalformedMatrix(format!(
                "{} entries do not form rows of width {cols}",
                data.len()
            )));
        }
        for (s, row) in data.chunks(cols).enumerate() {
            if row.iter().any(|p| !(*p >= 0.0 && *p <= 1.0)) {
                return Err(Error::MalformedMatrix(format!(
                    "row {s} has entries outside [0, 1]"
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > NORMALIZATION_TOL {
                return Err(Error::MalformedMatrix(format!("row {s} sums to {sum}")));
            }
        }
        Ok(TransitionMatrix { cols, rows: data })
    }

    pub fn inputs(&self) -> usize {
        self.rows.len() / self.cols
    }

    pub fn outputs(&self) -> usize {
        self.cols
    }

    pub fn get(&self, s: usize, y: usize) -> f64 {
        self.rows[s * self.cols + y]
    }

    pub fn row(&self, s: usize) -> &[f64] {
        &self.rows[s * self.cols..(s + 1) * self.cols]
    }

    /// Joint law for a binary input with `Pr{S = 1} = p_s1`.
    pub fn joint(&self, p_s1: f64) -> Result<JointDistribution> {
        if self.inputs() != 2 {
            return Err(Error::MalformedMatrix("binary input expected".into()));
        }
        let prior = [1.0 - p_s1, p_s1];
        let p = (0..2)
            .flat_map(|s| self.row(s).iter().map(move |&v| v * prior[s]))
            .collect();
        JointDistribution::new(2, self.cols, p)
    }
}

/// `I(S;Y) = H(Y) − H(Y|S)` for a binary input with prior `Pr{S=1} = p_s1`.
pub fn analytic_mi(cond: &TransitionMatrix, p_s1: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p_s1) {
        return Err(Error::MalformedMatrix(format!(
            "prior {p_s1} not in [0, 1]"
        )));
    }
    if cond.inputs() != 2 {
        return Err(Error::MalformedMatrix("binary input expected".into()));
    }
    let prior = [1.0 - p_s1, p_s1];
    let py: Vec<f64> = (0..cond.outputs())
        .map(|y| prior[0] * cond.get(0, y) + prior[1] * cond.get(1, y))
        .collect();
    let h_y_given_s: f64 = (0..2).map(|s| prior[s] * entropy(cond.row(s))).sum();
    Ok((entropy(&py) - h_y_given_s).max(0.0))
}

/// Empirical joint histogram of `(S, Y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JointCounts {
    rows: usize,
    cols: usize,
    counts: Vec<u64>,
}

impl JointCounts {
    pub fn new(rows: usize, cols: usize) -> Self {
        JointCounts {
            rows,
            cols,
            counts: vec![0; rows * cols],
        }
    }

    pub fn from_counts(rows: usize, cols: usize, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != rows * cols {
            return Err(Error::MalformedMatrix(format!(
                "{} counts for a {rows}x{cols} table",
                counts.len()
            )));
        }
        Ok(JointCounts { rows, cols, counts })
    }

    #[inline]
    pub fn record(&mut self, s: usize, y: usize) {
        self.counts[s * self.cols + y] += 1;
    }

    pub fn get(&self, s: usize, y: usize) -> u64 {
        self.counts[s * self.cols + y]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Entrywise sum; tables must have the same shape.
    pub fn merge(&mut self, other: &JointCounts) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    pub fn to_joint(&self) -> Result<JointDistribution> {
        let total = self.total();
        if total == 0 {
            return Err(Error::EmptyCounts);
        }
        let n = total as f64;
        JointDistribution::new(
            self.rows,
            self.cols,
            self.counts.iter().map(|&c| c as f64 / n).collect(),
        )
    }

    /// Empirical conditional frequencies `p̂(y | s)`; rows with no trials are
    /// left at zero.
    pub fn conditional_frequencies(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.counts.len()];
        for s in 0..self.rows {
            let row = &self.counts[s * self.cols..(s + 1) * self.cols];
            let n: u64 = row.iter().sum();
            if n > 0 {
                for y in 0..self.cols {
                    out[s * self.cols + y] = row[y] as f64 / n as f64;
                }
            }
        }
        out
    }
}

/// Plug-in (maximum-likelihood) estimate of `I(S;Y)` from joint counts.
pub fn estimate_mi(counts: &JointCounts) -> Result<f64> {
    Ok(counts.to_joint()?.mutual_information())
}
