use serde::{Deserialize, Serialize};

use crate::basis::{monomial, multi_indices};
use crate::PolyError;

/// One term `b m_k` of a polynomial in the Taylor basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyEntry {
    pub k: Vec<usize>,
    pub b: f64,
}

/// Polynomial `p(x) = sum_k b_k x^k / k!` of total degree at most `n0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyCoeffs {
    pub n0: usize,
    pub entries: Vec<PolyEntry>,
}

impl PolyCoeffs {
    /// Coefficients listed in the order of [`multi_indices`].
    pub fn from_values(d: usize, n0: usize, values: &[f64]) -> Result<Self, PolyError> {
        let idx = multi_indices(d, n0);
        if idx.len() != values.len() {
            return Err(PolyError::Format(format!("{} coefficients for {} basis elements", values.len(), idx.len())));
        }
        Ok(PolyCoeffs { n0, entries: idx.into_iter().zip(values).map(|(k, &b)| PolyEntry { k, b }).collect() })
    }

    pub fn zeros(d: usize, n0: usize) -> Self {
        let idx = multi_indices(d, n0);
        let n = idx.len();
        Self::from_values(d, n0, &vec![0.0; n]).expect("sizes match")
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.b).collect()
    }

    /// Coefficient of `m_k`, zero when absent.
    pub fn get(&self, k: &[usize]) -> f64 {
        self.entries.iter().find(|e| e.k == k).map_or(0.0, |e| e.b)
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.entries.iter().map(|e| e.b * monomial(&e.k, x)).sum()
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|e| e.b * e.b).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, e| m.max(e.b.abs()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("coefficients serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, PolyError> {
        let p: PolyCoeffs = serde_json::from_str(s).map_err(|e| PolyError::Format(e.to_string()))?;
        let d = p.entries.first().map_or(0, |e| e.k.len());
        for e in &p.entries {
            if e.k.len() != d || e.k.iter().sum::<usize>() > p.n0 || !e.b.is_finite() {
                return Err(PolyError::Format(format!("invalid entry {e:?} for degree {}", p.n0)));
            }
        }
        Ok(p)
    }
}
