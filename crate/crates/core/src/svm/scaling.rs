use super::SvmError;
use crate::sparse::SparseVec;
use serde::{Deserialize, Serialize};

/// Per-feature min and max seen on training rows (absent entries count as 0).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingParams {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

pub fn fit_scaling(rows: &[SparseVec], dim: usize) -> Result<ScalingParams, SvmError> {
    if rows.is_empty() {
        return Err(SvmError::EmptyInput);
    }
    let mut min = vec![f64::INFINITY; dim];
    let mut max = vec![f64::NEG_INFINITY; dim];
    let mut present = vec![0usize; dim];
    for (r, row) in rows.iter().enumerate() {
        for (j, v) in row.iter() {
            if j >= dim {
                return Err(SvmError::DimensionMismatch { column: j, dim });
            }
            if !v.is_finite() {
                return Err(SvmError::NonFiniteFeature { row: r });
            }
            min[j] = min[j].min(v);
            max[j] = max[j].max(v);
            present[j] += 1;
        }
    }
    for j in 0..dim {
        if present[j] < rows.len() {
            min[j] = min[j].min(0.0);
            max[j] = max[j].max(0.0);
        }
    }
    Ok(ScalingParams { min, max })
}

impl ScalingParams {
    pub fn dim(&self) -> usize {
        self.min.len()
    }

    fn scale_one(&self, j: usize, v: f64) -> f64 {
        let range = self.max[j] - self.min[j];
        if range > 0.0 {
            ((v - self.min[j]) / range).clamp(0.0, 1.0)
        } else {
            0.0
        }
    }

    /// Maps each feature to `[0, 1]` by `(x - min) / (max - min)`, clamping
    /// values outside the training range; constant features map to 0.
    pub fn apply(&self, x: &SparseVec) -> Result<SparseVec, SvmError> {
        let dim = self.dim();
        if let Some((j, _)) = x.iter().find(|&(j, _)| j >= dim) {
            return Err(SvmError::DimensionMismatch { column: j, dim });
        }
        let mut pairs: Vec<(usize, f64)> = x.iter().map(|(j, v)| (j, self.scale_one(j, v))).collect();
        // features whose training minimum is negative give absent entries a nonzero image
        for j in 0..dim {
            if self.min[j] < 0.0 && x.get(j) == 0.0 {
                pairs.push((j, self.scale_one(j, 0.0)));
            }
        }
        Ok(SparseVec::from_pairs(pairs))
    }
}
