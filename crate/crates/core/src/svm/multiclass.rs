use super::binary::{train_binary, LinearModel, SvmParams};
use super::SvmError;
use crate::sparse::SparseVec;
use crate::thread::ConflatedClass;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// One-vs-rest model over the four conflated classes. Classes that had no
/// training rows keep `None` and are never predicted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MulticlassModel {
    pub dim: usize,
    pub models: [Option<LinearModel>; ConflatedClass::COUNT],
}

pub fn train_ovr(
    rows: &[SparseVec],
    labels: &[ConflatedClass],
    dim: usize,
    params: &SvmParams,
) -> Result<MulticlassModel, SvmError> {
    if rows.len() != labels.len() {
        return Err(SvmError::LengthMismatch {
            expected: rows.len(),
            found: labels.len(),
        });
    }
    let mut present = [false; ConflatedClass::COUNT];
    for l in labels {
        present[l.index()] = true;
    }
    if present.iter().filter(|&&p| p).count() < 2 {
        return Err(SvmError::SingleClassInput);
    }
    let trained: Vec<Option<LinearModel>> = ConflatedClass::ALL
        .par_iter()
        .map(|&class| {
            if !present[class.index()] {
                return Ok(None);
            }
            let y: Vec<f64> = labels.iter().map(|&l| if l == class { 1.0 } else { -1.0 }).collect();
            train_binary(rows, &y, dim, params).map(Some)
        })
        .collect::<Result<_, _>>()?;
    let mut models: [Option<LinearModel>; ConflatedClass::COUNT] = Default::default();
    for (slot, m) in models.iter_mut().zip(trained) {
        *slot = m;
    }
    Ok(MulticlassModel { dim, models })
}

impl MulticlassModel {
    /// Per-class decision values; absent classes score negative infinity.
    pub fn decision_values(&self, x: &SparseVec) -> Result<[f64; ConflatedClass::COUNT], SvmError> {
        if x.min_dim() > self.dim {
            return Err(SvmError::DimensionMismatch {
                column: x.min_dim() - 1,
                dim: self.dim,
            });
        }
        let mut out = [f64::NEG_INFINITY; ConflatedClass::COUNT];
        for (slot, m) in out.iter_mut().zip(&self.models) {
            if let Some(m) = m {
                *slot = m.decision(x)?;
            }
        }
        Ok(out)
    }

    pub fn predict(&self, x: &SparseVec) -> Result<ConflatedClass, SvmError> {
        Ok(argmax_class(&self.decision_values(x)?))
    }
}

/// Index of the largest value; the lowest index wins ties.
pub(crate) fn argmax_class(values: &[f64; ConflatedClass::COUNT]) -> ConflatedClass {
    let mut best = 0;
    for i in 1..values.len() {
        if values[i] > values[best] {
            best = i;
        }
    }
    ConflatedClass::from_index(best).expect("index below class count")
}

#[cfg(test)]
mod tests {
    use super::*;
    use ConflatedClass::*;

    #[test]
    fn argmax_and_ties() {
        assert_eq!(argmax_class(&[2.0, -1.0, -1.0, -1.0]), CyberHate);
        assert_eq!(argmax_class(&[-1.0, 0.5, 0.5, -1.0]), SupportHate);
        assert_eq!(argmax_class(&[f64::NEG_INFINITY, f64::NEG_INFINITY, -3.0, -4.0]), DisagreeOrInsult);
    }

    #[test]
    fn absent_class_never_predicted() {
        let rows: Vec<SparseVec> = [[1.0, 0.0], [0.9, 0.1], [0.0, 1.0], [0.1, 0.9]]
            .iter()
            .map(|r| SparseVec::from_dense(r))
            .collect();
        let labels = [CyberHate, CyberHate, General, General];
        let m = train_ovr(&rows, &labels, 2, &SvmParams::default()).unwrap();
        assert!(m.models[1].is_none() && m.models[2].is_none());
        for x in &rows {
            let p = m.predict(x).unwrap();
            assert!(p == CyberHate || p == General);
        }
        assert_eq!(m.predict(&rows[0]).unwrap(), CyberHate);
        assert_eq!(m.predict(&rows[3]).unwrap(), General);
    }

    #[test]
    fn single_class_rejected() {
        let rows = vec![SparseVec::from_dense(&[1.0]); 3];
        assert_eq!(
            train_ovr(&rows, &[General; 3], 1, &SvmParams::default()),
            Err(SvmError::SingleClassInput)
        );
    }
}
