use super::SvmError;
use crate::thread::ConflatedClass;
use serde::{Deserialize, Serialize};

const K: usize = ConflatedClass::COUNT;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
}

/// Confusion matrix (rows are gold labels, columns predictions) with
/// per-class and support-weighted scores.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub confusion: [[usize; K]; K],
    pub per_class: [ClassMetrics; K],
    pub weighted_precision: f64,
    pub weighted_recall: f64,
    pub weighted_f1: f64,
    pub accuracy: f64,
    pub total: usize,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn harmonic(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

pub fn evaluate(gold: &[ConflatedClass], predicted: &[ConflatedClass]) -> Result<EvalReport, SvmError> {
    if gold.len() != predicted.len() {
        return Err(SvmError::LengthMismatch {
            expected: gold.len(),
            found: predicted.len(),
        });
    }
    let mut confusion = [[0usize; K]; K];
    for (g, p) in gold.iter().zip(predicted) {
        confusion[g.index()][p.index()] += 1;
    }
    Ok(EvalReport::from_confusion(confusion))
}

impl EvalReport {
    pub fn from_confusion(confusion: [[usize; K]; K]) -> Self {
        let support: Vec<usize> = confusion.iter().map(|r| r.iter().sum()).collect();
        let predicted: Vec<usize> = (0..K).map(|j| confusion.iter().map(|r| r[j]).sum()).collect();
        let total: usize = support.iter().sum();
        let trace: usize = (0..K).map(|i| confusion[i][i]).sum();

        let mut per_class = [ClassMetrics {
            precision: 0.0,
            recall: 0.0,
            f1: 0.0,
            support: 0,
        }; K];
        for c in 0..K {
            let tp = confusion[c][c];
            let precision = ratio(tp, predicted[c]);
            let recall = ratio(tp, support[c]);
            per_class[c] = ClassMetrics {
                precision,
                recall,
                f1: harmonic(precision, recall),
                support: support[c],
            };
        }

        // Support-weighted sums. Recall terms are support * tp / support, an
        // integer, so the weighted recall is exactly trace / total.
        let mut wp = 0.0;
        let mut wr = 0.0;
        let mut wf = 0.0;
        for c in 0..K {
            let tp = confusion[c][c];
            wp += ratio(support[c] * tp, predicted[c]);
            wr += ratio(support[c] * tp, support[c]);
            wf += support[c] as f64 * per_class[c].f1;
        }
        let n = total as f64;
        let (weighted_precision, weighted_recall, weighted_f1) = if total == 0 {
            (0.0, 0.0, 0.0)
        } else {
            (wp / n, wr / n, wf / n)
        };
        EvalReport {
            confusion,
            per_class,
            weighted_precision,
            weighted_recall,
            weighted_f1,
            accuracy: ratio(trace, total),
            total,
        }
    }

    pub fn trace(&self) -> usize {
        (0..K).map(|i| self.confusion[i][i]).sum()
    }
}
