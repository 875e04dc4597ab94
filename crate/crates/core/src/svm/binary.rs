use super::SvmError;
use crate::sparse::SparseVec;
use serde::{Deserialize, Serialize};

/// Kernel width kept for the record; the linear kernel does not use it.
pub const DEFAULT_GAMMA: f64 = 0.1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SvmParams {
    pub c: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SvmParams {
    fn default() -> Self {
        SvmParams {
            c: 1.0,
            tol: 1e-3,
            max_iter: 1000,
        }
    }
}

impl SvmParams {
    pub fn with_c(c: f64) -> Self {
        SvmParams {
            c,
            ..SvmParams::default()
        }
    }

    fn validate(&self) -> Result<(), SvmError> {
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(SvmError::InvalidParameter("C must be positive"));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(SvmError::InvalidParameter("tol must be positive"));
        }
        if self.max_iter == 0 {
            return Err(SvmError::InvalidParameter("max_iter must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub c: f64,
    pub gamma: f64,
    pub iterations: usize,
    pub dual_objective: f64,
    pub converged: bool,
    /// Dual variables at termination, one per training row.
    #[serde(skip)]
    pub alpha: Vec<f64>,
}

impl LinearModel {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn decision(&self, x: &SparseVec) -> Result<f64, SvmError> {
        let dim = self.dim();
        if x.min_dim() > dim {
            return Err(SvmError::DimensionMismatch {
                column: x.min_dim() - 1,
                dim,
            });
        }
        Ok(x.dot_dense(&self.weights) + self.bias)
    }

    /// Primal objective `½(‖w‖² + b²) + C Σ max(0, 1 − yᵢ(w·xᵢ + b))` of the
    /// bias-augmented problem the trainer solves.
    pub fn primal_objective(&self, rows: &[SparseVec], y: &[f64]) -> f64 {
        let reg = 0.5 * (self.weights.iter().map(|w| w * w).sum::<f64>() + self.bias * self.bias);
        let hinge: f64 = rows
            .iter()
            .zip(y)
            .map(|(x, &yi)| (1.0 - yi * (x.dot_dense(&self.weights) + self.bias)).max(0.0))
            .sum();
        reg + self.c * hinge
    }
}

/// Dual coordinate descent on the bias-augmented hinge-loss SVM.
///
/// Each row is extended with a constant 1 so the bias is learned as an extra
/// weight. Rows are visited in index order every sweep, which makes the result
/// a pure function of the input. The returned bias is the mean of
/// `yᵢ − w·xᵢ` over support vectors with `0 < αᵢ < C`, falling back to the
/// augmented weight when there are none.
pub fn train_binary(rows: &[SparseVec], y: &[f64], dim: usize, params: &SvmParams) -> Result<LinearModel, SvmError> {
    params.validate()?;
    if rows.len() != y.len() {
        return Err(SvmError::LengthMismatch {
            expected: rows.len(),
            found: y.len(),
        });
    }
    if !(y.iter().any(|&v| v > 0.0) && y.iter().any(|&v| v < 0.0)) {
        return Err(SvmError::SingleClassInput);
    }
    if y.iter().any(|&v| v != 1.0 && v != -1.0) {
        return Err(SvmError::InvalidParameter("labels must be +1 or -1"));
    }
    for (r, x) in rows.iter().enumerate() {
        if x.iter().any(|(_, v)| !v.is_finite()) {
            return Err(SvmError::NonFiniteFeature { row: r });
        }
        if x.min_dim() > dim {
            return Err(SvmError::DimensionMismatch {
                column: x.min_dim() - 1,
                dim,
            });
        }
    }

    let c = params.c;
    let n = rows.len();
    let q_diag: Vec<f64> = rows.iter().map(|x| x.norm_sq() + 1.0).collect();
    let mut alpha = vec![0.0; n];
    let mut w = vec![0.0; dim];
    let mut w_bias = 0.0;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < params.max_iter {
        iterations += 1;
        let mut max_violation: f64 = 0.0;
        for i in 0..n {
            let x = &rows[i];
            let yi = y[i];
            let g = yi * (x.dot_dense(&w) + w_bias) - 1.0;
            let pg = if alpha[i] <= 0.0 {
                g.min(0.0)
            } else if alpha[i] >= c {
                g.max(0.0)
            } else {
                g
            };
            max_violation = max_violation.max(pg.abs());
            if pg != 0.0 {
                let old = alpha[i];
                alpha[i] = (old - g / q_diag[i]).clamp(0.0, c);
                let delta = (alpha[i] - old) * yi;
                if delta != 0.0 {
                    x.axpy_into(delta, &mut w);
                    w_bias += delta;
                }
            }
        }
        if max_violation <= params.tol {
            converged = true;
            break;
        }
    }
    if !converged {
        log::warn!("svm: stopped after {iterations} sweeps without reaching tol {}", params.tol);
    }

    let free: Vec<usize> = (0..n).filter(|&i| alpha[i] > 0.0 && alpha[i] < c).collect();
    let bias = if free.is_empty() {
        w_bias
    } else {
        free.iter().map(|&i| y[i] - rows[i].dot_dense(&w)).sum::<f64>() / free.len() as f64
    };
    let norm_sq = w.iter().map(|v| v * v).sum::<f64>() + w_bias * w_bias;
    let dual_objective = alpha.iter().sum::<f64>() - 0.5 * norm_sq;

    Ok(LinearModel {
        weights: w,
        bias,
        c,
        gamma: DEFAULT_GAMMA,
        iterations,
        dual_objective,
        converged,
        alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[f64]]) -> Vec<SparseVec> {
        v.iter().map(|r| SparseVec::from_dense(r)).collect()
    }

    #[test]
    fn two_point_analytic() {
        let rows = pts(&[&[1.0], &[-1.0]]);
        let m = train_binary(&rows, &[1.0, -1.0], 1, &SvmParams::default()).unwrap();
        assert!((m.weights[0] - 1.0).abs() < 1e-6);
        assert!(m.bias.abs() < 1e-6);
        assert!(m.converged);
        assert!((m.dual_objective - 0.5).abs() < 1e-9);
    }

    #[test]
    fn separable_fixture_fits_training_set() {
        let rows = pts(&[
            &[2.0, 2.0],
            &[3.0, 1.5],
            &[2.5, 3.0],
            &[4.0, 2.0],
            &[3.0, 3.5],
            &[-1.0, -2.0],
            &[-2.0, -1.0],
            &[-1.5, -3.0],
            &[-3.0, -0.5],
            &[-2.5, -2.5],
        ]);
        let y = [1.0, 1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0, -1.0];
        let m = train_binary(&rows, &y, 2, &SvmParams::with_c(10.0)).unwrap();
        for (x, &yi) in rows.iter().zip(&y) {
            assert!(m.decision(x).unwrap() * yi > 0.0);
        }
        assert!(m.alpha.iter().all(|&a| (0.0..=10.0).contains(&a)));
        assert!(m.primal_objective(&rows, &y) >= m.dual_objective - 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        let rows = pts(&[&[1.0], &[2.0]]);
        let p = SvmParams::default();
        assert_eq!(train_binary(&rows, &[1.0, 1.0], 1, &p), Err(SvmError::SingleClassInput));
        let bad = vec![SparseVec::from_pairs(vec![(0, f64::NAN)]), SparseVec::from_dense(&[1.0])];
        assert_eq!(
            train_binary(&bad, &[1.0, -1.0], 1, &p),
            Err(SvmError::NonFiniteFeature { row: 0 })
        );
        assert!(train_binary(&rows, &[1.0, -1.0], 1, &SvmParams::with_c(0.0)).is_err());
    }
}
