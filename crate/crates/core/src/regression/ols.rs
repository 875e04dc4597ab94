use super::{student_t_p, RegressionError};
use crate::thread::{ThreadStats, PREDICTOR_NAMES};
use serde::{Deserialize, Serialize};

/// Name of the intercept column.
pub const INTERCEPT: &str = "cons";

/// Relative tolerance below which a column's residual norm marks it collinear.
pub const RANK_TOL: f64 = 1e-10;

/// Column-major design matrix with named columns and a response vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DesignMatrix {
    pub names: Vec<String>,
    pub columns: Vec<Vec<f64>>,
    pub y: Vec<f64>,
}

impl DesignMatrix {
    pub fn new(names: Vec<String>, columns: Vec<Vec<f64>>, y: Vec<f64>) -> Result<Self, RegressionError> {
        if y.is_empty() {
            return Err(RegressionError::EmptyInput);
        }
        assert_eq!(names.len(), columns.len(), "one name per column");
        for (name, col) in names.iter().zip(&columns) {
            if col.len() != y.len() {
                return Err(RegressionError::RaggedColumns {
                    name: name.clone(),
                    len: col.len(),
                    expected: y.len(),
                });
            }
            if col.iter().any(|v| !v.is_finite()) {
                return Err(RegressionError::NonFinite(name.clone()));
            }
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(RegressionError::NonFinite("y".into()));
        }
        Ok(DesignMatrix { names, columns, y })
    }

    /// Predictor columns as given plus a trailing intercept column of ones.
    pub fn with_intercept(
        names: Vec<String>,
        mut columns: Vec<Vec<f64>>,
        y: Vec<f64>,
    ) -> Result<Self, RegressionError> {
        let mut names = names;
        names.push(INTERCEPT.to_string());
        columns.push(vec![1.0; y.len()]);
        Self::new(names, columns, y)
    }

    pub fn rows(&self) -> usize {
        self.y.len()
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        self.columns.iter().map(|c| c[i]).collect()
    }

    fn intercept_index(&self) -> Option<usize> {
        self.names.iter().position(|n| n == INTERCEPT)
    }
}

/// One row per thread: the eight interaction counts, then the intercept; `y` is length.
pub fn build_design(stats: &[ThreadStats]) -> Result<DesignMatrix, RegressionError> {
    if stats.is_empty() {
        return Err(RegressionError::EmptyInput);
    }
    let mut columns = vec![Vec::with_capacity(stats.len()); PREDICTOR_NAMES.len()];
    for s in stats {
        for (col, v) in columns.iter_mut().zip(s.predictors()) {
            col.push(v);
        }
    }
    let y = stats.iter().map(|s| s.length as f64).collect();
    DesignMatrix::with_intercept(PREDICTOR_NAMES.iter().map(|s| s.to_string()).collect(), columns, y)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub coef: f64,
    pub std_error: f64,
    pub t_stat: f64,
    pub p_value: f64,
}

/// A column of the fit; `estimate` is `None` when the column was omitted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermFit {
    pub name: String,
    pub estimate: Option<Estimate>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OlsFit {
    /// Terms in design-matrix column order, omitted ones included.
    pub terms: Vec<TermFit>,
    pub n: usize,
    pub df_resid: usize,
    pub rss: f64,
    pub r2: f64,
    pub adj_r2: f64,
    pub residuals: Vec<f64>,
}

impl OlsFit {
    pub fn term(&self, name: &str) -> Option<&TermFit> {
        self.terms.iter().find(|t| t.name == name)
    }

    pub fn estimate(&self, name: &str) -> Option<&Estimate> {
        self.term(name).and_then(|t| t.estimate.as_ref())
    }

    pub fn omitted(&self) -> Vec<&str> {
        self.terms
            .iter()
            .filter(|t| t.estimate.is_none())
            .map(|t| t.name.as_str())
            .collect()
    }

    pub fn retained(&self) -> impl Iterator<Item = (&str, &Estimate)> {
        self.terms
            .iter()
            .filter_map(|t| t.estimate.as_ref().map(|e| (t.name.as_str(), e)))
    }

    pub fn k_retained(&self) -> usize {
        self.n - self.df_resid
    }
}

/// Least squares via Householder QR that drops collinear columns as it goes.
///
/// The intercept is decomposed first, then the remaining columns in order; a
/// column whose norm orthogonal to the already-kept columns is at most
/// [`RANK_TOL`] times its own norm is omitted.
#[allow(clippy::needless_range_loop)]
pub fn fit_ols(d: &DesignMatrix) -> Result<OlsFit, RegressionError> {
    let n = d.rows();
    if n == 0 {
        return Err(RegressionError::EmptyInput);
    }
    let mut order: Vec<usize> = Vec::with_capacity(d.columns.len());
    let intercept = d.intercept_index();
    order.extend(intercept);
    order.extend((0..d.columns.len()).filter(|&j| Some(j) != intercept));

    let mut work: Vec<Vec<f64>> = d.columns.clone();
    let mut qty = d.y.clone();
    let mut kept: Vec<usize> = Vec::new();

    for (step, &j) in order.iter().enumerate() {
        let rank = kept.len();
        if rank == n {
            break;
        }
        let orig_norm = norm(&d.columns[j]);
        let sub_norm = norm(&work[j][rank..]);
        if orig_norm == 0.0 || sub_norm <= RANK_TOL * orig_norm {
            continue;
        }
        // Householder vector v such that (I - 2vvᵀ/vᵀv) maps work[j][rank..] to -sign·‖·‖e1.
        let alpha = if work[j][rank] >= 0.0 { -sub_norm } else { sub_norm };
        let mut v: Vec<f64> = work[j][rank..].to_vec();
        v[0] -= alpha;
        let vtv = dot(&v, &v);
        if vtv > 0.0 {
            for &other in &order[step..] {
                reflect(&mut work[other][rank..], &v, vtv);
            }
            reflect(&mut qty[rank..], &v, vtv);
        }
        kept.push(j);
    }

    let k = kept.len();
    if k == 0 {
        return Err(RegressionError::AllColumnsOmitted);
    }
    if n <= k {
        return Err(RegressionError::InsufficientRows { rows: n, columns: k });
    }

    // R[r][c] = work[kept[c]][r] for r <= c
    let r_at = |r: usize, c: usize| work[kept[c]][r];
    let mut beta = vec![0.0; k];
    for r in (0..k).rev() {
        let mut acc = qty[r];
        for c in r + 1..k {
            acc -= r_at(r, c) * beta[c];
        }
        beta[r] = acc / r_at(r, r);
    }

    // R⁻¹ by back substitution, column by column; (XᵀX)⁻¹ = R⁻¹R⁻ᵀ.
    let mut rinv = vec![vec![0.0; k]; k];
    for c in 0..k {
        rinv[c][c] = 1.0 / r_at(c, c);
        for r in (0..c).rev() {
            let mut acc = 0.0;
            for m in r + 1..=c {
                acc += r_at(r, m) * rinv[m][c];
            }
            rinv[r][c] = -acc / r_at(r, r);
        }
    }
    let xtx_inv_diag: Vec<f64> = (0..k)
        .map(|r| (r..k).map(|c| rinv[r][c] * rinv[r][c]).sum())
        .collect();

    let residuals: Vec<f64> = (0..n)
        .map(|i| {
            let fitted: f64 = kept
                .iter()
                .zip(&beta)
                .map(|(&j, b)| d.columns[j][i] * b)
                .sum();
            d.y[i] - fitted
        })
        .collect();
    let rss = dot(&residuals, &residuals);
    let df_resid = n - k;
    let sigma2 = rss / df_resid as f64;

    let tss = if intercept.is_some_and(|j| kept.contains(&j)) {
        let mean = d.y.iter().sum::<f64>() / n as f64;
        d.y.iter().map(|v| (v - mean).powi(2)).sum::<f64>()
    } else {
        dot(&d.y, &d.y)
    };
    let r2 = if tss > 0.0 {
        1.0 - rss / tss
    } else if rss == 0.0 {
        1.0
    } else {
        0.0
    };
    let adj_r2 = 1.0 - (1.0 - r2) * (n as f64 - 1.0) / df_resid as f64;

    let mut terms: Vec<TermFit> = d
        .names
        .iter()
        .map(|name| TermFit {
            name: name.clone(),
            estimate: None,
        })
        .collect();
    for (slot, &j) in kept.iter().enumerate() {
        let coef = beta[slot];
        let std_error = (sigma2 * xtx_inv_diag[slot]).sqrt();
        let t_stat = coef / std_error;
        let p_value = if t_stat.is_nan() {
            1.0
        } else {
            student_t_p(t_stat, df_resid as u64)?
        };
        terms[j].estimate = Some(Estimate {
            coef,
            std_error,
            t_stat,
            p_value,
        });
    }

    Ok(OlsFit {
        terms,
        n,
        df_resid,
        rss,
        r2,
        adj_r2,
        residuals,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    // scaled to avoid overflow on large counts
    let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    scale * a.iter().map(|v| (v / scale).powi(2)).sum::<f64>().sqrt()
}

fn reflect(x: &mut [f64], v: &[f64], vtv: f64) {
    let s = 2.0 * dot(v, x) / vtv;
    for (xi, vi) in x.iter_mut().zip(v) {
        *xi -= s * vi;
    }
}
