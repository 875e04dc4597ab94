use super::{OlsFit, RegressionError, INTERCEPT};
use std::fmt::Write;

/// Significance marker: `***` below 0.001, `**` below 0.01, `*` below 0.05.
pub fn stars(p: f64) -> &'static str {
    if p < 0.001 {
        "***"
    } else if p < 0.01 {
        "**"
    } else if p < 0.05 {
        "*"
    } else {
        ""
    }
}

fn coef_cell(coef: f64, p: f64) -> String {
    format!("{coef:.6}{}", stars(p))
}

fn check_same_terms(fits: &[(String, OlsFit)]) -> Result<Vec<String>, RegressionError> {
    let first = match fits.first() {
        Some((_, f)) => f.terms.iter().map(|t| t.name.clone()).collect::<Vec<_>>(),
        None => return Ok(Vec::new()),
    };
    for (_, f) in fits {
        if f.terms.len() != first.len() || f.terms.iter().zip(&first).any(|(t, n)| &t.name != n) {
            return Err(RegressionError::MismatchedPredictors);
        }
    }
    Ok(first)
}

/// Aligned plain-text table: a Coef./Std. Err. column pair per fit, one row per
/// term, the intercept as `cons`, then `Adj. R2`.
pub fn render_table(fits: &[(String, OlsFit)]) -> Result<String, RegressionError> {
    let names = check_same_terms(fits)?;
    // intercept last regardless of design order
    let mut order: Vec<usize> = (0..names.len()).filter(|&i| names[i] != INTERCEPT).collect();
    order.extend(names.iter().position(|n| n == INTERCEPT));

    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut header1 = vec![String::new()];
    let mut header2 = vec![String::new()];
    for (label, _) in fits {
        header1.push(label.clone());
        header1.push(String::new());
        header2.push("Coef.".into());
        header2.push("Std. Err.".into());
    }
    rows.push(header1);
    rows.push(header2);
    for &i in &order {
        let mut row = vec![names[i].clone()];
        for (_, fit) in fits {
            match &fit.terms[i].estimate {
                Some(e) => {
                    row.push(coef_cell(e.coef, e.p_value));
                    row.push(format!("{:.6}", e.std_error));
                }
                None => {
                    row.push("0 (omitted)".into());
                    row.push(String::new());
                }
            }
        }
        rows.push(row);
    }
    let mut adj = vec!["Adj. R2".to_string()];
    for (_, fit) in fits {
        adj.push(format!("{:.4}", fit.adj_r2));
        adj.push(String::new());
    }
    rows.push(adj);

    let ncol = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncol)
        .map(|c| rows.iter().map(|r| r.get(c).map_or(0, |s| s.chars().count())).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{cell:<w$}", w = widths[c]))
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out.push_str("* p < 0.05; ** p < 0.01; *** p < 0.001\n");
    Ok(out)
}

/// Tab-separated long format: one line per (fit, term) plus an `adj_r2` line per fit.
pub fn render_tsv(fits: &[(String, OlsFit)]) -> Result<String, RegressionError> {
    check_same_terms(fits)?;
    let mut out = String::from("model\tterm\tcoef\tstd_err\tt\tp\tstars\tomitted\n");
    for (label, fit) in fits {
        for term in &fit.terms {
            match &term.estimate {
                Some(e) => {
                    let _ = writeln!(
                        out,
                        "{label}\t{}\t{:.10e}\t{:.10e}\t{:.10e}\t{:.10e}\t{}\tfalse",
                        term.name,
                        e.coef,
                        e.std_error,
                        e.t_stat,
                        e.p_value,
                        stars(e.p_value)
                    );
                }
                None => {
                    let _ = writeln!(out, "{label}\t{}\t0\t\t\t\t\ttrue", term.name);
                }
            }
        }
        let _ = writeln!(out, "{label}\tadj_r2\t{:.10e}\t\t\t\t\tfalse", fit.adj_r2);
        let _ = writeln!(out, "{label}\tn\t{}\t\t\t\t\tfalse", fit.n);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regression::{fit_ols, DesignMatrix};

    #[test]
    fn star_thresholds() {
        assert_eq!(coef_cell(4.638163, 0.0003), "4.638163***");
        assert_eq!(coef_cell(-3.458554, 0.004), "-3.458554**");
        assert_eq!(coef_cell(0.18, 0.60), "0.180000");
        assert_eq!(stars(0.04), "*");
        assert_eq!(stars(0.009), "**");
        assert_eq!(stars(0.0009), "***");
        assert_eq!(stars(0.06), "");
        assert_eq!(stars(0.05), "");
        assert_eq!(stars(0.01), "*");
        assert_eq!(stars(0.001), "**");
    }

    fn fit(names: &[&str], cols: Vec<Vec<f64>>, y: Vec<f64>) -> OlsFit {
        let d = DesignMatrix::with_intercept(names.iter().map(|s| s.to_string()).collect(), cols, y).unwrap();
        fit_ols(&d).unwrap()
    }

    #[test]
    fn renders_omitted_and_cons_last() {
        let x = vec![1., 2., 4., 3., 7., 5.];
        let y = vec![3., 5.2, 8.9, 7.1, 15.2, 10.8];
        let f = fit(&["x", "dup"], vec![x.clone(), x], y);
        let text = render_table(&[("Sexist".into(), f)]).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].contains("Sexist"));
        assert!(lines[3].starts_with("dup") && lines[3].contains("0 (omitted)"));
        assert!(lines[4].starts_with("cons"));
        assert!(lines[5].starts_with("Adj. R2"));
    }

    #[test]
    fn mismatched_predictors() {
        let x = vec![1., 2., 4., 3., 7.];
        let y = vec![3., 5., 9., 7., 15.];
        let a = fit(&["x"], vec![x.clone()], y.clone());
        let b = fit(&["z"], vec![x], y);
        assert_eq!(
            render_table(&[("a".into(), a), ("b".into(), b)]),
            Err(RegressionError::MismatchedPredictors)
        );
    }
}
