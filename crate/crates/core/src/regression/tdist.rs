//! Student-t tail probabilities through the regularized incomplete beta function.

use super::RegressionError;
use std::f64::consts::PI;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const CF_EPS: f64 = 1e-15;
const CF_TINY: f64 = 1e-300;
const CF_MAX_ITER: usize = 200_000;
/// Above this many degrees of freedom the tail comes from a large-df expansion
/// around the normal; the beta continued fraction loses digits near its
/// switch-over point there.
const LARGE_DF: u64 = 1_000_000;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    if x >= 20.0 {
        return (x - 0.5) * x.ln() - x + LN_SQRT_2PI + stirling_correction(x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (x + 0.5) * t.ln() - t + acc.ln()
}

/// `ln Γ(x) - [(x - ½) ln x - x + ½ ln 2π]` for large `x`.
fn stirling_correction(x: f64) -> f64 {
    let x2 = x * x;
    let inv = 1.0 / x;
    let inv2 = 1.0 / x2;
    inv * (1.0 / 12.0
        - inv2
            * (1.0 / 360.0
                - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 * (1.0 / 1188.0)))))
}

/// `ln B(a, b)`, arranged to avoid cancellation when one argument is large.
pub fn ln_beta(a: f64, b: f64) -> f64 {
    let (small, large) = if a < b { (a, b) } else { (b, a) };
    if large < 20.0 {
        return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
    }
    let sum = small + large;
    // ln Γ(large) - ln Γ(large + small)
    let diff = -(large - 0.5) * (small / large).ln_1p() - small * sum.ln()
        + small
        + stirling_correction(large)
        - stirling_correction(sum);
    if small >= 20.0 {
        // both large: expand ln Γ(small) as well
        let lg_small = (small - 0.5) * small.ln() - small + LN_SQRT_2PI + stirling_correction(small);
        lg_small + diff
    } else {
        ln_gamma(small) + diff
    }
}

/// Regularized incomplete beta `I_x(a, b)` for `0 <= x <= 1`.
pub fn incomplete_beta(x: f64, a: f64, b: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    incomplete_beta_parts(x, 1.0 - x, x.ln(), (-x).ln_1p(), a, b)
}

/// `I_x(a, b)` with `x`, `1 - x` and both logarithms supplied by the caller,
/// which matters when `a` is large and `x` is close to 1.
fn incomplete_beta_parts(x: f64, y: f64, ln_x: f64, ln_y: f64, a: f64, b: f64) -> f64 {
    let ln_front = a * ln_x + b * ln_y - ln_beta(a, b);
    if x < (a + 1.0) / (a + b + 2.0) {
        (ln_front.exp() * beta_cf(x, a, b) / a).clamp(0.0, 1.0)
    } else {
        (1.0 - ln_front.exp() * beta_cf(y, b, a) / b).clamp(0.0, 1.0)
    }
}

/// Continued fraction for the incomplete beta (modified Lentz).
fn beta_cf(x: f64, a: f64, b: f64) -> f64 {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < CF_TINY {
        d = CF_TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=CF_MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < CF_TINY {
            d = CF_TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < CF_TINY {
            c = CF_TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < CF_TINY {
            d = CF_TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < CF_TINY {
            c = CF_TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < CF_EPS {
            break;
        }
    }
    h
}

/// Two-sided tail probability `P(|T| >= |t|)` for Student's t with `df` degrees of freedom.
///
/// An infinite `t` gives 0; NaN propagates.
pub fn student_t_p(t: f64, df: u64) -> Result<f64, RegressionError> {
    if df == 0 {
        return Err(RegressionError::InvalidDf);
    }
    if t.is_nan() {
        return Ok(f64::NAN);
    }
    if t.is_infinite() {
        return Ok(0.0);
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    let nu = df as f64;
    if df > LARGE_DF {
        return Ok(large_df_two_sided(t.abs(), nu));
    }
    let t2 = t * t;
    // x = nu / (nu + t²), 1 - x = t² / (nu + t²)
    let (x, y, ln_x, ln_y) = if t2 < nu {
        let r = t2 / nu;
        let ln_1p = r.ln_1p();
        (1.0 / (1.0 + r), r / (1.0 + r), -ln_1p, r.ln() - ln_1p)
    } else {
        let r = nu / t2;
        let ln_1p = r.ln_1p();
        (r / (1.0 + r), 1.0 / (1.0 + r), r.ln() - ln_1p, -ln_1p)
    };
    Ok(incomplete_beta_parts(x, y, ln_x, ln_y, nu / 2.0, 0.5))
}

/// `P(|T| >= t)` from the expansion
/// `P(T > t) = Q(t) + φ(t) [ (t³ + t) / 4ν + (3t⁷ - 7t⁵ - 5t³ - 3t) / 96ν² + O(ν⁻³) ]`.
fn large_df_two_sided(t: f64, nu: f64) -> f64 {
    let t2 = t * t;
    let density = (-0.5 * t2 - LN_SQRT_2PI).exp();
    let g1 = (t2 * t + t) / 4.0;
    let g2 = t * (((3.0 * t2 - 7.0) * t2 - 5.0) * t2 - 3.0) / 96.0;
    let upper = normal_upper_tail(t) + density * (g1 / nu + g2 / (nu * nu));
    (2.0 * upper).clamp(0.0, 1.0)
}

/// `P(Z > z)` for `z >= 0`, as `Γ(½, z²/2) / Γ(½)`.
fn normal_upper_tail(z: f64) -> f64 {
    0.5 * upper_gamma_q(0.5, 0.5 * z * z)
}

/// Regularized upper incomplete gamma `Q(a, x)`.
fn upper_gamma_q(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    let ln_front = a * x.ln() - x - ln_gamma(a);
    if x < a + 1.0 {
        // series for P(a, x)
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut ap = a;
        for _ in 0..CF_MAX_ITER {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if term.abs() < sum.abs() * CF_EPS {
                break;
            }
        }
        1.0 - sum * ln_front.exp()
    } else {
        // continued fraction for Q(a, x), modified Lentz
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / CF_TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..CF_MAX_ITER {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < CF_TINY {
                d = CF_TINY;
            }
            c = b + an / c;
            if c.abs() < CF_TINY {
                c = CF_TINY;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < CF_EPS {
                break;
            }
        }
        ln_front.exp() * h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(student_t_p(0.0, 7).unwrap(), 1.0);
        let cauchy = 2.0 * (1.0 - (0.5 + 1f64.atan() / PI));
        assert!((student_t_p(1.0, 1).unwrap() - cauchy).abs() < 1e-14);
        // df = 2 has closed form p = 1 - t / sqrt(2 + t²)
        for &t in &[0.3, 1.0, 2.5, 10.0] {
            let exact = 1.0 - t / (2.0f64 + t * t).sqrt();
            assert!((student_t_p(t, 2).unwrap() - exact).abs() < 1e-13, "t={t}");
        }
    }

    #[test]
    fn invalid_df() {
        assert_eq!(student_t_p(1.0, 0), Err(RegressionError::InvalidDf));
    }

    #[test]
    fn ln_gamma_integers() {
        let mut fact = 1.0f64;
        for n in 1..30u32 {
            let lg = ln_gamma(n as f64);
            assert!((lg - fact.ln()).abs() < 1e-12 * fact.ln().abs().max(1.0), "n={n}");
            fact *= n as f64;
        }
        assert!((ln_gamma(0.5) - PI.sqrt().ln()).abs() < 1e-14);
    }

    #[test]
    fn huge_df_tends_to_normal() {
        // reference values from 40-digit arithmetic
        let p = student_t_p(1.96, 2_000_000_000).unwrap();
        assert!((p - 0.049_995_790_435_085_23).abs() < 1e-13, "{p}");
        let p = student_t_p(4.0, 100_000_000).unwrap();
        assert!((p - 6.334_252_916_852_821e-5).abs() < 1e-13, "{p}");
        let p = student_t_p(0.5, 10_000_000).unwrap();
        assert!((p - 0.617_075_088_454_015).abs() < 1e-13, "{p}");
    }

    #[test]
    fn symmetric_and_infinite() {
        assert_eq!(student_t_p(-2.0, 5).unwrap(), student_t_p(2.0, 5).unwrap());
        assert_eq!(student_t_p(f64::INFINITY, 5).unwrap(), 0.0);
    }
}
