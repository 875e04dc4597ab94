//! Shared fixtures and reference implementations for the integration tests.
#![allow(dead_code)]

use counterthread::ConflatedClass;
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ContinuousCDF, StudentsT};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Normal-equations OLS with statrs p-values.
pub struct OracleFit {
    pub coef: Vec<f64>,
    pub se: Vec<f64>,
    pub t: Vec<f64>,
    pub p: Vec<f64>,
    pub r2: f64,
    pub adj_r2: f64,
}

/// `columns` must include the intercept if one is wanted.
pub fn ols_oracle(columns: &[Vec<f64>], y: &[f64], has_intercept: bool) -> OracleFit {
    let n = y.len();
    let k = columns.len();
    let x = DMatrix::from_fn(n, k, |i, j| columns[j][i]);
    let yv = DVector::from_column_slice(y);
    let xtx_inv = (x.transpose() * &x).try_inverse().expect("full-rank design");
    let beta = &xtx_inv * x.transpose() * &yv;
    let resid = &yv - &x * &beta;
    let rss = resid.dot(&resid);
    let df = (n - k) as f64;
    let sigma2 = rss / df;
    let dist = StudentsT::new(0.0, 1.0, df).unwrap();
    let coef: Vec<f64> = beta.iter().copied().collect();
    let se: Vec<f64> = (0..k).map(|j| (sigma2 * xtx_inv[(j, j)]).sqrt()).collect();
    let t: Vec<f64> = coef.iter().zip(&se).map(|(c, s)| c / s).collect();
    let p: Vec<f64> = t.iter().map(|t| 2.0 * dist.sf(t.abs())).collect();
    let mean = if has_intercept { y.iter().sum::<f64>() / n as f64 } else { 0.0 };
    let tss: f64 = y.iter().map(|v| (v - mean).powi(2)).sum();
    let r2 = 1.0 - rss / tss;
    let dfm = if has_intercept { (n - 1) as f64 } else { n as f64 };
    let adj_r2 = 1.0 - (1.0 - r2) * dfm / df;
    OracleFit { coef, se, t, p, r2, adj_r2 }
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300) || a == b
}

/// Maximizes `Σα − ½ αᵀQα` over `0 ≤ α ≤ C` with `Q_ij = y_i y_j (x_i·x_j + 1)`
/// by accelerated projected gradient on dense matrices. Returns the objective.
pub fn svm_dual_oracle(x: &[Vec<f64>], y: &[f64], c: f64) -> (f64, Vec<f64>) {
    let n = y.len();
    let q = DMatrix::from_fn(n, n, |i, j| {
        let dot: f64 = x[i].iter().zip(&x[j]).map(|(a, b)| a * b).sum();
        y[i] * y[j] * (dot + 1.0)
    });
    let lipschitz = q.clone().symmetric_eigenvalues().max().max(1e-12);
    let step = 1.0 / lipschitz;
    let ones = DVector::from_element(n, 1.0);
    let project = |v: DVector<f64>| v.map(|a| a.clamp(0.0, c));
    let objective = |a: &DVector<f64>| a.sum() - 0.5 * (a.transpose() * &q * a)[(0, 0)];
    let mut a = DVector::zeros(n);
    let mut z = a.clone();
    let mut t = 1.0f64;
    for _ in 0..50_000 {
        let grad = &ones - &q * &z;
        let next = project(&z + grad * step);
        let t_next = (1.0 + (1.0 + 4.0 * t * t).sqrt()) / 2.0;
        z = &next + (&next - &a) * ((t - 1.0) / t_next);
        // restart when momentum stops helping
        if objective(&next) < objective(&a) {
            z = next.clone();
            t = 1.0;
        } else {
            t = t_next;
        }
        a = next;
    }
    (objective(&a), a.iter().copied().collect())
}

/// 20 overlapping 2-D points, labels ±1, both classes present.
pub fn random_binary_problem(seed: u64, n: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let mut r = rng(seed);
    let normal = rand_distr::Normal::new(0.0, 1.0).unwrap();
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for i in 0..n {
        let y = if i % 2 == 0 { 1.0 } else { -1.0 };
        let shift = 0.8 * y;
        xs.push(vec![
            r.sample(normal) + shift,
            r.sample(normal) - 0.5 * shift,
        ]);
        ys.push(y);
    }
    (xs, ys)
}

const SYLLABLES: [&str; 16] = [
    "ka", "lo", "mi", "ren", "tas", "vo", "pel", "dun", "sa", "gri", "mof", "tel", "bra", "nik", "zor", "ul",
];

fn word(r: &mut ChaCha8Rng, syllables: usize) -> String {
    (0..syllables).map(|_| SYLLABLES[r.gen_range(0..SYLLABLES.len())]).collect()
}

fn word_pool(r: &mut ChaCha8Rng, size: usize, syllables: usize, taken: &mut std::collections::HashSet<String>) -> Vec<String> {
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        let w = word(r, syllables);
        if taken.insert(w.clone()) {
            out.push(w);
        }
    }
    out
}

pub struct PlantedPost {
    pub post_id: String,
    pub text: String,
    pub label: ConflatedClass,
}

/// Posts whose tokens mix a shared pool with a class-specific pool, plus a
/// CoNLL-U rendering where each token depends on its predecessor.
pub fn planted_corpus(n: usize, seed: u64) -> (Vec<PlantedPost>, String) {
    let mut r = rng(seed);
    let mut taken = std::collections::HashSet::new();
    let shared = word_pool(&mut r, 400, 3, &mut taken);
    let specific: Vec<Vec<String>> = (0..4).map(|_| word_pool(&mut r, 40, 3, &mut taken)).collect();
    const RELATIONS: [&str; 7] = ["nsubj", "obj", "amod", "advmod", "det", "nmod", "conj"];
    let mut posts = Vec::with_capacity(n);
    let mut conllu = String::new();
    for i in 0..n {
        let class = match r.gen_range(0..100) {
            0..=39 => 0,
            40..=54 => 1,
            55..=69 => 2,
            _ => 3,
        };
        let len = r.gen_range(8..=16);
        let tokens: Vec<&str> = (0..len)
            .map(|_| {
                if r.gen_bool(0.35) {
                    specific[class][r.gen_range(0..40)].as_str()
                } else {
                    shared[r.gen_range(0..shared.len())].as_str()
                }
            })
            .collect();
        let post_id = format!("p{i:05}");
        let text = tokens.join(" ");
        conllu.push_str(&format!("# post_id = {post_id}\n# text = {text}\n"));
        for (j, tok) in tokens.iter().enumerate() {
            let head = if j == 0 { 0 } else { j };
            let rel = if j == 0 { "root" } else { RELATIONS[r.gen_range(0..RELATIONS.len())] };
            conllu.push_str(&format!("{}\t{tok}\t{tok}\tX\t_\t_\t{head}\t{rel}\t_\t_\n", j + 1));
        }
        conllu.push('\n');
        posts.push(PlantedPost {
            post_id,
            text,
            label: ConflatedClass::from_index(class).unwrap(),
        });
    }
    (posts, conllu)
}

/// Published confusion matrices (rows gold, columns predicted).
pub const SEXIST_MATRIX: [[usize; 4]; 4] = [[206, 1, 0, 21], [4, 35, 0, 19], [2, 0, 4, 2], [26, 10, 0, 129]];
pub const HOMOPHOBIC_MATRIX: [[usize; 4]; 4] = [[119, 3, 0, 85], [4, 40, 0, 59], [6, 3, 0, 11], [50, 24, 1, 559]];
pub const RACIST_MATRIX: [[usize; 4]; 4] = [[444, 4, 0, 63], [4, 30, 1, 27], [4, 2, 2, 12], [82, 12, 0, 304]];
