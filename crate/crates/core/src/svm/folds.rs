use super::SvmError;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 42;

/// Splits indices `0..labels.len()` into `k` folds that preserve class
/// proportions. Each class's indices are shuffled with the seeded generator,
/// the shuffled lists are concatenated in class order, and the i-th index of
/// that sequence goes to fold `i mod k`. Per-class counts across folds
/// therefore differ by at most one. Indices inside each fold are sorted.
pub fn kfold_stratified<L: Ord + Copy>(labels: &[L], k: usize, seed: u64) -> Result<Vec<Vec<usize>>, SvmError> {
    if k == 0 {
        return Err(SvmError::InvalidParameter("fold count must be positive"));
    }
    if labels.len() < k {
        return Err(SvmError::TooFewSamples { n: labels.len(), k });
    }
    let mut by_class: std::collections::BTreeMap<L, Vec<usize>> = Default::default();
    for (i, &l) in labels.iter().enumerate() {
        by_class.entry(l).or_default().push(i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds = vec![Vec::new(); k];
    let mut pos = 0;
    for idx in by_class.values_mut() {
        idx.shuffle(&mut rng);
        for &i in idx.iter() {
            folds[pos % k].push(i);
            pos += 1;
        }
    }
    for f in &mut folds {
        f.sort_unstable();
    }
    Ok(folds)
}
