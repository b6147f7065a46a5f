//! Deterministic instance generators shared by the test and bench suites.
//! Not part of the public API.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::Instance;
use crate::rational::Rat;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random instance with numerators in `0..=max_numer` and denominators in
/// `1..=max_denom`.
pub fn random_instance(
    rng: &mut ChaCha8Rng,
    n: usize,
    m: usize,
    max_numer: i64,
    max_denom: i64,
) -> Instance {
    let values = (0..n)
        .map(|_| {
            (0..m)
                .map(|_| Rat::new(rng.gen_range(0..=max_numer), rng.gen_range(1..=max_denom)))
                .collect()
        })
        .collect();
    Instance::new(values).unwrap()
}

/// Random valuation row.
pub fn random_row(rng: &mut ChaCha8Rng, m: usize, max_numer: i64, max_denom: i64) -> Vec<Rat> {
    (0..m)
        .map(|_| Rat::new(rng.gen_range(0..=max_numer), rng.gen_range(1..=max_denom)))
        .collect()
}

/// All permutations of a row, deduplicated (value multisets may repeat).
pub fn distinct_permutations(row: &[Rat]) -> Vec<Vec<Rat>> {
    let mut out: Vec<Vec<Rat>> = Vec::new();
    permute(row.to_vec(), 0, &mut out);
    out.sort();
    out.dedup();
    out
}

fn permute(mut row: Vec<Rat>, k: usize, out: &mut Vec<Vec<Rat>>) {
    if k + 1 >= row.len() {
        out.push(row);
        return;
    }
    for i in k..row.len() {
        row.swap(k, i);
        permute(row.clone(), k + 1, out);
        row.swap(k, i);
    }
}
