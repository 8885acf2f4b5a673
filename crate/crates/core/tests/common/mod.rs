#![allow(dead_code)]

use qcode_core::design::{cell_count, cell_pattern};
use qcode_core::golden;
use qcode_core::qc64::preconditions_met;
use qcode_core::{FrequencyVector, GeneratorSpec, Z4};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn design256() -> GeneratorSpec {
    golden::golden_examples()
        .unwrap()
        .design256
        .generator()
        .unwrap()
}

/// `n` uniformly random rows over Z4^p.
pub fn random_generator(rng: &mut impl Rng, n: usize, p: usize) -> GeneratorSpec {
    let rows = (0..n)
        .map(|_| (0..p).map(|_| Z4::new(rng.gen_range(0..4))).collect())
        .collect();
    GeneratorSpec::new(rows).unwrap()
}

/// Rejection-samples a `p = 3` generator with `n` drawn from `ns` whose
/// three parity sums are positive.
pub fn random_p3_valid(rng: &mut impl Rng, ns: &[usize]) -> GeneratorSpec {
    loop {
        let n = ns[rng.gen_range(0..ns.len())];
        let g = random_generator(rng, n, 3);
        if preconditions_met(&g.frequency_vector()) {
            return g;
        }
    }
}

/// Rows drawn from nonzero cells only.
pub fn random_nonzero_rows(rng: &mut impl Rng, n: usize, p: usize) -> FrequencyVector {
    let mut counts = vec![0u64; cell_count(p)];
    for _ in 0..n {
        counts[rng.gen_range(1..cell_count(p))] += 1;
    }
    FrequencyVector::new(p, counts).unwrap()
}

pub fn pattern(cell: usize, p: usize) -> Vec<Z4> {
    cell_pattern(cell, p)
}
