//! Seeded inputs shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strop_core::rational::q_frac;
use strop_core::torus::random::random_cycle;
use strop_core::torus::{perturb_translate, BiChain};
use strop_core::IntMatrix;

/// A sparse matrix shaped like a boundary map: `per_column` entries of
/// `±1` in each column.
pub fn random_boundary_like(rows: usize, cols: usize, per_column: usize, seed: u64) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = IntMatrix::zeros(rows, cols);
    for j in 0..cols {
        for _ in 0..per_column {
            let i = rng.gen_range(0..rows);
            m[(i, j)] = if rng.gen_bool(0.5) { 1 } else { -1 };
        }
    }
    m
}

/// A transverse product of random cycles of dimensions `p` and `q` on `Tⁿ`.
pub fn transverse_pair(n: usize, p: usize, q: usize, seed: u64) -> BiChain {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = random_cycle(&mut rng, n, p);
    let v = random_cycle(&mut rng, n, q);
    let b = BiChain::product(&u, &v).expect("same torus");
    perturb_translate(&b, seed, &q_frac(1, 50)).expect("generic shift exists")
}
