//! Seeded workloads shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use waring_core::{random, Coefficients, Matrix, ModelSpectrum, Rational};

/// A trace-zero `n x n` matrix with a model spectrum and coefficients.
pub struct Instance {
    pub t: Matrix,
    pub spec: ModelSpectrum,
    pub coeffs: Coefficients,
}

pub fn instance(n: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Instance {
        spec: random::spectrum(&mut rng, n, 4),
        coeffs: random::coefficients(&mut rng, 4),
        t: random::trace_zero(&mut rng, n, 5),
    }
}

/// A nonscalar `k x k` matrix and targets summing to its trace.
pub fn prescribe_case(k: usize, seed: u64) -> (Matrix, Vec<Rational>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = random::nonscalar(&mut rng, k, 5);
    let mus = random::targets_with_sum(&mut rng, k, &b.trace().expect("square"), 5);
    (b, mus)
}
