//! Seeded random instances for tests, benchmarks and the CLI.
//!
//! Entries are small rationals `a / b` with `|a| <= bound`, `1 <= b <= bound`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::constructions::ModelSpectrum;
use crate::matrix::Matrix;
use crate::scalar::Rational;
use crate::waring::Coefficients;

pub fn rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    let num = rng.gen_range(-bound..=bound);
    let den = rng.gen_range(1..=bound.max(1));
    Rational::new(num, den).expect("positive denominator")
}

pub fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let r = rational(rng, bound.max(1));
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Matrix {
    let data = (0..rows * cols).map(|_| rational(rng, bound)).collect();
    Matrix::new(rows, cols, data).expect("positive dimensions")
}

/// Integer-entried matrix with entries in `[-bound, bound]`.
pub fn integer_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Matrix {
    let data = (0..rows * cols)
        .map(|_| Rational::from_integer(rng.gen_range(-bound..=bound)))
        .collect();
    Matrix::new(rows, cols, data).expect("positive dimensions")
}

/// Rejection-samples until the rank is full.
pub fn invertible<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Matrix {
    loop {
        let m = matrix(rng, n, n, bound);
        if m.rank() == n {
            return m;
        }
    }
}

/// Random matrix with its last diagonal entry adjusted to make the trace zero.
pub fn trace_zero<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Matrix {
    let mut t = matrix(rng, n, n, bound);
    let tr = t.trace().expect("square");
    let last = t.get(n - 1, n - 1) - &tr;
    t.set(n - 1, n - 1, last);
    t
}

/// Random nonscalar square matrix.
pub fn nonscalar<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Matrix {
    assert!(n >= 2, "no nonscalar 1x1 matrices");
    loop {
        let m = matrix(rng, n, n, bound);
        if !m.is_scalar() {
            return m;
        }
    }
}

/// `count` distinct nonzero rationals.
pub fn distinct_nonzero<R: Rng + ?Sized>(rng: &mut R, count: usize, bound: i64) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(count);
    let mut bound = bound.max(1);
    let mut misses = 0;
    while out.len() < count {
        let r = nonzero_rational(rng, bound);
        if out.contains(&r) {
            misses += 1;
            if misses > 8 {
                bound += 1;
                misses = 0;
            }
        } else {
            out.push(r);
        }
    }
    out
}

/// Model spectrum with `q` uniform in `[ceil(n/2), n]`.
pub fn spectrum<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> ModelSpectrum {
    let q = rng.gen_range(n.div_ceil(2)..=n);
    ModelSpectrum::new(n, q, distinct_nonzero(rng, q, bound)).expect("valid by construction")
}

pub fn coefficients<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Coefficients {
    loop {
        let a1 = nonzero_rational(rng, bound);
        let a2 = nonzero_rational(rng, bound);
        let a3 = -(&a1 + &a2);
        if let Ok(c) = Coefficients::new(a1, a2, a3) {
            return c;
        }
    }
}

/// `mus` of length `k` summing to `total`.
pub fn targets_with_sum<R: Rng + ?Sized>(rng: &mut R, k: usize, total: &Rational, bound: i64) -> Vec<Rational> {
    let mut mus: Vec<Rational> = (0..k - 1).map(|_| rational(rng, bound)).collect();
    let partial: Rational = mus.iter().sum();
    mus.push(total - partial);
    mus.shuffle(rng);
    mus
}
