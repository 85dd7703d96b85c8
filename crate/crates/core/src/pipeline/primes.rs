//! Prime selection with `n + 2 <= 2p <= 2n`.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeChoice {
    pub n: usize,
    pub p: usize,
}

/// Deterministic trial division.
pub fn is_prime(m: usize) -> bool {
    if m < 4 {
        return m >= 2;
    }
    if m.is_multiple_of(2) || m.is_multiple_of(3) {
        return false;
    }
    let mut d = 5;
    while d * d <= m {
        if m.is_multiple_of(d) || m.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Sieve of Eratosthenes: `sieve(limit)[m]` is true iff `m` is prime.
pub fn sieve(limit: usize) -> Vec<bool> {
    let mut is = vec![true; limit + 1];
    is[0] = false;
    if limit >= 1 {
        is[1] = false;
    }
    let mut i = 2;
    while i * i <= limit {
        if is[i] {
            for k in (i * i..=limit).step_by(i) {
                is[k] = false;
            }
        }
        i += 1;
    }
    is
}

/// The largest prime `p <= n` with `2p >= n + 2`. Such a prime exists for every
/// `n >= 2` by Bertrand's postulate; its absence is treated as a bug.
pub fn select_prime(n: usize) -> Result<PrimeChoice> {
    if n < 2 {
        return Err(Error::Hypothesis(format!("prime selection needs n >= 2, got {n}")));
    }
    let p = (2..=n).rev().find(|&m| is_prime(m)).expect("2 is prime");
    assert!(2 * p >= n + 2, "no prime in [n/2 + 1, n] for n = {n}");
    Ok(PrimeChoice { n, p })
}
