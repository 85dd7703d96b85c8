//! Search for argument tuples whose value has `p` distinct rational eigenvalues.
//!
//! Attempt `i` is a pure function of `(f, p, seed, i)`: the first attempts walk
//! a fixed palette of structured matrices, later ones draw seeded random
//! matrices. The parallel scan keeps the smallest successful index, so the
//! outcome does not depend on scheduling or thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::degree_gate;
use super::eigen::rational_spectrum;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ncpoly::NcPolynomial;
use crate::random;
use crate::scalar::Rational;

/// `evaluate(f, args) = value` with `value` diagonalizable over the rationals
/// with distinct eigenvalues `spectrum`.
#[derive(Clone, Debug, Serialize)]
pub struct DiagonalWitness {
    #[serde(serialize_with = "as_text")]
    pub f: NcPolynomial,
    pub p: usize,
    pub args: Vec<Matrix>,
    pub value: Matrix,
    pub spectrum: Vec<Rational>,
    /// Index of the successful attempt.
    pub attempt: u64,
}

fn as_text<S: Serializer>(f: &NcPolynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(f)
}

/// Cap on the number of structured tuples tried before random sampling.
const STRUCTURED_CAP: u64 = 4096;

fn palette(p: usize) -> Vec<Matrix> {
    let ints = |v: Vec<i64>| v.into_iter().map(Rational::from_integer).collect::<Vec<_>>();
    let eye = Matrix::identity(p);
    let mut shift = Matrix::zeros(p, p);
    let mut weighted = Matrix::zeros(p, p);
    for i in 0..p - 1 {
        shift.set(i, i + 1, Rational::one());
        // weights i(i+1)/2 make [shift, weighted] = diag(1, 2, .., p-1, -p(p-1)/2)
        weighted.set(i + 1, i, Rational::from_integer(((i + 1) * (i + 2) / 2) as i64));
    }
    // companion matrix of (x - 1)(x - 2)..(x - p)
    let mut poly = vec![Rational::one()];
    for r in 1..=p as i64 {
        let mut next = vec![Rational::zero(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * Rational::from_integer(r);
        }
        poly = next;
    }
    let mut companion = Matrix::zeros(p, p);
    for (i, c) in poly.iter().take(p).enumerate() {
        if i + 1 < p {
            companion.set(i + 1, i, Rational::one());
        }
        companion.set(i, p - 1, -c);
    }
    vec![
        Matrix::diagonal(&ints((1..=p as i64).collect())),
        shift.clone(),
        weighted.clone(),
        eye.add(&shift).expect("square"),
        eye.add(&weighted).expect("square"),
        shift.transpose(),
        companion,
        eye,
        Matrix::unit(p, p, 0, 0),
    ]
}

fn structured_count(vars: usize, palette_len: usize) -> u64 {
    (0..vars)
        .try_fold(1u64, |acc, _| acc.checked_mul(palette_len as u64))
        .map_or(STRUCTURED_CAP, |c| c.min(STRUCTURED_CAP))
}

/// Tuple `index` in lexicographic order, the first variable varying slowest.
fn structured(palette: &[Matrix], vars: usize, mut index: u64) -> Vec<Matrix> {
    let base = palette.len() as u64;
    let mut picks = vec![0usize; vars];
    for slot in picks.iter_mut().rev() {
        *slot = (index % base) as usize;
        index /= base;
    }
    picks.into_iter().map(|k| palette[k].clone()).collect()
}

/// Random tuple; the entry bound grows logarithmically with the offset.
fn sampled(p: usize, vars: usize, seed: u64, index: u64, offset: u64) -> Vec<Matrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let bound = 1 + (64 - (1 + offset / 16).leading_zeros()) as i64;
    (0..vars)
        .map(|_| {
            let mut m = random::matrix(&mut rng, p, p, bound);
            let shape = rng.gen_range(0..4);
            for i in 0..p {
                for j in 0..p {
                    let drop = match shape {
                        1 => i > j,
                        2 => i < j,
                        3 => i != j,
                        _ => false,
                    };
                    if drop {
                        m.set(i, j, Rational::zero());
                    }
                }
            }
            m
        })
        .collect()
}

/// Tries up to `budget` argument tuples of size `p`. `Ok(None)` means the
/// budget ran out, which is a legitimate outcome.
pub fn search_diagonal_witness(f: &NcPolynomial, p: usize, budget: u64, seed: u64) -> Result<Option<DiagonalWitness>> {
    if budget == 0 {
        return Err(Error::Precondition("search budget must be positive".into()));
    }
    if p < 1 {
        return Err(Error::Precondition("matrix size p must be positive".into()));
    }
    if !degree_gate(f, p)? {
        return Err(Error::Hypothesis(format!(
            "degree {} is not below 2p = {}",
            f.degree()?,
            2 * p
        )));
    }
    let vars = f.max_variable() as usize;
    let palette = palette(p);
    let structured_len = structured_count(vars, palette.len());
    let found = (0..budget).into_par_iter().find_map_first(|index| {
        let args = if index < structured_len {
            structured(&palette, vars, index)
        } else {
            sampled(p, vars, seed, index, index - structured_len)
        };
        let value = f.evaluate(&args).ok()?;
        let spectrum = rational_spectrum(&value)?;
        Some(DiagonalWitness {
            f: f.clone(),
            p,
            args,
            value,
            spectrum,
            attempt: index,
        })
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x)).collect()
    }

    #[test]
    fn identity_polynomial_hits_the_diagonal_first() {
        let f: NcPolynomial = "X1".parse().unwrap();
        let w = search_diagonal_witness(&f, 3, 10, 0).unwrap().unwrap();
        assert_eq!(w.attempt, 0);
        assert_eq!(w.args, vec![Matrix::diagonal(&ints(&[1, 2, 3]))]);
        assert_eq!(w.spectrum, ints(&[1, 2, 3]));
    }

    #[test]
    fn commutator_hits_elementary_pair() {
        let f: NcPolynomial = "X1*X2 - X2*X1".parse().unwrap();
        let w = search_diagonal_witness(&f, 2, 100, 0).unwrap().unwrap();
        assert_eq!(w.args, vec![Matrix::unit(2, 2, 0, 1), Matrix::unit(2, 2, 1, 0)]);
        assert_eq!(w.value, Matrix::diagonal(&ints(&[1, -1])));
        assert_eq!(w.spectrum, ints(&[1, -1]));
    }

    #[test]
    fn weighted_shift_commutator_has_distinct_diagonal() {
        let pal = palette(5);
        let value = pal[1].mul(&pal[2]).unwrap().sub(&pal[2].mul(&pal[1]).unwrap()).unwrap();
        assert_eq!(value, Matrix::diagonal(&ints(&[1, 2, 3, 4, -10])));
        let c = &pal[6];
        assert_eq!(rational_spectrum(c), Some(ints(&[1, 2, 3, 4, 5])));
    }

    #[test]
    fn witnesses_evaluate_correctly() {
        for (text, p) in [("X1*X1*X2 - X2*X1*X1", 3), ("X1*X2 - X2*X1", 5), ("X1*X2*X3 + X2", 4)] {
            let f: NcPolynomial = text.parse().unwrap();
            let w = search_diagonal_witness(&f, p, 2000, 11).unwrap().expect(text);
            assert_eq!(f.evaluate(&w.args).unwrap(), w.value);
            assert_eq!(rational_spectrum(&w.value), Some(w.spectrum.clone()));
        }
    }

    #[test]
    fn tiny_budget_can_be_not_found() {
        // attempt 0 substitutes the same diagonal for both variables
        let f: NcPolynomial = "X1*X2 - X2*X1".parse().unwrap();
        assert!(search_diagonal_witness(&f, 2, 1, 5).unwrap().is_none());
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let f: NcPolynomial = "X1*X2*X1 - X2".parse().unwrap();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| {
                    search_diagonal_witness(&f, 3, 5000, 42)
                        .unwrap()
                        .map(|w| (w.attempt, w.args))
                })
        };
        let one = run(1);
        assert!(one.is_some());
        assert_eq!(one, run(4));
    }

    #[test]
    fn rejects_bad_parameters() {
        let f: NcPolynomial = "X1".parse().unwrap();
        assert!(search_diagonal_witness(&f, 2, 0, 0).is_err());
        let g: NcPolynomial = "X1*X1*X1*X1".parse().unwrap();
        assert!(matches!(
            search_diagonal_witness(&g, 2, 10, 0),
            Err(Error::Hypothesis(_))
        ));
    }
}
