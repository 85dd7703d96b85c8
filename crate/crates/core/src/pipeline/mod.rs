//! From a polynomial `f` to a three-term decomposition whose terms are values
//! of `f`: choose a prime `p`, find a value of `f` on `p x p` matrices with
//! distinct rational eigenvalues, embed it into `n x n` matrices and transport
//! the argument tuple along each term's similarity.

mod eigen;
mod primes;
mod search;

pub use eigen::{characteristic_polynomial, rational_spectrum};
pub use primes::{is_prime, select_prime, sieve, PrimeChoice};
pub use search::{search_diagonal_witness, DiagonalWitness};

use crate::constructions::{diagonalize_with_spectrum, ModelSpectrum};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ncpoly::NcPolynomial;
use crate::waring::{decompose, Coefficients, Decomposition};

/// True iff `deg f < 2p`. Errors for zero and constant polynomials.
pub fn degree_gate(f: &NcPolynomial, p: usize) -> Result<bool> {
    let m = f.degree()?;
    if m == 0 {
        return Err(Error::Hypothesis("constant polynomial has degree 0".into()));
    }
    Ok(m < 2 * p)
}

/// A decomposition of `T` together with, for each term `Ai`, arguments
/// `tuples[i]` with `f(tuples[i]) = Ai`.
#[derive(Clone, Debug)]
pub struct PolynomialDecomposition {
    pub prime: PrimeChoice,
    pub witness: DiagonalWitness,
    pub decomposition: Decomposition,
    pub tuples: [Vec<Matrix>; 3],
}

pub fn waring_for_polynomial(
    f: &NcPolynomial,
    n: usize,
    t: &Matrix,
    coeffs: &Coefficients,
    budget: u64,
    seed: u64,
) -> Result<PolynomialDecomposition> {
    if n < 2 {
        return Err(Error::Hypothesis(format!("n = {n}, need n >= 2")));
    }
    let m = f.degree()?;
    if m == 0 {
        return Err(Error::Hypothesis("constant polynomial has degree 0".into()));
    }
    if n + 1 < m {
        return Err(Error::Hypothesis(format!("n = {n} is below deg f - 1 = {}", m - 1)));
    }
    if t.shape() != (n, n) {
        return Err(Error::DimensionMismatch {
            op: "waring_for_polynomial",
            left_rows: n,
            left_cols: n,
            right_rows: t.rows(),
            right_cols: t.cols(),
        });
    }
    let tr = t.trace()?;
    if !tr.is_zero() {
        return Err(Error::NonzeroTrace(tr));
    }
    let prime = select_prime(n)?;
    let p = prime.p;
    if !degree_gate(f, p)? {
        return Err(Error::Hypothesis(format!("degree {m} is not below 2p = {}", 2 * p)));
    }
    // Embedding pads arguments with zeros, which a constant term would turn
    // into a nonzero scalar block.
    if p < n && !f.constant_term().is_zero() {
        return Err(Error::Hypothesis(format!(
            "nonzero constant term {} cannot be embedded from {p}x{p} into {n}x{n}",
            f.constant_term()
        )));
    }
    let witness = search_diagonal_witness(f, p, budget, seed)?.ok_or(Error::WitnessNotFound { budget, seed })?;

    let lambdas: Vec<_> = witness.spectrum.iter().filter(|l| !l.is_zero()).cloned().collect();
    let spec = ModelSpectrum::from_lambdas(n, lambdas)?;
    assert!(2 * spec.q() >= n && spec.q() <= n, "derived q outside [n/2, n]");

    let args: Vec<Matrix> = witness
        .args
        .iter()
        .map(|a| a.embed_top_left(n))
        .collect::<Result<_>>()?;
    let value = witness.value.embed_top_left(n)?;
    if f.evaluate(&args)? != value {
        return Err(Error::VerificationFailed(
            "embedded arguments do not evaluate to the embedded value".into(),
        ));
    }
    // value = P D P^-1
    let p_mat = diagonalize_with_spectrum(&value, &spec)?.into_matrix();
    let p_inv = p_mat.inverse()?;

    let decomposition = decompose(t, &spec, coeffs)?;
    let mut tuples = Vec::with_capacity(3);
    for (ai, wi) in decomposition.a.iter().zip(&decomposition.witnesses) {
        // Ai = Si D Si^-1 = C value C^-1 with C = Si P^-1
        let c = wi.matrix().mul(&p_inv)?;
        let c_inv = c.inverse()?;
        let tuple: Vec<Matrix> = args
            .iter()
            .map(|a| a.conjugate_with(&c, &c_inv))
            .collect::<Result<_>>()?;
        if f.evaluate(&tuple)? != *ai {
            return Err(Error::VerificationFailed(
                "transported arguments do not evaluate to the term".into(),
            ));
        }
        tuples.push(tuple);
    }
    Ok(PolynomialDecomposition {
        prime,
        witness,
        decomposition,
        tuples: tuples.try_into().expect("three tuples"),
    })
}
