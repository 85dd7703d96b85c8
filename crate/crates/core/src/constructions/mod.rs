//! Constructive building blocks for three-term decompositions.
//!
//! Every operation here returns explicit matrices (factors, conjugators,
//! similarity witnesses) whose defining identities can be re-checked exactly.

mod factor;
mod prescribe;

pub use factor::{
    complete_block_to_model, factor_nonscalar_square, factor_rectangular, nonscalar_pair, pair_to_back, pair_to_front,
    perturbing_conjugator, BlockCompletion, Factorization,
};
pub use prescribe::{prescribe_diagonal, PrescribedDiagonal};

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Rational;

/// The target similarity class `diag(λ1, .., λq, 0, .., 0)` of size `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpectrum {
    n: usize,
    lambdas: Vec<Rational>,
}

impl ModelSpectrum {
    /// Requires `n >= 2`, `n <= 2q`, `q <= n` and `q` distinct nonzero eigenvalues.
    pub fn new(n: usize, q: usize, lambdas: Vec<Rational>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSpectrum(format!("n = {n}, need n >= 2")));
        }
        if q > n || 2 * q < n {
            return Err(Error::InvalidSpectrum(format!("q = {q} outside [n/2, n] for n = {n}")));
        }
        if lambdas.len() != q {
            return Err(Error::InvalidSpectrum(format!(
                "q = {q} but {} eigenvalues given",
                lambdas.len()
            )));
        }
        if lambdas.iter().any(Rational::is_zero) {
            return Err(Error::InvalidSpectrum("eigenvalues must be nonzero".into()));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = lambdas.iter().find(|l| !seen.insert(*l)) {
            return Err(Error::InvalidSpectrum(format!("eigenvalue {dup} repeated")));
        }
        Ok(ModelSpectrum { n, lambdas })
    }

    /// Shorthand with `q = lambdas.len()`.
    pub fn from_lambdas(n: usize, lambdas: Vec<Rational>) -> Result<Self> {
        Self::new(n, lambdas.len(), lambdas)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[Rational] {
        &self.lambdas
    }

    pub fn lambda_sum(&self) -> Rational {
        self.lambdas.iter().sum()
    }

    /// All `n` diagonal entries of the model.
    pub fn diagonal(&self) -> Vec<Rational> {
        let mut d = self.lambdas.clone();
        d.resize(self.n, Rational::zero());
        d
    }

    /// `diag(λ1, .., λq, 0, .., 0)`.
    pub fn model_matrix(&self) -> Matrix {
        Matrix::diagonal(&self.diagonal())
    }

    /// The `q x q` block `diag(λ1, .., λq)`.
    pub fn leading_block(&self) -> Matrix {
        Matrix::diagonal(&self.lambdas)
    }
}

/// An invertible `S` with `A = S * D * S^-1`, `D` the model matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityWitness {
    s: Matrix,
}

impl SimilarityWitness {
    /// Checks `A S = S D` and `rank S = n` exactly.
    pub fn certify(a: &Matrix, spec: &ModelSpectrum, s: Matrix) -> Result<Self> {
        if !witness_holds(a, spec, &s) {
            return Err(Error::VerificationFailed(
                "similarity witness does not satisfy A S = S D with S invertible".into(),
            ));
        }
        Ok(SimilarityWitness { s })
    }

    /// For witnesses that are verified later by the caller.
    pub(crate) fn unchecked(s: Matrix) -> Self {
        SimilarityWitness { s }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.s
    }

    pub fn into_matrix(self) -> Matrix {
        self.s
    }
}

/// Exact check that `s` conjugates the model onto `a`; never fails on bad shapes.
pub fn witness_holds(a: &Matrix, spec: &ModelSpectrum, s: &Matrix) -> bool {
    let n = spec.n();
    if a.shape() != (n, n) || s.shape() != (n, n) || s.rank() != n {
        return false;
    }
    // S D scales the columns of S by the model diagonal.
    let mut sd = s.clone();
    for (j, d) in spec.diagonal().iter().enumerate() {
        for i in 0..n {
            sd.set(i, j, s.get(i, j) * d);
        }
    }
    a.mul(s).map(|as_| as_ == sd).unwrap_or(false)
}

fn shifted(a: &Matrix, lambda: &Rational) -> Matrix {
    let mut m = a.clone();
    for i in 0..a.rows() {
        m.set(i, i, a.get(i, i) - lambda);
    }
    m
}

/// Kernel-dimension certificate: `rank(A - λi I) = n - 1` for each `i` and `rank A = q`.
pub fn is_similar_to_model(a: &Matrix, spec: &ModelSpectrum) -> bool {
    let n = spec.n();
    a.shape() == (n, n) && a.rank() == spec.q() && spec.lambdas().iter().all(|l| shifted(a, l).rank() == n - 1)
}

/// Builds the witness from eigenvectors: one kernel vector of `A - λi I` per
/// eigenvalue in spectrum order, then a kernel basis of `A`.
pub fn diagonalize_with_spectrum(a: &Matrix, spec: &ModelSpectrum) -> Result<SimilarityWitness> {
    let n = spec.n();
    if a.shape() != (n, n) {
        return Err(Error::DimensionMismatch {
            op: "diagonalize_with_spectrum",
            left_rows: n,
            left_cols: n,
            right_rows: a.rows(),
            right_cols: a.cols(),
        });
    }
    let mut columns = Vec::with_capacity(n);
    for l in spec.lambdas() {
        let mut k = shifted(a, l).kernel_basis();
        if k.len() != 1 {
            return Err(Error::NotSimilarToModel(format!(
                "rank(A - {l} I) = {}, expected {}",
                n - k.len(),
                n - 1
            )));
        }
        columns.push(k.pop().expect("one kernel vector"));
    }
    let zero_space = a.kernel_basis();
    if zero_space.len() != n - spec.q() {
        return Err(Error::NotSimilarToModel(format!(
            "rank(A) = {}, expected q = {}",
            n - zero_space.len(),
            spec.q()
        )));
    }
    columns.extend(zero_space);
    SimilarityWitness::certify(a, spec, Matrix::from_columns(&columns)?)
}

/// Witness for `A = [[L, 0], [W, 0]]` with `L` lower triangular and
/// `diag(L) = (λ1, .., λq)`, by forward substitution.
pub fn lower_block_witness(a: &Matrix, spec: &ModelSpectrum) -> Result<SimilarityWitness> {
    SimilarityWitness::certify(a, spec, lower_block_eigenbasis(a, spec)?)
}

/// Witness for `A = [[M, V], [0, 0]]` with `M` upper triangular and
/// `diag(M) = (λ1, .., λq)`, by back substitution.
pub fn upper_block_witness(a: &Matrix, spec: &ModelSpectrum) -> Result<SimilarityWitness> {
    SimilarityWitness::certify(a, spec, upper_block_eigenbasis(a, spec)?)
}

fn block_shape_check(a: &Matrix, spec: &ModelSpectrum, lower: bool) -> Result<()> {
    let (n, q) = (spec.n(), spec.q());
    if a.shape() != (n, n) {
        return Err(Error::NotSquare {
            op: "block_witness",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let shape_ok = (0..n).all(|i| {
        (0..n).all(|j| {
            let must_vanish = if lower {
                j >= q || (i < q && j > i)
            } else {
                i >= q || (j < q && i > j)
            };
            !must_vanish || a.get(i, j).is_zero()
        })
    });
    let diagonal_ok = (0..q).all(|i| *a.get(i, i) == spec.lambdas()[i]);
    if !(shape_ok && diagonal_ok) {
        let kind = if lower { "[[L, 0], [W, 0]]" } else { "[[M, V], [0, 0]]" };
        return Err(Error::Precondition(format!(
            "matrix is not of the form {kind} with diagonal λ"
        )));
    }
    Ok(())
}

pub(crate) fn lower_block_eigenbasis(a: &Matrix, spec: &ModelSpectrum) -> Result<Matrix> {
    block_shape_check(a, spec, true)?;
    let (n, q) = (spec.n(), spec.q());
    let lambdas = spec.lambdas();
    let mut basis = Matrix::zeros(n, n);
    for i in 0..q {
        let li = &lambdas[i];
        let mut x = vec![Rational::zero(); q];
        x[i] = Rational::one();
        for j in i + 1..q {
            let s: Rational = (i..j).map(|k| a.get(j, k) * &x[k]).sum();
            x[j] = s.checked_div(&(li - &lambdas[j]))?;
        }
        for (j, xj) in x.iter().enumerate() {
            basis.set(j, i, xj.clone());
        }
        let inv = li.inv()?;
        for r in q..n {
            let s: Rational = (i..q).map(|k| a.get(r, k) * &x[k]).sum();
            basis.set(r, i, s * &inv);
        }
    }
    for k in q..n {
        basis.set(k, k, Rational::one());
    }
    Ok(basis)
}

pub(crate) fn upper_block_eigenbasis(a: &Matrix, spec: &ModelSpectrum) -> Result<Matrix> {
    block_shape_check(a, spec, false)?;
    let (n, q) = (spec.n(), spec.q());
    let lambdas = spec.lambdas();
    let mut basis = Matrix::zeros(n, n);
    for i in 0..q {
        let li = &lambdas[i];
        let mut x = vec![Rational::zero(); q];
        x[i] = Rational::one();
        for j in (0..i).rev() {
            let s: Rational = (j + 1..=i).map(|k| a.get(j, k) * &x[k]).sum();
            x[j] = s.checked_div(&(li - &lambdas[j]))?;
        }
        for (j, xj) in x.into_iter().enumerate() {
            basis.set(j, i, xj);
        }
    }
    // kernel: columns (x, e_k) with M X = -V
    if q < n {
        let m = a.extract_block(0..q, 0..q)?;
        let x = m.inverse()?.mul(&a.extract_block(0..q, q..n)?)?.neg();
        for k in q..n {
            for j in 0..q {
                basis.set(j, k, x.get(j, k - q).clone());
            }
            basis.set(k, k, Rational::one());
        }
    }
    Ok(basis)
}
