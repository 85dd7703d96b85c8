use crate::error::{Error, Result};
use crate::matrix::{Block, Matrix, PermutationMap};
use crate::scalar::Rational;

use super::{diagonalize_with_spectrum, ModelSpectrum, SimilarityWitness};

/// `W X = Z` with `X W` not diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub w: Matrix,
    pub x: Matrix,
}

/// `A = [[U, V], [W, Z]]` similar to the model, with `U` nonscalar.
#[derive(Clone, Debug)]
pub struct BlockCompletion {
    pub u: Matrix,
    pub v: Matrix,
    pub w: Matrix,
    /// The factor with `W X = Z` used to build `U` and `V`.
    pub x: Matrix,
    pub a: Matrix,
    pub witness: SimilarityWitness,
}

/// First index pair `i < j` (lexicographic) whose principal 2x2 submatrix is nonscalar.
pub fn nonscalar_pair(t: &Matrix) -> Option<(usize, usize)> {
    let n = t.rows().min(t.cols());
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| !t.get(i, j).is_zero() || !t.get(j, i).is_zero() || t.get(i, i) != t.get(j, j))
}

/// Permutation sending `i -> 0`, `j -> 1`, other indices keep their relative order.
pub fn pair_to_front(n: usize, i: usize, j: usize) -> PermutationMap {
    let mut images = vec![0; n];
    images[i] = 0;
    images[j] = 1;
    let mut next = 2;
    for (k, img) in images.iter_mut().enumerate() {
        if k != i && k != j {
            *img = next;
            next += 1;
        }
    }
    PermutationMap::new(images).expect("valid permutation")
}

/// Permutation sending `i -> n-2`, `j -> n-1`, other indices keep their relative order.
pub fn pair_to_back(n: usize, i: usize, j: usize) -> PermutationMap {
    let mut images = vec![0; n];
    images[i] = n - 2;
    images[j] = n - 1;
    let mut next = 0;
    for (k, img) in images.iter_mut().enumerate() {
        if k != i && k != j {
            *img = next;
            next += 1;
        }
    }
    PermutationMap::new(images).expect("valid permutation")
}

/// `diag(corner, I)` of size `n`.
fn embed_corner(corner: &Matrix, n: usize) -> Matrix {
    if n == corner.rows() {
        corner.clone()
    } else {
        corner.direct_sum(&Matrix::identity(n - corner.rows()))
    }
}

fn shear() -> Matrix {
    Matrix::from_i64(&[&[1, 1], &[0, 1]])
}

fn require_square(z: &Matrix, op: &'static str) -> Result<usize> {
    if z.is_square() {
        Ok(z.rows())
    } else {
        Err(Error::NotSquare {
            op,
            rows: z.rows(),
            cols: z.cols(),
        })
    }
}

/// Square factorization of a nonscalar `Z`: `X` invertible, `W = Z X^-1`, so
/// `X W = X Z X^-1`, which is made non-diagonal.
pub fn factor_nonscalar_square(z: &Matrix) -> Result<Factorization> {
    let k = require_square(z, "factor_nonscalar_square")?;
    if k < 2 || z.is_scalar() {
        return Err(Error::ScalarMatrix {
            op: "factor_nonscalar_square",
        });
    }
    if !z.is_diagonal() {
        return Ok(Factorization {
            w: z.clone(),
            x: Matrix::identity(k),
        });
    }
    let (i, j) = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .find(|&(i, j)| z.get(i, i) != z.get(j, j))
        .expect("a nonscalar diagonal matrix has two distinct diagonal entries");
    // X = diag(shear, I) * P with P bringing the unequal pair to the front.
    let x = embed_corner(&shear(), k).mul(&pair_to_front(k, i, j).matrix())?;
    let w = z.mul(&x.inverse()?)?;
    Ok(Factorization { w, x })
}

/// For `l > k`: `W = [Z | Y]` (`k x l`) and `X = [I_k; 0]` (`l x k`), where `Y`
/// has a single 1 in its top-left corner.
pub fn factor_rectangular(z: &Matrix, l: usize) -> Result<Factorization> {
    let k = require_square(z, "factor_rectangular")?;
    if l <= k {
        return Err(Error::Precondition(format!(
            "factor_rectangular needs l > k, got l = {l}, k = {k}"
        )));
    }
    let mut w = Matrix::zeros(k, l);
    let mut x = Matrix::zeros(l, k);
    for r in 0..k {
        for c in 0..k {
            w.set(r, c, z.get(r, c).clone());
        }
        x.set(r, r, Rational::one());
    }
    w.set(0, k, Rational::one());
    Ok(Factorization { w, x })
}

/// Completes a trailing `(n-q) x (n-q)` block `Z` to a matrix similar to the model.
///
/// With `W X = Z` and `X W` non-diagonal, `U = D_q - X W` and
/// `V = U X + X W X - X Z`; conjugating by `[[I, X], [0, I]]` yields
/// `[[D_q, 0], [W, 0]]`, which is diagonalized directly.
pub fn complete_block_to_model(z: &Matrix, spec: &ModelSpectrum) -> Result<BlockCompletion> {
    let (n, q) = (spec.n(), spec.q());
    if n < 3 {
        return Err(Error::Precondition(format!("block completion needs n >= 3, got {n}")));
    }
    if q == n {
        return Err(Error::Precondition(
            "block completion needs q < n (no trailing block when q = n)".into(),
        ));
    }
    let m = n - q;
    if z.shape() != (m, m) {
        return Err(Error::DimensionMismatch {
            op: "complete_block_to_model",
            left_rows: m,
            left_cols: m,
            right_rows: z.rows(),
            right_cols: z.cols(),
        });
    }
    let Factorization { w, x } = if q > m {
        factor_rectangular(z, q)?
    } else {
        if z.is_scalar() {
            return Err(Error::Precondition("n = 2q requires a nonscalar trailing block".into()));
        }
        factor_nonscalar_square(z)?
    };
    let xw = x.mul(&w)?;
    let u = spec.leading_block().sub(&xw)?;
    let v = u.mul(&x)?.add(&xw.mul(&x)?)?.sub(&x.mul(z)?)?;
    let a = Matrix::from_blocks([[Block::Of(&u), Block::Of(&v)], [Block::Of(&w), Block::Of(z)]])?;

    let eye_q = Matrix::identity(q);
    let eye_m = Matrix::identity(m);
    let e = Matrix::from_blocks([[Block::Of(&eye_q), Block::Of(&x)], [Block::Zero, Block::Of(&eye_m)]])?;
    let e_inv = Matrix::from_blocks([
        [Block::Of(&eye_q), Block::Of(&x.neg())],
        [Block::Zero, Block::Of(&eye_m)],
    ])?;
    let reduced = a.conjugate_with(&e, &e_inv)?;
    let expected = Matrix::from_blocks([
        [Block::Of(&spec.leading_block()), Block::Zero],
        [Block::Of(&w), Block::Of(&Matrix::zeros(m, m))],
    ])?;
    if reduced != expected {
        return Err(Error::VerificationFailed(
            "unitriangular conjugation did not reach [[D_q, 0], [W, 0]]".into(),
        ));
    }
    let inner = diagonalize_with_spectrum(&reduced, spec)?;
    let witness = SimilarityWitness::certify(&a, spec, e_inv.mul(inner.matrix())?)?;
    if u.is_scalar() {
        return Err(Error::VerificationFailed("completed block U is scalar".into()));
    }
    Ok(BlockCompletion { u, v, w, x, a, witness })
}

/// An invertible `R` with `R T R^-1 - T` not diagonal, for nonscalar square `T`.
///
/// A permutation brings a nonscalar 2x2 principal corner to the front; a
/// diagonal corner is sheared, a non-diagonal one is conjugated by `diag(1, 2)`.
pub fn perturbing_conjugator(t: &Matrix) -> Result<Matrix> {
    let k = require_square(t, "perturbing_conjugator")?;
    let Some((i, j)) = nonscalar_pair(t) else {
        return Err(Error::ScalarMatrix {
            op: "perturbing_conjugator",
        });
    };
    let p = pair_to_front(k, i, j);
    let moved = t.permutation_conjugate(&p)?;
    let corner = moved.extract_block(0..2, 0..2)?;
    let r1 = if corner.is_diagonal() {
        shear()
    } else {
        Matrix::diagonal(&[Rational::one(), Rational::from_integer(2)])
    };
    let pm = p.matrix();
    let r = p.inverse().matrix().mul(&embed_corner(&r1, k))?.mul(&pm)?;
    if t.conjugate(&r)?.sub(t)?.is_diagonal() {
        return Err(Error::VerificationFailed(
            "perturbing conjugator left the difference diagonal".into(),
        ));
    }
    Ok(r)
}
