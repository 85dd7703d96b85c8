//! Conjugating a nonscalar matrix to one with any prescribed diagonal whose
//! sum equals the trace.
//!
//! Each step produces an explicit change of basis; similarities are carried
//! as `(S, S^-1)` pairs and composed by multiplication.

use crate::error::{Error, Result};
use crate::matrix::{Block, Matrix, PermutationMap};
use crate::scalar::Rational;

/// `conjugated = similarity * B * similarity^-1` has diagonal `mus`.
#[derive(Clone, Debug)]
pub struct PrescribedDiagonal {
    pub similarity: Matrix,
    pub conjugated: Matrix,
}

/// A similarity together with its inverse.
#[derive(Clone, Debug)]
struct Sim {
    s: Matrix,
    s_inv: Matrix,
}

impl Sim {
    /// Change of basis to the columns of `basis`: `S = basis^-1`.
    fn from_basis(basis: Matrix) -> Result<Self> {
        Ok(Sim {
            s: basis.inverse()?,
            s_inv: basis,
        })
    }

    fn apply(&self, m: &Matrix) -> Result<Matrix> {
        m.conjugate_with(&self.s, &self.s_inv)
    }

    /// `self` applied after `first`.
    fn after(&self, first: &Sim) -> Result<Self> {
        Ok(Sim {
            s: self.s.mul(&first.s)?,
            s_inv: first.s_inv.mul(&self.s_inv)?,
        })
    }

    /// `diag(1, self)`.
    fn lift(&self) -> Sim {
        let one = Matrix::identity(1);
        Sim {
            s: one.direct_sum(&self.s),
            s_inv: one.direct_sum(&self.s_inv),
        }
    }
}

pub fn prescribe_diagonal(b: &Matrix, mus: &[Rational]) -> Result<PrescribedDiagonal> {
    if !b.is_square() {
        return Err(Error::NotSquare {
            op: "prescribe_diagonal",
            rows: b.rows(),
            cols: b.cols(),
        });
    }
    let k = b.rows();
    if mus.len() != k {
        return Err(Error::Precondition(format!(
            "{k}x{k} matrix needs {k} diagonal targets, got {}",
            mus.len()
        )));
    }
    if b.is_scalar() {
        return Err(Error::ScalarMatrix {
            op: "prescribe_diagonal",
        });
    }
    let trace = b.trace()?;
    let target: Rational = mus.iter().sum();
    if trace != target {
        return Err(Error::TraceMismatch {
            expected: Box::new(target),
            found: Box::new(trace),
        });
    }
    let sim = prescribe(b, mus)?;
    let conjugated = sim.apply(b)?;
    if conjugated.diagonal_entries() != mus {
        return Err(Error::VerificationFailed("prescribed diagonal not reached".into()));
    }
    Ok(PrescribedDiagonal {
        similarity: sim.s,
        conjugated,
    })
}

/// Recursion on nonscalar `b` with `tr b = Σ mus`.
fn prescribe(b: &Matrix, mus: &[Rational]) -> Result<Sim> {
    let k = b.rows();
    let corner = corner_step(b, &mus[0])?;
    if k == 2 {
        return Ok(corner);
    }
    let c = corner.apply(b)?;
    if let Some(tail) = finish_tail(&c, &mus[1..])? {
        return tail.after(&corner);
    }

    // c = diag(μ1, λ, .., λ)
    let lambda = c.get(1, 1).clone();
    if mus[1..].iter().all(|m| *m == lambda) {
        return Ok(corner);
    }
    let j = (1..k)
        .find(|&j| mus[j] != mus[0] && mus[j] != lambda)
        .expect("some target differs from both μ1 and λ");
    let second = corner_step(&c, &mus[j])?;
    let d = second.apply(&c)?;
    let rest: Vec<Rational> = mus
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(_, m)| m.clone())
        .collect();
    let tail = finish_tail(&d, &rest)?
        .ok_or_else(|| Error::VerificationFailed("moved corner left a scalar split block".into()))?;
    // Diagonal is now (μj, μ1, .., μ(j-1), μ(j+1), ..); move position 0 to j.
    let images: Vec<usize> = (0..k)
        .map(|i| match i {
            0 => j,
            i if i <= j => i - 1,
            i => i,
        })
        .collect();
    let pm = PermutationMap::new(images)?;
    let perm = Sim {
        s: pm.matrix(),
        s_inv: pm.inverse().matrix(),
    };
    perm.after(&tail.after(&second.after(&corner)?)?)
}

/// Similarity fixing nothing but ensuring the (0,0) entry becomes `mu`.
fn corner_step(b: &Matrix, mu: &Rational) -> Result<Sim> {
    let k = b.rows();
    let x = match (0..k).find(|&i| (0..k).any(|r| r != i && !b.get(r, i).is_zero())) {
        Some(i) => Matrix::unit(k, 1, i, 0),
        None => {
            let (i, j) = (0..k)
                .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                .find(|&(i, j)| b.get(i, i) != b.get(j, j))
                .ok_or(Error::ScalarMatrix {
                    op: "prescribe_diagonal",
                })?;
            Matrix::unit(k, 1, i, 0).add(&Matrix::unit(k, 1, j, 0))?
        }
    };
    let bx = b.mul(&x)?;
    let y = bx.sub(&x.scale(mu))?;
    Sim::from_basis(extend_to_basis(&[x, y])?)
}

/// Appends the standard basis vectors at the non-pivot positions of `vectors`.
fn extend_to_basis(vectors: &[Matrix]) -> Result<Matrix> {
    let k = vectors[0].rows();
    let stacked = Matrix::from_columns(vectors)?.transpose();
    let rref = stacked.rref();
    if rref.rank != vectors.len() {
        return Err(Error::VerificationFailed("basis seed vectors are dependent".into()));
    }
    let mut cols = vectors.to_vec();
    cols.extend(
        (0..k)
            .filter(|c| !rref.pivot_cols.contains(c))
            .map(|c| Matrix::unit(k, 1, c, 0)),
    );
    Matrix::from_columns(&cols)
}

/// Given `c = [[μ, u], [v, C1]]`, conjugates `C1` to diagonal `rest` while
/// fixing the corner. Returns `None` when `C1` is scalar and `u = v = 0`.
fn finish_tail(c: &Matrix, rest: &[Rational]) -> Result<Option<Sim>> {
    let k = c.rows();
    let c1 = c.extract_block(1..k, 1..k)?;
    if !c1.is_scalar() {
        return Ok(Some(prescribe(&c1, rest)?.lift()));
    }
    let u = c.extract_block(0..1, 1..k)?;
    let v = c.extract_block(1..k, 0..1)?;
    let one = Matrix::identity(1);
    let eye = Matrix::identity(k - 1);
    let shear = if let Some(a) = annihilating_partner(&v) {
        // [[1, a], [0, I]] with a v = 0 and v a ≠ 0
        let a = a.transpose();
        let neg = a.neg();
        Sim {
            s: Matrix::from_blocks([[Block::Of(&one), Block::Of(&a)], [Block::Zero, Block::Of(&eye)]])?,
            s_inv: Matrix::from_blocks([[Block::Of(&one), Block::Of(&neg)], [Block::Zero, Block::Of(&eye)]])?,
        }
    } else if let Some(b) = annihilating_partner(&u.transpose()) {
        // [[1, 0], [b, I]] with u b = 0 and b u ≠ 0
        let neg = b.neg();
        Sim {
            s: Matrix::from_blocks([[Block::Of(&one), Block::Zero], [Block::Of(&b), Block::Of(&eye)]])?,
            s_inv: Matrix::from_blocks([[Block::Of(&one), Block::Zero], [Block::Of(&neg), Block::Of(&eye)]])?,
        }
    } else {
        return Ok(None);
    };
    let sheared = shear.apply(c)?;
    let c1 = sheared.extract_block(1..k, 1..k)?;
    if c1.is_scalar() {
        return Err(Error::VerificationFailed(
            "rank-one shear left the trailing block scalar".into(),
        ));
    }
    Ok(Some(prescribe(&c1, rest)?.lift().after(&shear)?))
}

/// For a nonzero column `v` of length >= 2, a nonzero column `a` with `aᵀ v = 0`.
fn annihilating_partner(v: &Matrix) -> Option<Matrix> {
    let len = v.rows();
    let j = (0..len).find(|&j| !v.get(j, 0).is_zero())?;
    let i = if j == 0 { 1 } else { 0 };
    let mut a = Matrix::zeros(len, 1);
    a.set(i, 0, v.get(j, 0).clone());
    a.set(j, 0, -v.get(i, 0));
    Some(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x)).collect()
    }

    fn check(b: &Matrix, mus: &[Rational]) -> PrescribedDiagonal {
        let r = prescribe_diagonal(b, mus).unwrap();
        assert_eq!(r.conjugated.diagonal_entries(), mus);
        assert_eq!(b.conjugate(&r.similarity).unwrap(), r.conjugated);
        r
    }

    #[test]
    fn already_in_shape() {
        let b = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        let r = check(&b, &ints(&[0, 0]));
        assert_eq!(r.similarity, Matrix::identity(2));
    }

    #[test]
    fn diagonal_to_zero_diagonal() {
        let b = Matrix::diagonal(&ints(&[1, -1]));
        let r = check(&b, &ints(&[0, 0]));
        assert_eq!(r.conjugated, Matrix::from_i64(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn rejects_scalar_and_trace_mismatch() {
        assert!(matches!(
            prescribe_diagonal(&Matrix::from_i64(&[&[4]]), &ints(&[4])),
            Err(Error::ScalarMatrix { .. })
        ));
        assert!(matches!(
            prescribe_diagonal(&Matrix::identity(3), &ints(&[1, 1, 1])),
            Err(Error::ScalarMatrix { .. })
        ));
        let err = prescribe_diagonal(&Matrix::diagonal(&ints(&[1, 2])), &ints(&[1, 1])).unwrap_err();
        assert_eq!(
            err,
            Error::TraceMismatch {
                expected: Box::new(Rational::from_integer(2)),
                found: Box::new(Rational::from_integer(3))
            }
        );
        assert!(prescribe_diagonal(&Matrix::diagonal(&ints(&[1, 2])), &ints(&[3])).is_err());
    }

    #[test]
    fn scalar_split_with_coupling() {
        // c = [[μ1, u], [v, λ I]] cases
        let b = Matrix::from_i64(&[&[1, 0, 0], &[1, 2, 0], &[0, 0, 2]]);
        check(&b, &ints(&[1, 2, 2]));
        check(&b, &ints(&[5, 0, 0]));
        check(&b.transpose(), &ints(&[1, 3, 1]));
    }

    #[test]
    fn fully_split_diagonal_case() {
        // diag(μ1, λ, λ) with targets that force the second corner step
        let b = Matrix::diagonal(&ints(&[1, 4, 4]));
        check(&b, &ints(&[1, 2, 6]));
        check(&b, &ints(&[1, 6, 2]));
        check(&b, &ints(&[1, 4, 4]));
        let b = Matrix::diagonal(&ints(&[0, 3, 3, 3, 3]));
        check(&b, &ints(&[0, 3, 3, 0, 6]));
        check(&b, &ints(&[0, 1, 2, 3, 6]));
    }

    #[test]
    fn larger_random_looking_instances() {
        let b = Matrix::from_i64(&[&[2, -1, 0, 3], &[1, 1, 1, 1], &[0, 0, 5, -2], &[7, 0, 1, -3]]);
        check(&b, &ints(&[0, 0, 0, 5]));
        check(&b, &ints(&[5, 0, 0, 0]));
        check(&b, &ints(&[1, 1, 1, 2]));
    }
}
