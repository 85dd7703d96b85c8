//! Dense exact matrices over [`Rational`].
//!
//! Vectors are `n x 1` matrices. Elimination always pivots on the first
//! nonzero entry scanning top to bottom, so every routine is deterministic.

use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{common_denominator, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Result of [`Matrix::rref`]: `reduced = transform * original`.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub transform: Matrix,
    pub pivot_cols: Vec<usize>,
}

/// One cell of a 2x2 block layout for [`Matrix::from_blocks`].
#[derive(Clone, Copy, Debug)]
pub enum Block<'a> {
    Of(&'a Matrix),
    /// A zero block whose shape is inferred from its row and column neighbours.
    Zero,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidShape(format!("{rows}x{cols} has no entries")));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidShape(format!(
                "{rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Rational::one())
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    /// The matrix unit with a single 1 at `(i, j)`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.data[i * cols + j] = Rational::one();
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::InvalidShape(format!(
                "row {bad} has {} entries, expected {c}",
                rows[bad].len()
            )));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from integer rows. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
                .collect(),
        )
        .expect("well-formed integer matrix")
    }

    pub fn from_columns(columns: &[Matrix]) -> Result<Self> {
        let first = columns
            .first()
            .ok_or_else(|| Error::InvalidShape("no columns".into()))?;
        let rows = first.rows;
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, col) in columns.iter().enumerate() {
            if col.cols != 1 || col.rows != rows {
                return Err(Error::DimensionMismatch {
                    op: "from_columns",
                    left_rows: rows,
                    left_cols: 1,
                    right_rows: col.rows,
                    right_cols: col.cols,
                });
            }
            for i in 0..rows {
                m.data[i * cols + j] = col.data[i].clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        self.data.chunks(self.cols).map(<[Rational]>::to_vec).collect()
    }

    pub fn column(&self, j: usize) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: 1,
            data: (0..self.rows).map(|i| self.get(i, j).clone()).collect(),
        }
    }

    pub fn diagonal_entries(&self) -> Vec<Rational> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    fn require_square(&self, op: &'static str) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn mismatch(&self, other: &Matrix, op: &'static str) -> Error {
        Error::DimensionMismatch {
            op,
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.shape() != other.shape() {
            return Err(self.mismatch(other, "add"));
        }
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.shape() != other.shape() {
            return Err(self.mismatch(other, "sub"));
        }
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Rational, &Rational) -> Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    /// Multiplies integer numerators over per-row and per-column common
    /// denominators, normalizing each output entry once.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(self.mismatch(other, "mul"));
        }
        let (n, m, p) = (self.rows, self.cols, other.cols);
        let row_den: Vec<BigInt> = self.data.chunks(m).map(common_denominator).collect();
        let col_den: Vec<BigInt> = (0..p)
            .map(|j| common_denominator((0..m).map(|k| &other.data[k * p + j])))
            .collect();
        let a: Vec<BigInt> = self
            .data
            .iter()
            .enumerate()
            .map(|(idx, x)| x.numer() * (&row_den[idx / m] / x.denom()))
            .collect();
        let b: Vec<BigInt> = other
            .data
            .iter()
            .enumerate()
            .map(|(idx, x)| x.numer() * (&col_den[idx % p] / x.denom()))
            .collect();
        let mut acc = vec![BigInt::zero(); n * p];
        for i in 0..n {
            let out = &mut acc[i * p..(i + 1) * p];
            for k in 0..m {
                let x = &a[i * m + k];
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k * p..(k + 1) * p]) {
                    if !y.is_zero() {
                        *o += x * y;
                    }
                }
            }
        }
        let data = acc
            .into_iter()
            .enumerate()
            .map(|(idx, num)| {
                Rational::from_bigints(num, &row_den[idx / p] * &col_den[idx % p]).expect("denominators are positive")
            })
            .collect();
        Ok(Matrix { rows: n, cols: p, data })
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn trace(&self) -> Result<Rational> {
        let n = self.require_square("trace")?;
        Ok((0..n).map(|i| self.get(i, i)).sum())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// True for square multiples of the identity (including the zero matrix).
    pub fn is_scalar(&self) -> bool {
        self.is_square() && self.is_diagonal() && (1..self.rows).all(|i| self.get(i, i) == self.get(0, 0))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    /// Reduced row echelon form together with the invertible transform producing it.
    pub fn rref(&self) -> Rref {
        let mut reduced = self.clone();
        let mut transform = Matrix::identity(self.rows);
        let pivot_cols = reduced.eliminate(Some(&mut transform));
        Rref {
            rank: pivot_cols.len(),
            reduced,
            transform,
            pivot_cols,
        }
    }

    /// Full rank modulo a prime certifies full rank over the rationals; any
    /// other case falls back to exact fraction-free elimination.
    pub fn rank(&self) -> usize {
        match self.rank_mod_prime() {
            Some(r) if r == self.rows.min(self.cols) => r,
            _ => self.rank_exact(),
        }
    }

    /// Rank of the reduction modulo `2^61 - 1`, a lower bound for the rank;
    /// `None` if some denominator vanishes modulo the prime.
    fn rank_mod_prime(&self) -> Option<usize> {
        const P: u64 = (1 << 61) - 1;
        let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % P as u128) as u64;
        let powmod = |mut b: u64, mut e: u64| {
            let mut r = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    r = mulmod(r, b);
                }
                b = mulmod(b, b);
                e >>= 1;
            }
            r
        };
        let modulus = BigInt::from(P);
        let reduce = |x: &BigInt| x.mod_floor(&modulus).to_u64().expect("reduced below 2^61");
        let mut m = Vec::with_capacity(self.data.len());
        for x in &self.data {
            let d = reduce(x.denom());
            if d == 0 {
                return None;
            }
            m.push(mulmod(reduce(x.numer()), powmod(d, P - 2)));
        }
        let (rows, cols) = (self.rows, self.cols);
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
                continue;
            };
            for j in 0..cols {
                m.swap(piv * cols + j, r * cols + j);
            }
            let inv = powmod(m[r * cols + c], P - 2);
            for i in r + 1..rows {
                let f = mulmod(m[i * cols + c], inv);
                if f == 0 {
                    continue;
                }
                for j in c..cols {
                    let sub = mulmod(f, m[r * cols + j]);
                    m[i * cols + j] = (m[i * cols + j] + P - sub) % P;
                }
            }
            r += 1;
        }
        Some(r)
    }

    /// Fraction-free (Bareiss) elimination on the rows scaled to integers.
    fn rank_exact(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = self
            .data
            .chunks(self.cols)
            .map(|row| {
                let den = common_denominator(row);
                row.iter().map(|x| x.numer() * (&den / x.denom())).collect()
            })
            .collect();
        let mut prev = BigInt::from(1);
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(p, r);
            let (head, tail) = m.split_at_mut(r + 1);
            let pivot_row = &head[r];
            for row in tail.iter_mut() {
                let lead = std::mem::take(&mut row[c]);
                for j in c + 1..self.cols {
                    let v = (&pivot_row[c] * &row[j] - &lead * &pivot_row[j]) / &prev;
                    row[j] = v;
                }
            }
            prev = pivot_row[c].clone();
            r += 1;
        }
        r
    }

    /// In-place Gauss-Jordan elimination; returns the pivot columns.
    fn eliminate(&mut self, mut companion: Option<&mut Matrix>) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                self.swap_rows(p, r);
                if let Some(t) = companion.as_deref_mut() {
                    t.swap_rows(p, r);
                }
            }
            let inv = self.get(r, c).inv().expect("pivot is nonzero");
            self.scale_row(r, &inv);
            if let Some(t) = companion.as_deref_mut() {
                t.scale_row(r, &inv);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                self.sub_row_multiple(i, r, &factor, c);
                if let Some(t) = companion.as_deref_mut() {
                    t.sub_row_multiple(i, r, &factor, 0);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Rational) {
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x *= c;
        }
    }

    /// row[target] -= factor * row[source], for columns `from..`.
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &Rational, from: usize) {
        for j in from..self.cols {
            let s = &self.data[source * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let delta = factor * s;
            self.data[target * self.cols + j] -= delta;
        }
    }

    /// A basis of `{v : A v = 0}`, each vector scaled to a primitive integer vector.
    pub fn kernel_basis(&self) -> Vec<Matrix> {
        let rref = self.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &c) in rref.pivot_cols.iter().enumerate() {
                v[c] = Some(row);
            }
            v
        };
        (0..self.cols)
            .filter(|&c| pivot_of_col[c].is_none())
            .map(|free| {
                let mut v = Matrix::zeros(self.cols, 1);
                v.data[free] = Rational::one();
                for (row, &pc) in rref.pivot_cols.iter().enumerate() {
                    v.data[pc] = -rref.reduced.get(row, free);
                }
                v.primitive()
            })
            .collect()
    }

    /// Rescales so all entries are coprime integers, preserving the sign pattern.
    fn primitive(mut self) -> Matrix {
        let den = common_denominator(&self.data);
        let ints: Vec<BigInt> = self.data.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return self;
        }
        self.data = ints.into_iter().map(|x| Rational::from_bigint(x / &g)).collect();
        self
    }

    /// Each column rescaled to coprime integers. For `A S = S D` with `D`
    /// diagonal this keeps the relation and invertibility.
    pub fn primitive_columns(&self) -> Matrix {
        let cols: Vec<Matrix> = (0..self.cols).map(|j| self.column(j).primitive()).collect();
        Matrix::from_columns(&cols).expect("same column length")
    }

    /// Fraction-free Gauss-Jordan on `[D A | I]`, where `D` clears the row
    /// denominators: the left half ends as `det * I`, the right as `det * (DA)^-1`.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.require_square("inverse")?;
        let w = 2 * n;
        let row_den: Vec<BigInt> = self.data.chunks(n).map(common_denominator).collect();
        let mut m = vec![BigInt::zero(); n * w];
        for i in 0..n {
            for j in 0..n {
                let x = &self.data[i * n + j];
                m[i * w + j] = x.numer() * (&row_den[i] / x.denom());
            }
            m[i * w + n + i] = BigInt::from(1);
        }
        let mut prev = BigInt::from(1);
        for k in 0..n {
            let piv = (k..n).find(|&i| !m[i * w + k].is_zero()).ok_or(Error::Singular)?;
            if piv != k {
                for j in 0..w {
                    m.swap(piv * w + j, k * w + j);
                }
            }
            let pivot_row: Vec<BigInt> = m[k * w..(k + 1) * w].to_vec();
            for i in (0..n).filter(|&i| i != k) {
                let lead = std::mem::take(&mut m[i * w + k]);
                let row = &mut m[i * w..(i + 1) * w];
                for j in (0..w).filter(|&j| j != k) {
                    let v = (&pivot_row[k] * &row[j] - &lead * &pivot_row[j]) / &prev;
                    row[j] = v;
                }
            }
            prev = pivot_row[k].clone();
        }
        // (DA)^-1 = R / det, so A^-1 = R D / det
        let data = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                Rational::from_bigints(&m[i * w + n + j] * &row_den[j], prev.clone()).expect("nonzero determinant")
            })
            .collect();
        Ok(Matrix { rows: n, cols: n, data })
    }

    /// Assembles `[[tl, tr], [bl, br]]`. Zero blocks take their shape from neighbours.
    pub fn from_blocks(grid: [[Block<'_>; 2]; 2]) -> Result<Matrix> {
        let dim = |b: &Block<'_>| match b {
            Block::Of(m) => Some(m.shape()),
            Block::Zero => None,
        };
        let mut heights = [None; 2];
        let mut widths = [None; 2];
        for (bi, row) in grid.iter().enumerate() {
            for (bj, b) in row.iter().enumerate() {
                if let Some((r, c)) = dim(b) {
                    for (slot, val, what) in [(&mut heights[bi], r, "row"), (&mut widths[bj], c, "column")] {
                        match slot {
                            Some(prev) if *prev != val => {
                                return Err(Error::InvalidShape(format!(
                                    "block {what} {} has inconsistent sizes {prev} and {val}",
                                    if what == "row" { bi } else { bj }
                                )))
                            }
                            _ => *slot = Some(val),
                        }
                    }
                }
            }
        }
        let (Some(h0), Some(h1), Some(w0), Some(w1)) = (heights[0], heights[1], widths[0], widths[1]) else {
            return Err(Error::InvalidShape("cannot infer the shape of a zero block".into()));
        };
        let mut out = Matrix::zeros(h0 + h1, w0 + w1);
        let offsets = [(0, 0), (0, w0), (h0, 0), (h0, w0)];
        for (b, (ro, co)) in grid.iter().flatten().zip(offsets) {
            if let Block::Of(m) = b {
                for i in 0..m.rows {
                    for j in 0..m.cols {
                        out.set(ro + i, co + j, m.get(i, j).clone());
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn extract_block(&self, rows: Range<usize>, cols: Range<usize>) -> Result<Matrix> {
        if rows.is_empty() || cols.is_empty() || rows.end > self.rows || cols.end > self.cols {
            return Err(Error::InvalidShape(format!(
                "block {rows:?} x {cols:?} outside a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for i in rows.clone() {
            data.extend_from_slice(&self.data[i * self.cols + cols.start..i * self.cols + cols.end]);
        }
        Matrix::new(rows.len(), cols.len(), data)
    }

    /// `diag(self, other)`.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        Matrix::from_blocks([[Block::Of(self), Block::Zero], [Block::Zero, Block::Of(other)]])
            .expect("direct sum shapes are always consistent")
    }

    /// Places `self` in the top-left corner of an `n x n` zero matrix.
    pub fn embed_top_left(&self, n: usize) -> Result<Matrix> {
        if self.rows > n || self.cols > n {
            return Err(Error::InvalidShape(format!(
                "cannot embed {}x{} into {n}x{n}",
                self.rows, self.cols
            )));
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// `S * A * S^-1`.
    pub fn conjugate(&self, s: &Matrix) -> Result<Matrix> {
        let n = self.require_square("conjugate")?;
        if s.shape() != (n, n) {
            return Err(self.mismatch(s, "conjugate"));
        }
        self.conjugate_with(s, &s.inverse()?)
    }

    /// `S * A * S_inv` with the inverse supplied by the caller.
    pub fn conjugate_with(&self, s: &Matrix, s_inv: &Matrix) -> Result<Matrix> {
        s.mul(self)?.mul(s_inv)
    }

    /// Entry `(p(i), p(j))` of the result is entry `(i, j)` of `self`.
    pub fn permutation_conjugate(&self, p: &PermutationMap) -> Result<Matrix> {
        let n = self.require_square("permutation_conjugate")?;
        if p.len() != n {
            return Err(Error::DimensionMismatch {
                op: "permutation_conjugate",
                left_rows: n,
                left_cols: n,
                right_rows: p.len(),
                right_cols: p.len(),
            });
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(p.apply(i), p.apply(j), self.get(i, j).clone());
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.data.chunks(self.cols).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{row:?}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for row in cells.chunks(self.cols) {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.row_vecs().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Rational>>::deserialize(deserializer)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// A bijection on `{0, .., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationMap {
    images: Vec<usize>,
}

impl PermutationMap {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 0..{n}"
                )));
            }
        }
        Ok(PermutationMap { images })
    }

    pub fn identity(n: usize) -> Self {
        PermutationMap {
            images: (0..n).collect(),
        }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        PermutationMap { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p] = i;
        }
        PermutationMap { images: inv }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &PermutationMap) -> Self {
        PermutationMap {
            images: first.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    /// The matrix `P` with `P e_i = e_{p(i)}`, so `P A P^-1` matches
    /// [`Matrix::permutation_conjugate`].
    pub fn matrix(&self) -> Matrix {
        let n = self.images.len();
        let mut m = Matrix::zeros(n, n);
        for (i, &p) in self.images.iter().enumerate() {
            m.set(p, i, Rational::one());
        }
        m
    }
}
