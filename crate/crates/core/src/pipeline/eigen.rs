//! Exact certification of a split, multiplicity-free rational spectrum.
//!
//! Candidate eigenvalues come from the diagonal of a triangular matrix or from
//! floating-point roots of the characteristic polynomial rounded onto the
//! lattice `Z / d` (`d` a common denominator of the entries). Every accepted
//! eigenvalue is then confirmed by `rank(V - μ I) = p - 1` in exact arithmetic,
//! so rounding can cost a witness but never admits a wrong one.

use num_complex::Complex64;

use crate::matrix::Matrix;
use crate::scalar::{common_denominator, Rational};

/// Coefficients of `det(x I - V)`, lowest degree first (monic).
pub fn characteristic_polynomial(v: &Matrix) -> Vec<Rational> {
    let n = v.rows();
    assert!(v.is_square(), "characteristic polynomial of a non-square matrix");
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut mk = Matrix::zeros(n, n);
    let eye = Matrix::identity(n);
    for k in 1..=n {
        mk = v
            .mul(&mk)
            .expect("square")
            .add(&eye.scale(&c[n - k + 1]))
            .expect("square");
        let tr = v.mul(&mk).expect("square").trace().expect("square");
        c[n - k] = -(tr * Rational::new(1, k as i64).expect("k >= 1"));
    }
    c
}

fn horner(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Durand-Kerner iteration on a monic polynomial (lowest degree first).
fn approximate_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let eval = |z: Complex64| {
        coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    };
    let radius = 1.0 + coeffs[..deg].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32) * radius.min(1e6)).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for k in 0..deg {
            let denom = (0..deg)
                .filter(|&j| j != k)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[k] - z[j]));
            if denom.norm() == 0.0 {
                z[k] += Complex64::new(1e-9, 1e-9);
                moved = f64::INFINITY;
                continue;
            }
            let step = eval(z[k]) / denom;
            z[k] -= step;
            moved = moved.max(step.norm() / (1.0 + z[k].norm()));
        }
        if moved < 1e-14 {
            break;
        }
    }
    z
}

/// Rounds `x` to the nearest element of `Z / d`.
fn snap(x: f64, d: &Rational) -> Option<Rational> {
    let scaled = (x * d.to_f64()).round();
    if !scaled.is_finite() || scaled.abs() > 1e15 {
        return None;
    }
    Rational::from_integer(scaled as i64).checked_div(d).ok()
}

fn shifted(v: &Matrix, mu: &Rational) -> Matrix {
    let mut m = v.clone();
    for i in 0..v.rows() {
        m.set(i, i, v.get(i, i) - mu);
    }
    m
}

/// `p` distinct rational eigenvalues of the `p x p` matrix `v`, each with a
/// one-dimensional eigenspace, or `None`.
///
/// Triangular inputs keep their diagonal order; otherwise eigenvalues are
/// sorted ascending.
pub fn rational_spectrum(v: &Matrix) -> Option<Vec<Rational>> {
    if !v.is_square() {
        return None;
    }
    let p = v.rows();
    let candidates: Vec<Rational> = if v.is_upper_triangular() || v.is_lower_triangular() {
        v.diagonal_entries()
    } else {
        let charpoly = characteristic_polynomial(v);
        let floats: Vec<f64> = charpoly.iter().map(Rational::to_f64).collect();
        if floats.iter().any(|c| !c.is_finite()) {
            return None;
        }
        let d = Rational::from_bigint(common_denominator(v.entries()));
        let mut roots: Vec<Rational> = approximate_roots(&floats)
            .into_iter()
            .filter_map(|z| snap(z.re, &d))
            .filter(|r| horner(&charpoly, r).is_zero())
            .collect();
        roots.sort();
        roots
    };
    let mut seen: Vec<Rational> = Vec::with_capacity(p);
    for mu in candidates {
        if seen.contains(&mu) {
            return None;
        }
        seen.push(mu);
    }
    if seen.len() != p || p == 0 {
        return None;
    }
    seen.iter().all(|mu| shifted(v, mu).rank() + 1 == p).then_some(seen)
}
