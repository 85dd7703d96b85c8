//! Exact three-term decompositions of trace-zero rational matrices into
//! terms similar to a fixed diagonal model, with explicit similarity witnesses.
//!
//! ```
//! use waring_core::{decompose, verify, Coefficients, Matrix, ModelSpectrum, Rational};
//!
//! let t = Matrix::from_i64(&[&[1, 2, 0], &[0, 3, 1], &[4, 0, -4]]);
//! let spec = ModelSpectrum::from_lambdas(3, vec![Rational::from_integer(1), Rational::from_integer(2)])?;
//! let coeffs = Coefficients::new(1.into(), 2.into(), (-3).into())?;
//! let d = decompose(&t, &spec, &coeffs)?;
//! assert!(verify(&d).all_passed());
//! # Ok::<(), waring_core::Error>(())
//! ```

pub mod constructions;
pub mod error;
pub mod io;
pub mod matrix;
pub mod ncpoly;
pub mod pipeline;
pub mod random;
pub mod scalar;
pub mod waring;

pub use constructions::{ModelSpectrum, SimilarityWitness};
pub use error::{Error, Result};
pub use matrix::{Block, Matrix, PermutationMap, Rref};
pub use ncpoly::{NcPolynomial, Word};
pub use pipeline::{
    degree_gate, search_diagonal_witness, select_prime, waring_for_polynomial, DiagonalWitness,
    PolynomialDecomposition, PrimeChoice,
};
pub use scalar::Rational;
pub use waring::{
    decompose, decompose_by_blocks, two_term_obstruction, verify, verify_record, Check, Coefficients, Decomposition,
    DecompositionRecord, ObstructionReport, VerificationReport,
};
