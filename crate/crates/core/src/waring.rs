//! Three-term decompositions `T = α1 A1 + α2 A2 + α3 A3` of trace-zero
//! matrices, with every `Ai` similar to the model diagonal, plus the two-term
//! rank obstruction.

use serde::{Deserialize, Serialize};

use crate::constructions::{
    complete_block_to_model, lower_block_eigenbasis, nonscalar_pair, pair_to_back, perturbing_conjugator,
    prescribe_diagonal, upper_block_eigenbasis, witness_holds, ModelSpectrum, SimilarityWitness,
};
use crate::error::{Error, Result};
use crate::matrix::{Block, Matrix};
use crate::scalar::Rational;

/// Nonzero `α1, α2, α3` with `α1 + α2 + α3 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficients {
    alphas: [Rational; 3],
}

impl Coefficients {
    pub fn new(alpha1: Rational, alpha2: Rational, alpha3: Rational) -> Result<Self> {
        let alphas = [alpha1, alpha2, alpha3];
        if let Some(i) = alphas.iter().position(Rational::is_zero) {
            return Err(Error::InvalidCoefficients(format!("alpha{} is zero", i + 1)));
        }
        let sum: Rational = alphas.iter().sum();
        if !sum.is_zero() {
            return Err(Error::InvalidCoefficients(format!("alphas sum to {sum}, expected 0")));
        }
        Ok(Coefficients { alphas })
    }

    pub fn from_slice(alphas: &[Rational]) -> Result<Self> {
        match alphas {
            [a, b, c] => Self::new(a.clone(), b.clone(), c.clone()),
            _ => Err(Error::InvalidCoefficients(format!(
                "expected 3 alphas, got {}",
                alphas.len()
            ))),
        }
    }

    pub fn alphas(&self) -> &[Rational; 3] {
        &self.alphas
    }

    pub fn alpha(&self, i: usize) -> &Rational {
        &self.alphas[i]
    }
}

/// One exact check of a verification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// A verified decomposition: `α1 A1 + α2 A2 + α3 A3 = T` and `Ai = Si D Si^-1`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub spec: ModelSpectrum,
    pub coeffs: Coefficients,
    pub t: Matrix,
    pub a: [Matrix; 3],
    pub witnesses: [SimilarityWitness; 3],
    pub report: VerificationReport,
}

/// Untrusted, serializable form of a decomposition; [`verify_record`] checks it
/// from scratch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionRecord {
    pub n: usize,
    pub q: usize,
    pub lambdas: Vec<Rational>,
    pub alphas: Vec<Rational>,
    #[serde(rename = "T")]
    pub t: Matrix,
    #[serde(rename = "A1")]
    pub a1: Matrix,
    #[serde(rename = "A2")]
    pub a2: Matrix,
    #[serde(rename = "A3")]
    pub a3: Matrix,
    #[serde(rename = "S1")]
    pub s1: Matrix,
    #[serde(rename = "S2")]
    pub s2: Matrix,
    #[serde(rename = "S3")]
    pub s3: Matrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<VerificationReport>,
}

impl Decomposition {
    pub fn to_record(&self) -> DecompositionRecord {
        let [a1, a2, a3] = self.a.clone();
        let [s1, s2, s3] = self.witnesses.clone().map(SimilarityWitness::into_matrix);
        DecompositionRecord {
            n: self.spec.n(),
            q: self.spec.q(),
            lambdas: self.spec.lambdas().to_vec(),
            alphas: self.coeffs.alphas().to_vec(),
            t: self.t.clone(),
            a1,
            a2,
            a3,
            s1,
            s2,
            s3,
            report: Some(self.report.clone()),
        }
    }
}

/// Re-checks a decomposition exactly. Never fails; problems become report entries.
pub fn verify(d: &Decomposition) -> VerificationReport {
    verify_record(&d.to_record())
}

pub fn verify_record(r: &DecompositionRecord) -> VerificationReport {
    let mut report = VerificationReport::default();
    let spec = ModelSpectrum::new(r.n, r.q, r.lambdas.clone());
    match &spec {
        Ok(_) => report.push("spectrum", true, format!("n = {}, q = {}", r.n, r.q)),
        Err(e) => report.push("spectrum", false, e.to_string()),
    }
    let coeffs = Coefficients::from_slice(&r.alphas);
    match &coeffs {
        Ok(_) => report.push("coefficients", true, "nonzero, sum 0"),
        Err(e) => report.push("coefficients", false, e.to_string()),
    }
    match r.t.trace() {
        Ok(tr) if r.t.shape() == (r.n, r.n) && tr.is_zero() => report.push("trace", true, "trace(T) = 0"),
        Ok(tr) if r.t.shape() == (r.n, r.n) => report.push("trace", false, format!("trace(T) = {tr}")),
        _ => report.push(
            "trace",
            false,
            format!("T is {}x{}, expected {n}x{n}", r.t.rows(), r.t.cols(), n = r.n),
        ),
    }
    let a = [&r.a1, &r.a2, &r.a3];
    let combination = (r.alphas.len() == 3)
        .then(|| {
            a.iter()
                .zip(&r.alphas)
                .map(|(ai, alpha)| ai.scale(alpha))
                .try_fold(Matrix::zeros(r.t.rows(), r.t.cols()), |acc, x| acc.add(&x).ok())
        })
        .flatten();
    match combination {
        Some(sum) if sum == r.t => report.push("combination", true, "a1*A1 + a2*A2 + a3*A3 = T"),
        Some(sum) if sum.shape() == r.t.shape() => {
            let diff = sum.sub(&r.t).expect("same shape");
            let (i, j) = first_nonzero(&diff).expect("matrices differ");
            report.push(
                "combination",
                false,
                format!("a1*A1 + a2*A2 + a3*A3 differs from T at ({}, {})", i + 1, j + 1),
            )
        }
        _ => report.push("combination", false, "shapes or coefficient count do not match"),
    }
    let s = [&r.s1, &r.s2, &r.s3];
    for k in 0..3 {
        let name = format!("witness{}", k + 1);
        match &spec {
            Ok(spec) if witness_holds(a[k], spec, s[k]) => {
                report.push(name, true, format!("A{0} S{0} = S{0} D, S{0} invertible", k + 1))
            }
            Ok(_) => report.push(name, false, format!("S{0} does not conjugate D onto A{0}", k + 1)),
            Err(_) => report.push(name, false, "no valid spectrum to check against"),
        }
    }
    report
}

fn first_nonzero(m: &Matrix) -> Option<(usize, usize)> {
    (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| !m.get(i, j).is_zero())
}

/// Decomposes trace-zero `T` as `α1 A1 + α2 A2 + α3 A3` with each `Ai` similar
/// to `spec`'s model. The result is re-verified before it is returned.
pub fn decompose(t: &Matrix, spec: &ModelSpectrum, coeffs: &Coefficients) -> Result<Decomposition> {
    check_input(t, spec)?;
    let n = spec.n();
    let (a, s) = if t.is_zero() {
        let model = spec.model_matrix();
        (
            [model.clone(), model.clone(), model],
            [Matrix::identity(n), Matrix::identity(n), Matrix::identity(n)],
        )
    } else if n == 2 {
        decompose_2x2(t, spec, coeffs)?
    } else {
        decompose_blocks(t, spec, coeffs)?
    };
    finish(t, spec, coeffs, a, s)
}

/// The block construction on its own, for `n >= 3` or `q = n`; skips the
/// zero and `2 x 2` special cases of [`decompose`].
pub fn decompose_by_blocks(t: &Matrix, spec: &ModelSpectrum, coeffs: &Coefficients) -> Result<Decomposition> {
    check_input(t, spec)?;
    if t.is_zero() {
        return Err(Error::Precondition("block construction needs T != 0".into()));
    }
    if spec.n() == 2 && spec.q() == 1 {
        return Err(Error::Precondition("block construction needs n >= 3 or q = n".into()));
    }
    let (a, s) = decompose_blocks(t, spec, coeffs)?;
    finish(t, spec, coeffs, a, s)
}

fn check_input(t: &Matrix, spec: &ModelSpectrum) -> Result<()> {
    let n = spec.n();
    if t.shape() != (n, n) {
        return Err(Error::DimensionMismatch {
            op: "decompose",
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
    Ok(())
}

fn finish(
    t: &Matrix,
    spec: &ModelSpectrum,
    coeffs: &Coefficients,
    a: [Matrix; 3],
    s: [Matrix; 3],
) -> Result<Decomposition> {
    // checked by the verification pass below
    let witnesses = s.map(|m| SimilarityWitness::unchecked(m.primitive_columns()));
    let mut d = Decomposition {
        spec: spec.clone(),
        coeffs: coeffs.clone(),
        t: t.clone(),
        a,
        witnesses,
        report: VerificationReport::default(),
    };
    d.report = verify(&d);
    if !d.report.all_passed() {
        let failed: Vec<_> = d.report.failures().map(|c| c.name.as_str()).collect();
        return Err(Error::VerificationFailed(format!(
            "decomposition checks failed: {}",
            failed.join(", ")
        )));
    }
    Ok(d)
}

fn half() -> Rational {
    Rational::new(1, 2).expect("nonzero denominator")
}

/// `D = (d1 - d2) P + d2 I` with `P = diag(1, 0)`; `T / (d1 - d2)` is written
/// with three rank-one idempotents, each conjugated by an explicit eigenbasis.
fn decompose_2x2(t: &Matrix, spec: &ModelSpectrum, coeffs: &Coefficients) -> Result<([Matrix; 3], [Matrix; 3])> {
    let d = spec.diagonal();
    let gap = &d[0] - &d[1];
    let [a1, a2, _] = coeffs.alphas();
    let tp = t.scale(&gap.inv()?);
    let mu1 = (a1 - a2) * half();
    let pd = prescribe_diagonal(&tp, &[mu1.clone(), -mu1])?;
    let (gamma, delta) = (pd.conjugated.get(0, 1), pd.conjugated.get(1, 0));
    let mean = (a1 + a2) * half();
    let a = (gamma + &mean).checked_div(a1)?;
    let b = (delta + &mean).checked_div(a2)?;

    let one = Rational::one();
    let zero = Rational::zero();
    let h = half();
    let idempotents = [
        rows2([[one.clone(), a.clone()], [zero.clone(), zero.clone()]]),
        rows2([[zero.clone(), zero.clone()], [b.clone(), one.clone()]]),
        rows2([[h.clone(), h.clone()], [h.clone(), h]]),
    ];
    // Columns: eigenvector for 1, then for 0.
    let bases = [
        rows2([[one.clone(), -&a], [zero.clone(), one.clone()]]),
        rows2([[zero, one.clone()], [one.clone(), -&b]]),
        rows2([[one.clone(), one.clone()], [one.clone(), -one]]),
    ];
    let s_inv = pd.similarity.inverse()?;
    let low = Matrix::scalar(2, d[1].clone());
    let mut a_out = Vec::with_capacity(3);
    let mut s_out = Vec::with_capacity(3);
    for (p, basis) in idempotents.iter().zip(&bases) {
        let back = p.conjugate_with(&s_inv, &pd.similarity)?;
        a_out.push(back.scale(&gap).add(&low)?);
        s_out.push(s_inv.mul(basis)?);
    }
    Ok((to_array(a_out), to_array(s_out)))
}

fn rows2(r: [[Rational; 2]; 2]) -> Matrix {
    Matrix::from_rows(r.into_iter().map(Vec::from).collect()).expect("2x2")
}

fn to_array(v: Vec<Matrix>) -> [Matrix; 3] {
    v.try_into().expect("three matrices")
}

/// Blocks are split as `q + (n - q)`. After moving a nonscalar 2x2 principal
/// corner to the bottom right, `A1` is chosen with trailing block `T4 / α1`,
/// so `T - α1 A1` vanishes there; its leading block `S1` is given diagonal
/// `-α1 λi` and split along the diagonal between `A2` (lower) and `A3` (upper).
fn decompose_blocks(t: &Matrix, spec: &ModelSpectrum, coeffs: &Coefficients) -> Result<([Matrix; 3], [Matrix; 3])> {
    let (n, q) = (spec.n(), spec.q());
    let m = n - q;
    let [al1, al2, al3] = coeffs.alphas();
    let (i, j) = nonscalar_pair(t).ok_or(Error::ScalarMatrix { op: "decompose" })?;
    let perm = pair_to_back(n, i, j);
    let tp = t.permutation_conjugate(&perm)?;

    let (mut a1, mut w1) = if m == 0 {
        let g = Matrix::identity(n).add(&Matrix::unit(n, n, 0, 1))?;
        (spec.model_matrix().conjugate(&g)?, g)
    } else {
        let z = tp.extract_block(q..n, q..n)?.scale(&al1.inv()?);
        let c = complete_block_to_model(&z, spec)?;
        (c.a, c.witness.into_matrix())
    };
    let t1 = tp.extract_block(0..q, 0..q)?;
    let u = a1.extract_block(0..q, 0..q)?;
    if t1.sub(&u.scale(al1))?.is_scalar() {
        let r = perturbing_conjugator(&u)?;
        let r_full = pad(&r, m);
        a1 = a1.conjugate(&r_full)?;
        w1 = r_full.mul(&w1)?;
    }

    let rest = tp.sub(&a1.scale(al1))?;
    if m > 0 && !rest.extract_block(q..n, q..n)?.is_zero() {
        return Err(Error::VerificationFailed(
            "trailing block of T - a1*A1 is not zero".into(),
        ));
    }
    let s1 = rest.extract_block(0..q, 0..q)?;
    let lambda_sum = spec.lambda_sum();
    if s1.trace()? != -(al1 * &lambda_sum) || s1.is_scalar() {
        return Err(Error::VerificationFailed(
            "leading block S1 has wrong trace or is scalar".into(),
        ));
    }
    let targets: Vec<Rational> = spec.lambdas().iter().map(|l| -(al1 * l)).collect();
    let pd = prescribe_diagonal(&s1, &targets)?;
    let h = pad(&pd.similarity, m);
    let h_inv = h.inverse()?;
    let rest = rest.conjugate_with(&h, &h_inv)?;
    let a1 = a1.conjugate_with(&h, &h_inv)?;
    let w1 = h.mul(&w1)?;

    let s1 = rest.extract_block(0..q, 0..q)?;
    let mut l = Matrix::diagonal(spec.lambdas());
    let mut mm = l.clone();
    let (inv2, inv3) = (al2.inv()?, al3.inv()?);
    for r in 0..q {
        for c in 0..q {
            if r > c {
                l.set(r, c, s1.get(r, c) * &inv2);
            } else if r < c {
                mm.set(r, c, s1.get(r, c) * &inv3);
            }
        }
    }
    let (a2, a3) = if m == 0 {
        (l, mm)
    } else {
        let s2 = rest.extract_block(0..q, q..n)?.scale(&inv3);
        let s3 = rest.extract_block(q..n, 0..q)?.scale(&inv2);
        let zero = Matrix::zeros(m, m);
        (
            Matrix::from_blocks([[Block::Of(&l), Block::Zero], [Block::Of(&s3), Block::Of(&zero)]])?,
            Matrix::from_blocks([[Block::Of(&mm), Block::Of(&s2)], [Block::Zero, Block::Of(&zero)]])?,
        )
    };
    if a2.scale(al2).add(&a3.scale(al3))? != rest {
        return Err(Error::VerificationFailed("T - a1*A1 != a2*A2 + a3*A3 blockwise".into()));
    }
    let w2 = lower_block_eigenbasis(&a2, spec)?;
    let w3 = upper_block_eigenbasis(&a3, spec)?;

    // G = H P maps the original basis to the working one.
    let g = h.mul(&perm.matrix())?;
    let g_inv = perm.inverse().matrix().mul(&h_inv)?;
    let mut a_out = Vec::with_capacity(3);
    let mut s_out = Vec::with_capacity(3);
    for (ai, wi) in [(a1, w1), (a2, w2), (a3, w3)] {
        a_out.push(ai.conjugate_with(&g_inv, &g)?);
        s_out.push(g_inv.mul(&wi)?);
    }
    Ok((to_array(a_out), to_array(s_out)))
}

/// `diag(m, I_extra)`.
fn pad(m: &Matrix, extra: usize) -> Matrix {
    if extra == 0 {
        m.clone()
    } else {
        m.direct_sum(&Matrix::identity(extra))
    }
}

/// Outcome of the two-term rank argument for `T = I - n E11`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub n: usize,
    pub q: usize,
    /// `rank(I - α1 A1)`, at least `n - 1`.
    pub rank_first: usize,
    /// `rank(α2 A2 + n E)`, at most `q + 1`.
    pub rank_second: usize,
    pub first_bound_holds: bool,
    pub second_bound_holds: bool,
    /// `q + 1 < n - 1`.
    pub gap_holds: bool,
    /// `α1 A1 + α2 A2 != I - n E`, computed directly.
    pub combination_differs: bool,
}

impl ObstructionReport {
    pub fn holds(&self) -> bool {
        self.first_bound_holds && self.second_bound_holds && self.gap_holds && self.combination_differs
    }
}

/// If `α1 A1 + α2 A2 = I - n E` then `I - α1 A1 = α2 A2 + n E`, whose ranks
/// are forced apart: `I - α1 A1` has at most one zero eigenvalue, while
/// `α2 A2 + n E` is a rank-one update of a rank-`q` matrix.
pub fn two_term_obstruction(
    spec: &ModelSpectrum,
    alpha1: &Rational,
    alpha2: &Rational,
    a1: &Matrix,
    a2: &Matrix,
) -> Result<ObstructionReport> {
    let (n, q) = (spec.n(), spec.q());
    if n < 6 || q + 2 >= n {
        return Err(Error::Precondition(format!(
            "obstruction needs n >= 6 and q < n - 2, got n = {n}, q = {q}"
        )));
    }
    for (k, a) in [a1, a2].into_iter().enumerate() {
        if !crate::constructions::is_similar_to_model(a, spec) {
            return Err(Error::NotSimilarToModel(format!(
                "A{} is not similar to the model",
                k + 1
            )));
        }
    }
    let nn = Rational::from_integer(n as i64);
    let e = Matrix::unit(n, n, 0, 0);
    let eye = Matrix::identity(n);
    let t = eye.sub(&e.scale(&nn))?;
    let rank_first = eye.sub(&a1.scale(alpha1))?.rank();
    let rank_second = a2.scale(alpha2).add(&e.scale(&nn))?.rank();
    let combination_differs = a1.scale(alpha1).add(&a2.scale(alpha2))? != t;
    Ok(ObstructionReport {
        n,
        q,
        rank_first,
        rank_second,
        first_bound_holds: rank_first + 1 >= n,
        second_bound_holds: rank_second <= q + 1,
        gap_holds: q + 2 < n,
        combination_differs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x)).collect()
    }

    fn coeffs(a: i64, b: i64, c: i64) -> Coefficients {
        Coefficients::new(a.into(), b.into(), c.into()).unwrap()
    }

    fn spec(n: usize, l: &[i64]) -> ModelSpectrum {
        ModelSpectrum::from_lambdas(n, ints(l)).unwrap()
    }

    #[test]
    fn coefficient_validation() {
        assert!(Coefficients::new(1.into(), 2.into(), (-3).into()).is_ok());
        assert!(Coefficients::new(1.into(), 1.into(), 1.into()).is_err());
        assert!(Coefficients::new(0.into(), 1.into(), (-1).into()).is_err());
        assert!(Coefficients::from_slice(&ints(&[1, -1])).is_err());
    }

    #[test]
    fn zero_matrix_gives_model_three_times() {
        let sp = spec(4, &[1, 2, 3]);
        let d = decompose(&Matrix::zeros(4, 4), &sp, &coeffs(1, 2, -3)).unwrap();
        for a in &d.a {
            assert_eq!(*a, sp.model_matrix());
        }
        assert!(d.report.all_passed());
    }

    #[test]
    fn two_by_two_hand_example() {
        let t = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        let d = decompose(&t, &spec(2, &[1]), &coeffs(1, 1, -2)).unwrap();
        assert_eq!(d.a[0], Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(d.a[1], Matrix::from_i64(&[&[0, 0], &[2, 1]]));
        let h = half();
        assert_eq!(
            d.a[2],
            Matrix::scalar(2, h.clone())
                .add(&Matrix::from_rows(vec![vec![Rational::zero(), h.clone()], vec![h, Rational::zero()]]).unwrap())
                .unwrap()
        );
        for a in &d.a {
            assert_eq!(a.mul(a).unwrap(), *a);
        }
    }

    #[test]
    fn two_by_two_full_rank_spectrum() {
        let t = Matrix::from_i64(&[&[3, -1], &[4, -3]]);
        let sp = ModelSpectrum::from_lambdas(2, vec![Rational::new(1, 2).unwrap(), (-2).into()]).unwrap();
        let d = decompose(&t, &sp, &coeffs(2, -5, 3)).unwrap();
        assert!(d.report.all_passed());
        let blocks = decompose_by_blocks(&t, &sp, &coeffs(2, -5, 3)).unwrap();
        assert!(blocks.report.all_passed());
    }

    #[test]
    fn sl5_example() {
        let t = Matrix::from_i64(&[
            &[1, 2, 0, -1, 3],
            &[0, -2, 1, 1, 0],
            &[4, 0, 3, 0, -1],
            &[2, 1, 0, 0, 5],
            &[-1, 0, 2, 1, -2],
        ]);
        let d = decompose(&t, &spec(5, &[1, 2, 3]), &coeffs(1, 2, -3)).unwrap();
        assert!(d.report.all_passed());
        assert_eq!(verify(&d).checks.len(), 7);
    }

    #[test]
    fn diagonal_and_full_rank_cases() {
        let t = Matrix::diagonal(&ints(&[1, -1, 0, 2, -2, 0]));
        for sp in [
            spec(6, &[1, 2, 3]),
            spec(6, &[1, -1, 2, 5]),
            spec(6, &[1, 2, 3, 4, 5, 6]),
        ] {
            assert!(decompose(&t, &sp, &coeffs(1, 1, -2)).unwrap().report.all_passed());
        }
        let t = Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        for sp in [spec(3, &[1, 2]), spec(3, &[1, 2, 3])] {
            assert!(decompose(&t, &sp, &coeffs(-1, 3, -2)).unwrap().report.all_passed());
        }
    }

    #[test]
    fn scalar_leading_block_triggers_perturbation() {
        // Chosen so that T1 - α1 U' is scalar without the perturbation.
        let sp = spec(3, &[1, 2, 3]);
        let t = sp
            .model_matrix()
            .conjugate(&Matrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]))
            .unwrap();
        let t = t.sub(&Matrix::scalar(3, 2.into())).unwrap();
        assert!(decompose(&t, &sp, &coeffs(1, 1, -2)).unwrap().report.all_passed());
    }

    #[test]
    fn rejects_bad_input() {
        let sp = spec(2, &[1]);
        let err = decompose(&Matrix::from_i64(&[&[1, 0], &[0, 2]]), &sp, &coeffs(1, 1, -2)).unwrap_err();
        assert_eq!(err, Error::NonzeroTrace(3.into()));
        assert!(decompose(&Matrix::zeros(3, 3), &sp, &coeffs(1, 1, -2)).is_err());
        assert!(decompose_by_blocks(&Matrix::from_i64(&[&[0, 1], &[0, 0]]), &sp, &coeffs(1, 1, -2)).is_err());
    }

    #[test]
    fn tampering_is_reported() {
        let t = Matrix::from_i64(&[&[0, 1, 2], &[3, 0, 1], &[1, 1, 0]]);
        let d = decompose(&t, &spec(3, &[1, 2]), &coeffs(1, 2, -3)).unwrap();
        let mut r = d.to_record();
        let bumped = r.a1.get(0, 0) + &Rational::one();
        r.a1.set(0, 0, bumped);
        let report = verify_record(&r);
        let failed: Vec<_> = report.failures().map(|c| c.name.as_str()).collect();
        assert_eq!(failed, ["combination", "witness1"]);

        let mut r = d.to_record();
        r.s2 = Matrix::identity(3);
        let failed: Vec<_> = verify_record(&r).failures().map(|c| c.name.clone()).collect();
        assert_eq!(failed, ["witness2"]);

        let mut r = d.to_record();
        r.q = 1;
        assert!(!verify_record(&r).all_passed());
    }

    #[test]
    fn obstruction_hand_example() {
        let sp = spec(6, &[1, 2, 3]);
        let d = sp.model_matrix();
        let r = two_term_obstruction(&sp, &1.into(), &1.into(), &d, &d).unwrap();
        assert_eq!(r.rank_first, 5);
        assert!(r.rank_second <= 4);
        assert!(r.holds());
        let r = two_term_obstruction(&sp, &1.into(), &0.into(), &d, &d).unwrap();
        assert_eq!(r.rank_second, 1);
        assert!(r.holds());
    }

    #[test]
    fn obstruction_parameter_range() {
        let sp = spec(6, &[1, 2, 3, 4]);
        let d = sp.model_matrix();
        assert!(two_term_obstruction(&sp, &1.into(), &1.into(), &d, &d).is_err());
        let sp = spec(5, &[1, 2, 3]);
        let d = sp.model_matrix();
        assert!(two_term_obstruction(&sp, &1.into(), &1.into(), &d, &d).is_err());
        let sp = spec(6, &[1, 2, 3]);
        assert!(matches!(
            two_term_obstruction(&sp, &1.into(), &1.into(), &Matrix::identity(6), &sp.model_matrix()),
            Err(Error::NotSimilarToModel(_))
        ));
    }

    fn small() -> impl Strategy<Value = i64> {
        -4i64..=4
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn decompose_is_total_and_covariant(
            n in 2usize..=5,
            extra in 0usize..=3,
            entries in proptest::collection::vec(small(), 25),
            g_entries in proptest::collection::vec(small(), 25),
            a1 in 1i64..=3, a2 in -3i64..=-1,
        ) {
            let q = n.div_ceil(2) + extra.min(n / 2);
            let lambdas: Vec<Rational> = (1..=q as i64).map(Rational::from_integer).collect();
            let sp = ModelSpectrum::from_lambdas(n, lambdas).unwrap();
            prop_assume!(a1 + a2 != 0);
            let c = coeffs(a1, a2, -a1 - a2);
            let mut t = Matrix::new(n, n, entries[..n * n].iter().map(|&x| Rational::from_integer(x)).collect()).unwrap();
            let tr = t.trace().unwrap();
            let last = t.get(n - 1, n - 1) - &tr;
            t.set(n - 1, n - 1, last);
            let d = decompose(&t, &sp, &c).unwrap();
            prop_assert!(verify(&d).all_passed());

            let mut g = Matrix::new(n, n, g_entries[..n * n].iter().map(|&x| Rational::from_integer(x)).collect()).unwrap();
            for i in 0..n {
                let v = g.get(i, i) + &Rational::from_integer(9);
                g.set(i, i, v);
            }
            prop_assume!(g.rank() == n);
            let moved = decompose(&t.conjugate(&g).unwrap(), &sp, &c).unwrap();
            prop_assert!(verify(&moved).all_passed());
            prop_assert_eq!(moved.spec, sp);
        }
    }
}
