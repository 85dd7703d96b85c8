//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! All checks are exact. Every instance is generated from a fixed seed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use waring_core::constructions::{
    complete_block_to_model, factor_nonscalar_square, factor_rectangular, is_similar_to_model, perturbing_conjugator,
    prescribe_diagonal, witness_holds,
};
use waring_core::io::verify_document;
use waring_core::{
    decompose, decompose_by_blocks, random, select_prime, two_term_obstruction, verify, waring_for_polynomial, Block,
    Coefficients, Error, Matrix, ModelSpectrum, NcPolynomial, Rational,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rng(stream: u64, index: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(0x5eed_0000 + stream);
    r.set_stream(index);
    r
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_secs: u64, what: &str) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_secs as f64, || {
        format!("{what} took {:.1}s, limit {limit_secs}s", elapsed.as_secs_f64())
    })
}

/// Runs `count` indexed cases in parallel and reports the first failure.
fn all_cases(count: u64, case: impl Fn(u64) -> Result<(), String> + Sync) -> Result<(), String> {
    (0..count)
        .into_par_iter()
        .map(|i| case(i).map_err(|e| format!("case {i}: {e}")))
        .find_first(Result::is_err)
        .unwrap_or(Ok(()))
}

fn decomposition_round_trip() -> Outcome {
    let start = Instant::now();
    all_cases(500, |i| {
        let mut r = rng(1, i);
        let n = r.gen_range(2..=12);
        let spec = random::spectrum(&mut r, n, 4);
        let coeffs = random::coefficients(&mut r, 4);
        let t = random::trace_zero(&mut r, n, 5);
        let d = decompose(&t, &spec, &coeffs).map_err(|e| format!("n = {n}: {e}"))?;
        let text = serde_json::to_string(&d.to_record()).map_err(|e| e.to_string())?;
        let report = verify_document(&text).map_err(|e| e.to_string())?;
        ensure(report.all_passed(), || {
            format!("n = {n}: {:?}", report.failures().collect::<Vec<_>>())
        })?;
        let combo = d.a[0]
            .scale(coeffs.alpha(0))
            .add(&d.a[1].scale(coeffs.alpha(1)))
            .and_then(|s| s.add(&d.a[2].scale(coeffs.alpha(2))))
            .map_err(|e| e.to_string())?;
        ensure(combo == t, || "combination differs from T".into())?;
        let model = spec.model_matrix();
        for (a, w) in d.a.iter().zip(&d.witnesses) {
            let rebuilt = model.conjugate(w.matrix()).map_err(|e| e.to_string())?;
            ensure(rebuilt == *a, || "A != S D S^-1".into())?;
        }
        Ok(())
    })?;
    let elapsed = start.elapsed();
    within(elapsed, 60, "500 decompositions")?;
    Ok(format!("500 instances, n in [2, 12], {:.1}s", elapsed.as_secs_f64()))
}

/// Nonscalar `k x k` matrices of several kinds, including the split cases.
fn varied_nonscalar(r: &mut ChaCha8Rng, k: usize) -> Matrix {
    loop {
        let m = match r.gen_range(0..4) {
            0 => random::matrix(r, k, k, 4),
            1 => {
                let a = random::rational(r, 3);
                let b = random::rational(r, 3);
                let split = r.gen_range(1..k);
                let diag: Vec<Rational> = (0..k).map(|i| if i < split { a.clone() } else { b.clone() }).collect();
                Matrix::diagonal(&diag)
            }
            2 => {
                let u = random::matrix(r, k, 1, 2);
                let v = random::matrix(r, 1, k, 2);
                Matrix::scalar(k, random::rational(r, 3))
                    .add(&u.mul(&v).expect("shapes"))
                    .expect("shapes")
            }
            _ => Matrix::diagonal(&(0..k).map(|_| random::rational(r, 2)).collect::<Vec<_>>()),
        };
        if !m.is_scalar() {
            return m;
        }
    }
}

/// Targets summing to `total`, often with repeats.
fn varied_targets(r: &mut ChaCha8Rng, k: usize, total: &Rational) -> Vec<Rational> {
    if r.gen_bool(0.5) {
        random::targets_with_sum(r, k, total, 4)
    } else {
        let pool = [random::rational(r, 3), random::rational(r, 3)];
        let mut mus: Vec<Rational> = (0..k - 1).map(|_| pool[r.gen_range(0..2)].clone()).collect();
        let partial: Rational = mus.iter().sum();
        mus.insert(r.gen_range(0..k), total - partial);
        mus
    }
}

fn check_prescribed(b: &Matrix, mus: &[Rational]) -> Result<(), String> {
    let pd = prescribe_diagonal(b, mus).map_err(|e| e.to_string())?;
    ensure(pd.conjugated.diagonal_entries() == mus, || {
        "diagonal differs from targets".into()
    })?;
    ensure(pd.similarity.rank() == b.rows(), || "similarity is singular".into())?;
    ensure(b.conjugate(&pd.similarity).ok() == Some(pd.conjugated.clone()), || {
        "C != S B S^-1".into()
    })?;
    ensure(pd.conjugated.trace().ok() == b.trace().ok(), || "trace changed".into())
}

fn construction_suite() -> Outcome {
    let not_diagonal = |m: &Matrix| !m.is_diagonal();
    all_cases(1000, |i| {
        let mut r = rng(20, i);
        let k = r.gen_range(2..=8);
        let z = varied_nonscalar(&mut r, k);
        let f = factor_nonscalar_square(&z).map_err(|e| e.to_string())?;
        ensure(f.w.mul(&f.x).ok() == Some(z.clone()), || "W X != Z".into())?;
        ensure(f.x.rank() == k, || "X singular".into())?;
        ensure(not_diagonal(&f.x.mul(&f.w).expect("square")), || "X W diagonal".into())
    })
    .map_err(|e| format!("square factor: {e}"))?;

    all_cases(1000, |i| {
        let mut r = rng(21, i);
        let k = r.gen_range(1..=7);
        let l = r.gen_range(k + 1..=8);
        let z = if r.gen_bool(0.2) {
            Matrix::zeros(k, k)
        } else {
            random::matrix(&mut r, k, k, 4)
        };
        let f = factor_rectangular(&z, l).map_err(|e| e.to_string())?;
        ensure(f.w.mul(&f.x).ok() == Some(z.clone()), || "W X != Z".into())?;
        ensure(f.x.extract_block(0..k, 0..k).ok() == Some(Matrix::identity(k)), || {
            "X top is not I".into()
        })?;
        ensure(f.x.extract_block(k..l, 0..k).map(|b| b.is_zero()) == Ok(true), || {
            "X bottom is not 0".into()
        })?;
        ensure(f.w.extract_block(0..k, 0..k).ok() == Some(z.clone()), || {
            "W does not start with Z".into()
        })?;
        ensure(f.w.extract_block(0..k, k..l).map(|y| !y.is_zero()) == Ok(true), || {
            "Y is zero".into()
        })?;
        ensure(not_diagonal(&f.x.mul(&f.w).expect("shapes")), || "X W diagonal".into())
    })
    .map_err(|e| format!("rectangular factor: {e}"))?;

    all_cases(1000, |i| {
        let mut r = rng(22, i);
        let n: usize = r.gen_range(3..=8);
        let q = r.gen_range(n.div_ceil(2)..n);
        let spec = ModelSpectrum::new(n, q, random::distinct_nonzero(&mut r, q, 4)).expect("valid");
        let m = n - q;
        let z = if m == q {
            varied_nonscalar(&mut r, m)
        } else {
            random::matrix(&mut r, m, m, 4)
        };
        let c = complete_block_to_model(&z, &spec).map_err(|e| format!("n = {n}, q = {q}: {e}"))?;
        let assembled = Matrix::from_blocks([[Block::Of(&c.u), Block::Of(&c.v)], [Block::Of(&c.w), Block::Of(&z)]])
            .map_err(|e| e.to_string())?;
        ensure(assembled == c.a, || "A != [[U, V], [W, Z]]".into())?;
        ensure(!c.u.is_scalar(), || "U scalar".into())?;
        ensure(is_similar_to_model(&c.a, &spec), || "A not similar to the model".into())?;
        ensure(witness_holds(&c.a, &spec, c.witness.matrix()), || {
            "witness fails".into()
        })?;
        let eye_q = Matrix::identity(q);
        let eye_m = Matrix::identity(m);
        let e = Matrix::from_blocks([[Block::Of(&eye_q), Block::Of(&c.x)], [Block::Zero, Block::Of(&eye_m)]])
            .map_err(|e| e.to_string())?;
        let zero = Matrix::zeros(m, m);
        let target = Matrix::from_blocks([
            [Block::Of(&spec.leading_block()), Block::Zero],
            [Block::Of(&c.w), Block::Of(&zero)],
        ])
        .map_err(|e| e.to_string())?;
        ensure(c.a.conjugate(&e).ok() == Some(target), || {
            "E A E^-1 != [[D_q, 0], [W, 0]]".into()
        })
    })
    .map_err(|e| format!("block completion: {e}"))?;

    all_cases(1000, |i| {
        let mut r = rng(23, i);
        let k = r.gen_range(2..=8);
        let t = varied_nonscalar(&mut r, k);
        let rr = perturbing_conjugator(&t).map_err(|e| e.to_string())?;
        ensure(rr.rank() == k, || "R singular".into())?;
        let diff = t.conjugate(&rr).and_then(|c| c.sub(&t)).map_err(|e| e.to_string())?;
        ensure(not_diagonal(&diff), || "R T R^-1 - T diagonal".into())
    })
    .map_err(|e| format!("perturbing conjugator: {e}"))?;

    all_cases(1000, |i| {
        let mut r = rng(24, i);
        let k = r.gen_range(2..=8);
        let b = varied_nonscalar(&mut r, k);
        let mus = varied_targets(&mut r, k, &b.trace().expect("square"));
        check_prescribed(&b, &mus)
    })
    .map_err(|e| format!("prescribed diagonal: {e}"))?;
    Ok("5 constructions x 1000 cases, sizes up to 8".into())
}

fn prescribed_diagonal_exactness() -> Outcome {
    all_cases(1000, |i| {
        let mut r = rng(3, i);
        let k = r.gen_range(2..=10);
        let b = varied_nonscalar(&mut r, k);
        let mus = varied_targets(&mut r, k, &b.trace().expect("square"));
        check_prescribed(&b, &mus).map_err(|e| format!("k = {k}: {e}"))
    })?;
    Ok("1000 cases, k in [2, 10]".into())
}

fn two_by_two_closed_form() -> Outcome {
    let cross_checked = std::sync::atomic::AtomicUsize::new(0);
    all_cases(200, |i| {
        let mut r = rng(4, i);
        let t = loop {
            let t = random::trace_zero(&mut r, 2, 5);
            if !t.is_zero() {
                break t;
            }
        };
        let spec = random::spectrum(&mut r, 2, 4);
        let coeffs = random::coefficients(&mut r, 4);
        let d = decompose(&t, &spec, &coeffs).map_err(|e| e.to_string())?;
        ensure(verify(&d).all_passed(), || "verification failed".into())?;
        let diag = spec.diagonal();
        let (sum, product) = (&diag[0] + &diag[1], &diag[0] * &diag[1]);
        for a in &d.a {
            // 2x2 oracle: similar to diag(d1, d2) with d1 != d2 iff trace and determinant match
            let det = a.get(0, 0) * a.get(1, 1) - a.get(0, 1) * a.get(1, 0);
            ensure(a.trace().ok() == Some(sum.clone()) && det == product, || {
                "term not similar to the model".into()
            })?;
        }
        if spec.q() == 2 {
            let g = decompose_by_blocks(&t, &spec, &coeffs).map_err(|e| format!("block path: {e}"))?;
            ensure(verify(&g).all_passed(), || "block path failed verification".into())?;
            ensure(g.spec == d.spec && g.t == d.t, || {
                "paths disagree on the instance".into()
            })?;
            cross_checked.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        }
        Ok(())
    })?;
    Ok(format!(
        "200 instances; {} with q = 2 also solved by the block path",
        cross_checked.into_inner()
    ))
}

fn prime_selection() -> Outcome {
    const LIMIT: usize = 1_000_000;
    let start = Instant::now();
    // independent oracle: sieve, and the largest prime <= n for each n
    let mut composite = vec![false; LIMIT + 1];
    let mut largest = vec![0usize; LIMIT + 1];
    for m in 2..=LIMIT {
        if !composite[m] {
            for c in (m * m..=LIMIT).step_by(m) {
                composite[c] = true;
            }
        }
        largest[m] = if composite[m] { largest[m - 1] } else { m };
    }
    let bad = (2..=LIMIT).into_par_iter().find_first(|&n| match select_prime(n) {
        Ok(c) => c.n != n || composite[c.p] || c.p > n || 2 * c.p < n + 2 || c.p != largest[n],
        Err(_) => true,
    });
    if let Some(n) = bad {
        return Err(format!("n = {n}: {:?}", select_prime(n)));
    }
    let elapsed = start.elapsed();
    within(elapsed, 30, "prime selection")?;
    Ok(format!("2 <= n <= {LIMIT}, {:.1}s", elapsed.as_secs_f64()))
}

fn polynomial_end_to_end() -> Outcome {
    const BUDGET: u64 = 10_000;
    const SEED: u64 = 20_240_601;
    let polys = ["X1", "X1*X2 - X2*X1", "X1*X1*X2 - X2*X1*X1"];
    for text in polys {
        let f: NcPolynomial = text.parse().map_err(|e: Error| e.to_string())?;
        for n in 2..=8usize {
            let mut r = rng(6, n as u64);
            let t = random::trace_zero(&mut r, n, 4);
            let coeffs = random::coefficients(&mut r, 3);
            let res =
                waring_for_polynomial(&f, n, &t, &coeffs, BUDGET, SEED).map_err(|e| format!("{text}, n = {n}: {e}"))?;
            ensure(verify(&res.decomposition).all_passed(), || {
                format!("{text}, n = {n}: verification failed")
            })?;
            for (k, (tuple, a)) in res.tuples.iter().zip(&res.decomposition.a).enumerate() {
                let value = f.evaluate(tuple).map_err(|e| e.to_string())?;
                ensure(value == *a, || {
                    format!("{text}, n = {n}: f(tuple{}) != A{}", k + 1, k + 1)
                })?;
            }
        }
    }
    Ok(format!("3 polynomials x n in [2, 8], budget {BUDGET}, seed {SEED}"))
}

fn two_term_obstruction_check() -> Outcome {
    let spec = ModelSpectrum::from_lambdas(6, vec![1.into(), 2.into(), 3.into()]).expect("valid");
    let model = spec.model_matrix();
    all_cases(1000, |i| {
        let mut r = rng(7, i);
        let a1 = model
            .conjugate(&random::invertible(&mut r, 6, 3))
            .map_err(|e| e.to_string())?;
        let a2 = model
            .conjugate(&random::invertible(&mut r, 6, 3))
            .map_err(|e| e.to_string())?;
        let (al1, al2) = (random::nonzero_rational(&mut r, 5), random::nonzero_rational(&mut r, 5));
        let rep = two_term_obstruction(&spec, &al1, &al2, &a1, &a2).map_err(|e| e.to_string())?;
        ensure(rep.rank_first >= 5, || format!("rank(I - a1 A1) = {}", rep.rank_first))?;
        ensure(rep.rank_second <= 4, || {
            format!("rank(a2 A2 + 6E) = {}", rep.rank_second)
        })?;
        ensure(rep.holds(), || "combination equals I - 6E".into())
    })?;
    Ok("1000 random pairs, n = 6, q = 3".into())
}

fn degenerate_inputs() -> Outcome {
    let spec = ModelSpectrum::from_lambdas(3, vec![1.into(), (-2).into()]).expect("valid");
    let coeffs = Coefficients::new(1.into(), 2.into(), (-3).into()).expect("valid");
    let d = decompose(&Matrix::zeros(3, 3), &spec, &coeffs).map_err(|e| e.to_string())?;
    ensure(d.a.iter().all(|a| *a == spec.model_matrix()), || {
        "T = 0 did not give the model".into()
    })?;

    let t = Matrix::from_i64(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 4]]);
    match decompose(&t, &spec, &coeffs) {
        Err(Error::NonzeroTrace(tr)) if tr == Rational::from_integer(7) => {}
        other => return Err(format!("nonzero trace: {other:?}")),
    }
    match prescribe_diagonal(&Matrix::scalar(3, 5.into()), &[5.into(), 5.into(), 5.into()]) {
        Err(Error::ScalarMatrix { .. }) => {}
        other => return Err(format!("scalar B: {other:?}")),
    }
    for (n, q) in [(4usize, 1usize), (5, 2), (4, 5), (1, 1)] {
        let lambdas = (1..=q as i64).map(Rational::from_integer).collect();
        ensure(
            matches!(ModelSpectrum::new(n, q, lambdas), Err(Error::InvalidSpectrum(_))),
            || format!("q = {q} accepted for n = {n}"),
        )?;
    }
    Ok("zero T, nonzero trace, scalar B, q out of range".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("decomposition round trip", decomposition_round_trip),
        ("construction suite", construction_suite),
        ("prescribed diagonal exactness", prescribed_diagonal_exactness),
        ("2x2 closed form", two_by_two_closed_form),
        ("prime selection", prime_selection),
        ("polynomial end to end", polynomial_end_to_end),
        ("two-term obstruction", two_term_obstruction_check),
        ("degenerate inputs", degenerate_inputs),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
