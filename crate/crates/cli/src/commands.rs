//! One function per subcommand. JSON results go to `--out` or stdout; the
//! PASS/FAIL summary goes to stderr, except for `verify` where it is the output.

use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use waring_core::constructions::{complete_block_to_model, prescribe_diagonal, witness_holds};
use waring_core::io::verify_document;
use waring_core::pipeline::rational_spectrum;
use waring_core::{
    decompose, random, search_diagonal_witness, select_prime, two_term_obstruction, waring_for_polynomial, Check,
    Coefficients, Error, Matrix, ModelSpectrum, ObstructionReport, Rational, VerificationReport,
};

use crate::args::{Cli, Command, ObstructionArgs};
use crate::failure::Failure;
use crate::files::{parse_scalars, polynomial, read_json, read_matrix, read_text, write_json};

type Outcome = Result<(), Failure>;

pub fn run(cli: Cli) -> Outcome {
    eprintln!(
        "config: {}",
        serde_json::to_string(&cli).expect("configuration serializes")
    );
    let ctx = Context {
        seed: cli.seed,
        verbose: cli.verbose,
    };
    match cli.command {
        Command::Decompose {
            input,
            lambdas,
            alphas,
            q,
            out,
        } => ctx.decompose(&input, &lambdas, &alphas, q, out.out),
        Command::Verify { input } => ctx.verify(&input),
        Command::Obstruction(args) => ctx.obstruction(args),
        Command::FindPrime { n } => {
            println!("{}", select_prime(n)?.p);
            Ok(())
        }
        Command::PolyEval { poly, args, out } => {
            let f = polynomial(poly.f.as_deref(), poly.f_file.as_ref())?;
            let args: Vec<Matrix> = read_json(&args)?;
            eprintln!("f = {f}");
            write_json(&f.evaluate(&args)?, out.out.as_ref())?;
            Ok(())
        }
        Command::SearchWitness { poly, p, budget, out } => {
            let f = polynomial(poly.f.as_deref(), poly.f_file.as_ref())?;
            ctx.search_witness(&f, p, budget, out.out)
        }
        Command::WaringPoly {
            poly,
            n,
            input,
            alphas,
            budget,
            out,
        } => {
            let f = polynomial(poly.f.as_deref(), poly.f_file.as_ref())?;
            let t = read_matrix(&input)?;
            let coeffs = Coefficients::from_slice(&parse_scalars(&alphas)?)?;
            let res = waring_for_polynomial(&f, n, &t, &coeffs, budget, ctx.seed)?;
            eprintln!("f = {f}, p = {}, witness attempt {}", res.prime.p, res.witness.attempt);
            let text = write_json(&res.to_record(), out.out.as_ref())?;
            ctx.summarize(&verify_document(&text)?, false)
        }
        Command::PrescribeDiagonal { input, mus, out } => ctx.prescribe(&input, &mus, out.out),
        Command::CompleteBlock { input, n, lambdas, out } => ctx.complete_block(&input, n, &lambdas, out.out),
    }
}

struct Context {
    seed: u64,
    verbose: u8,
}

impl Context {
    fn decompose(&self, input: &Path, lambdas: &str, alphas: &str, q: Option<usize>, out: Option<PathBuf>) -> Outcome {
        let t = read_matrix(input)?;
        let lambdas = parse_scalars(lambdas)?;
        check_q(q, lambdas.len())?;
        let spec = ModelSpectrum::from_lambdas(t.rows(), lambdas)?;
        let coeffs = Coefficients::from_slice(&parse_scalars(alphas)?)?;
        let d = decompose(&t, &spec, &coeffs)?;
        // The summary comes from re-reading what was written, not from `d`.
        let text = write_json(&d.to_record(), out.as_ref())?;
        self.summarize(&verify_document(&text)?, false)
    }

    fn verify(&self, input: &Path) -> Outcome {
        let report = verify_document(&read_text(input)?)?;
        self.summarize(&report, true)
    }

    fn obstruction(&self, args: ObstructionArgs) -> Outcome {
        let ObstructionArgs {
            n,
            q,
            lambdas,
            alphas,
            a1,
            a2,
            trials,
            out,
        } = args;
        let lambdas = match (lambdas.as_deref(), q) {
            (Some(text), q) => {
                let l = parse_scalars(text)?;
                check_q(q, l.len())?;
                l
            }
            (None, Some(q)) => (1..=q as i64).map(Rational::from_integer).collect(),
            (None, None) => return Err(Failure::Usage("give --q or --lambdas".into())),
        };
        let spec = ModelSpectrum::from_lambdas(n, lambdas)?;
        let fixed_alphas = match alphas.as_deref() {
            Some(text) => match parse_scalars(text)?.as_slice() {
                [a1, a2] if !a1.is_zero() && !a2.is_zero() => Some((a1.clone(), a2.clone())),
                _ => return Err(Error::InvalidCoefficients("--alphas needs two nonzero values".into()).into()),
            },
            None => None,
        };
        let given = match a1.zip(a2) {
            Some((p1, p2)) => Some((read_matrix(&p1)?, read_matrix(&p2)?)),
            None => None,
        };
        if trials == 0 && given.is_none() {
            return Err(Failure::Usage("--trials must be positive".into()));
        }

        let mut cases = Vec::new();
        for i in 0..if given.is_some() { 1 } else { trials } {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            rng.set_stream(i);
            let (a1, a2) = match &given {
                Some(pair) => pair.clone(),
                None => {
                    let model = spec.model_matrix();
                    let a1 = model.conjugate(&random::invertible(&mut rng, n, 3))?;
                    (a1, model.conjugate(&random::invertible(&mut rng, n, 3))?)
                }
            };
            let (al1, al2) = fixed_alphas.clone().unwrap_or_else(|| {
                (
                    random::nonzero_rational(&mut rng, 5),
                    random::nonzero_rational(&mut rng, 5),
                )
            });
            let report = two_term_obstruction(&spec, &al1, &al2, &a1, &a2)?;
            cases.push(ObstructionCase {
                alpha1: al1,
                alpha2: al2,
                report,
            });
        }
        write_json(
            &json!({ "n": n, "q": spec.q(), "lambdas": spec.lambdas(), "seed": self.seed, "cases": cases }),
            out.out.as_ref(),
        )?;

        let count = |pred: fn(&ObstructionReport) -> bool| cases.iter().filter(|c| pred(&c.report)).count();
        let total = cases.len();
        let tally = |name: &str, hits: usize| Check {
            name: name.into(),
            passed: hits == total,
            detail: format!("{hits}/{total} cases"),
        };
        let report = VerificationReport {
            checks: vec![
                tally("rank(I - a1 A1) >= n - 1", count(|r| r.first_bound_holds)),
                tally("rank(a2 A2 + n E) <= q + 1", count(|r| r.second_bound_holds)),
                tally("q + 1 < n - 1", count(|r| r.gap_holds)),
                tally("a1 A1 + a2 A2 != I - n E", count(|r| r.combination_differs)),
            ],
        };
        self.summarize(&report, false)
    }

    fn search_witness(&self, f: &waring_core::NcPolynomial, p: usize, budget: u64, out: Option<PathBuf>) -> Outcome {
        let w = search_diagonal_witness(f, p, budget, self.seed)?.ok_or(Error::WitnessNotFound {
            budget,
            seed: self.seed,
        })?;
        write_json(&w, out.as_ref())?;
        let value_ok = f.evaluate(&w.args)? == w.value;
        let spectrum = rational_spectrum(&w.value).map(sorted);
        let distinct = |s: &Vec<Rational>| s.len() == p && s.windows(2).all(|x| x[0] != x[1]);
        let report = VerificationReport {
            checks: vec![
                check("value", value_ok, "f(args) equals the reported value"),
                check(
                    "spectrum",
                    spectrum.as_ref().is_some_and(distinct) && spectrum == Some(sorted(w.spectrum.clone())),
                    format!("{p} distinct rational eigenvalues, found at attempt {}", w.attempt),
                ),
            ],
        };
        self.summarize(&report, false)
    }

    fn prescribe(&self, input: &Path, mus: &str, out: Option<PathBuf>) -> Outcome {
        let b = read_matrix(input)?;
        let mus = parse_scalars(mus)?;
        let r = prescribe_diagonal(&b, &mus)?;
        write_json(&json!({ "S": r.similarity, "C": r.conjugated }), out.as_ref())?;
        let report = VerificationReport {
            checks: vec![
                check(
                    "diagonal",
                    r.conjugated.diagonal_entries() == mus,
                    "diag(C) equals the targets",
                ),
                check(
                    "similarity",
                    b.conjugate(&r.similarity)? == r.conjugated,
                    "S B S^-1 = C",
                ),
            ],
        };
        self.summarize(&report, false)
    }

    fn complete_block(&self, input: &Path, n: usize, lambdas: &str, out: Option<PathBuf>) -> Outcome {
        let z = read_matrix(input)?;
        let spec = ModelSpectrum::from_lambdas(n, parse_scalars(lambdas)?)?;
        let c = complete_block_to_model(&z, &spec)?;
        write_json(
            &json!({ "U": c.u, "V": c.v, "W": c.w, "X": c.x, "A": c.a, "S": c.witness.matrix() }),
            out.as_ref(),
        )?;
        let q = spec.q();
        let report = VerificationReport {
            checks: vec![
                check("block", c.a.extract_block(q..n, q..n)? == z, "trailing block of A is Z"),
                check(
                    "witness",
                    witness_holds(&c.a, &spec, c.witness.matrix()),
                    "A S = S D, S invertible",
                ),
                check("nonscalar", !c.u.is_scalar(), "U is nonscalar"),
            ],
        };
        self.summarize(&report, false)
    }

    /// Prints one line per check and fails when any check failed.
    fn summarize(&self, report: &VerificationReport, to_stdout: bool) -> Outcome {
        for c in &report.checks {
            let mut line = format!("{}  {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
            if (!c.passed || self.verbose > 0) && !c.detail.is_empty() {
                line.push_str(&format!("  ({})", c.detail));
            }
            if to_stdout {
                println!("{line}");
            } else {
                eprintln!("{line}");
            }
        }
        let failed: Vec<String> = report.failures().map(|c| c.name.clone()).collect();
        if failed.is_empty() {
            Ok(())
        } else {
            Err(Failure::Checks(failed))
        }
    }
}

#[derive(Serialize)]
struct ObstructionCase {
    alpha1: Rational,
    alpha2: Rational,
    report: ObstructionReport,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

fn check_q(q: Option<usize>, count: usize) -> Outcome {
    match q {
        Some(q) if q != count => Err(Error::InvalidSpectrum(format!("q = {q} but {count} lambdas given")).into()),
        _ => Ok(()),
    }
}

fn sorted(mut v: Vec<Rational>) -> Vec<Rational> {
    v.sort();
    v
}
