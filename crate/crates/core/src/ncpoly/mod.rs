//! Noncommutative polynomials over the rationals and their evaluation on
//! tuples of square matrices.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Rational;

/// A monomial: a sequence of 1-based variable indices. The empty word is 1.
///
/// Ordered graded-lexicographically (shorter words first).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(vars: Vec<u32>) -> Result<Self> {
        if vars.contains(&0) {
            return Err(Error::Format("variable indices start at 1".into()));
        }
        Ok(Word(vars))
    }

    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn vars(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite linear combination of words with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NcPolynomial {
    terms: BTreeMap<Word, Rational>,
}

impl NcPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Word::unit(), c)
    }

    /// The polynomial `X_index`.
    pub fn variable(index: u32) -> Result<Self> {
        Ok(Self::monomial(Word::new(vec![index])?, Rational::one()))
    }

    pub fn monomial(word: Word, coeff: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(word, coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    fn add_term(&mut self, word: Word, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(word);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, word: &Word) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    /// Length of the longest word. Undefined (an error) for the zero polynomial.
    pub fn degree(&self) -> Result<usize> {
        self.terms
            .keys()
            .next_back()
            .map(Word::len)
            .ok_or(Error::ZeroPolynomial)
    }

    /// Coefficient of the empty word.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Word::unit())
    }

    /// Largest variable index used, or 0 for constants.
    pub fn max_variable(&self) -> u32 {
        self.terms.keys().flat_map(|w| w.0.iter().copied()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &NcPolynomial) -> NcPolynomial {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> NcPolynomial {
        NcPolynomial::from_terms(self.terms.iter().map(|(w, x)| (w.clone(), x * c)))
    }

    pub fn mul(&self, other: &NcPolynomial) -> NcPolynomial {
        let mut out = NcPolynomial::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    /// Substitutes `args[k - 1]` for `X_k`. The empty word evaluates to the identity.
    pub fn evaluate(&self, args: &[Matrix]) -> Result<Matrix> {
        let first = args.first().ok_or(Error::MissingVariable(1.max(self.max_variable())))?;
        let n = first.rows();
        for a in args {
            if a.shape() != (n, n) {
                return Err(Error::DimensionMismatch {
                    op: "evaluate",
                    left_rows: n,
                    left_cols: n,
                    right_rows: a.rows(),
                    right_cols: a.cols(),
                });
            }
        }
        if let Some(&missing) = self
            .terms
            .keys()
            .flat_map(|w| w.0.iter())
            .find(|&&v| v as usize > args.len())
        {
            return Err(Error::MissingVariable(missing));
        }
        let mut acc = Matrix::zeros(n, n);
        // Words sharing a prefix reuse its product; terms iterate in graded order,
        // so cache by word.
        let mut cache: BTreeMap<Word, Matrix> = BTreeMap::new();
        for (w, c) in &self.terms {
            let value = word_value(w, args, n, &mut cache)?;
            acc = acc.add(&value.scale(c))?;
        }
        Ok(acc)
    }
}

fn word_value(w: &Word, args: &[Matrix], n: usize, cache: &mut BTreeMap<Word, Matrix>) -> Result<Matrix> {
    if let Some(m) = cache.get(w) {
        return Ok(m.clone());
    }
    let value = match w.0.split_last() {
        None => Matrix::identity(n),
        Some((&last, [])) => args[last as usize - 1].clone(),
        Some((&last, prefix)) => {
            let head = word_value(&Word(prefix.to_vec()), args, n, cache)?;
            head.mul(&args[last as usize - 1])?
        }
    };
    cache.insert(w.clone(), value.clone());
    Ok(value)
}

impl FromStr for NcPolynomial {
    type Err = Error;

    /// Parses and rejects the zero polynomial.
    fn from_str(s: &str) -> Result<Self> {
        let p = parse::parse_expression(s)?;
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(p)
    }
}

/// Canonical rendering: highest degree first, lexicographic within a degree,
/// explicit `*`, coefficients in `p/q` form.
impl fmt::Display for NcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| b.len().cmp(&a.len()).then_with(|| a.0.cmp(&b.0)));
        for (i, (w, c)) in ordered.into_iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = w.0.iter().map(|v| format!("X{v}")).collect();
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NcPolynomial({self})")
    }
}
