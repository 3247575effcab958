//! Positional values of digit words in a rational base, and the translation of
//! matrix products `N1 M^m1 N2 ... Ns M^ms N(s+1)` into such words.
//!
//! Words are stored most-significant digit first: the word `w(n-1) ... w1 w0`
//! has value `Σ wi · r^i`. Digits are arbitrary rationals here.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use thiserror::Error;

use crate::algebra::{CanonicalForm, ParseRationalError, Rational, UTMat2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumerationError {
    #[error("base {0} is not allowed (must not be -1, 0 or 1)")]
    BadBase(Rational),
    #[error("singular matrix in digit-sequence input")]
    SingularInput,
    #[error("expected {expected} entries, got {got}")]
    BadArity { expected: usize, got: usize },
    #[error("exponents must be at least 1")]
    ZeroExponent,
}

/// A letter standing for its rational value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digit(pub Rational);

impl Digit {
    pub fn value(&self) -> &Rational {
        &self.0
    }
}

impl From<Rational> for Digit {
    fn from(r: Rational) -> Self {
        Digit(r)
    }
}

impl From<i64> for Digit {
    fn from(n: i64) -> Self {
        Digit(Rational::from(n))
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// A finite word of digits, most-significant first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DigitWord(pub Vec<Digit>);

impl DigitWord {
    pub fn new(digits: Vec<Digit>) -> Self {
        DigitWord(digits)
    }

    pub fn from_rationals(values: impl IntoIterator<Item = Rational>) -> Self {
        DigitWord(values.into_iter().map(Digit).collect())
    }

    pub fn from_ints(values: &[i64]) -> Self {
        DigitWord(values.iter().map(|&v| Digit::from(v)).collect())
    }

    pub fn digits(&self) -> &[Digit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> DigitWord {
        DigitWord(self.0.iter().rev().cloned().collect())
    }

    pub fn concat(&self, other: &DigitWord) -> DigitWord {
        let mut digits = self.0.clone();
        digits.extend_from_slice(&other.0);
        DigitWord(digits)
    }

    pub fn value(&self, base: &Rational) -> Rational {
        value_of(self, base)
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for DigitWord {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Ok(DigitWord::default());
        }
        s.split(',')
            .map(|part| part.parse::<Rational>().map(Digit))
            .collect::<Result<Vec<_>, _>>()
            .map(DigitWord)
    }
}

/// A numeration base `r = u / v` in lowest terms, `v > 0`, `r ∉ {-1, 0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Base {
    r: Rational,
}

impl Base {
    pub fn new(r: Rational) -> Result<Self, NumerationError> {
        if r.is_zero() || r.is_unit() {
            return Err(NumerationError::BadBase(r));
        }
        Ok(Base { r })
    }

    pub fn value(&self) -> &Rational {
        &self.r
    }

    pub fn numer(&self) -> &num_bigint::BigInt {
        self.r.numer()
    }

    pub fn denom(&self) -> &num_bigint::BigInt {
        self.r.denom()
    }

    /// `|r| > 1`.
    pub fn is_expanding(&self) -> bool {
        self.r.numer().abs() > self.r.denom().abs()
    }

    pub fn inverse(&self) -> Base {
        Base { r: self.r.recip() }
    }
}

/// `Σ w_i r^i` with `w_0` the last digit of the word. Any rational base is
/// accepted, including the degenerate ones.
pub fn value_of(word: &DigitWord, base: &Rational) -> Rational {
    word.0
        .iter()
        .fold(Rational::zero(), |acc, d| acc * base + &d.0)
}

/// `c^n · [[a^n, val_a(b^n)], [0, 1]]`, where `b^n` is the word of `n` copies of `b`.
pub fn power_closed_form(c: &Rational, a: &Rational, b: &Rational, n: u32) -> UTMat2 {
    let repeated = DigitWord(vec![Digit(b.clone()); n as usize]);
    let cn = c.pow(n);
    UTMat2 {
        e11: &cn * &a.pow(n),
        e12: &cn * &value_of(&repeated, a),
        e22: cn,
    }
}

/// Digits `q1..q(s+1)` and `p1..ps` such that
///
/// `N1 M^m1 ... Ns M^ms N(s+1) = c^Σm · [[d1·a^Σm, val_a(q1 p1^(ms-1) q2 ... qs ps^(m1-1) q(s+1))], [0, d2]]`
///
/// for all exponents `mi >= 1`. Note the reversed exponent order: `p1` repeats
/// `ms - 1` times and `ps` repeats `m1 - 1` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitSequence {
    pub s: usize,
    pub q: Vec<Rational>,
    pub p: Vec<Rational>,
    /// `A1 ... A(s+1)`
    pub d1: Rational,
    /// `C1 ... C(s+1)`
    pub d2: Rational,
    pub c: Rational,
    pub a: Rational,
}

impl DigitSequence {
    /// All digits, fixed ones first.
    pub fn digits(&self) -> impl Iterator<Item = &Rational> + '_ {
        self.q.iter().chain(self.p.iter())
    }

    /// The matrix product reconstructed from the digit word.
    pub fn evaluate(&self, exponents: &[u32]) -> Result<UTMat2, NumerationError> {
        let word = instantiate_word(self, exponents)?;
        let total: u32 = exponents.iter().sum();
        let cn = self.c.pow(total);
        Ok(UTMat2 {
            e11: &cn * &self.d1 * self.a.pow(total),
            e12: &cn * &value_of(&word, &self.a),
            e22: cn * &self.d2,
        })
    }
}

pub fn digit_sequence(cf: &CanonicalForm, ns: &[UTMat2]) -> Result<DigitSequence, NumerationError> {
    if ns.len() < 2 {
        return Err(NumerationError::BadArity {
            expected: 2,
            got: ns.len(),
        });
    }
    if cf.a.is_zero() || cf.c.is_zero() || ns.iter().any(UTMat2::is_singular) {
        return Err(NumerationError::SingularInput);
    }
    let b = &cf.b;
    let (n1, n2) = (&ns[0], &ns[1]);
    let mut q = vec![
        &n1.e11 * &n2.e12,
        &n2.e22 * &(&n1.e11 * b + &n1.e12),
    ];
    let mut p = vec![&n1.e11 * &n2.e22 * b];
    let mut d1 = &n1.e11 * &n2.e11;
    let mut d2 = &n1.e22 * &n2.e22;

    // Appending N = [[A, B], [0, C]] prepends d1·B, (d1·C·b)*, C·(d1·b + q1)
    // and multiplies every older digit by C.
    for n in &ns[2..] {
        let (big_a, big_b, big_c) = (&n.e11, &n.e12, &n.e22);
        let mut new_q = Vec::with_capacity(q.len() + 1);
        new_q.push(&d1 * big_b);
        new_q.push(big_c * &(&d1 * b + &q[0]));
        new_q.extend(q[1..].iter().map(|x| big_c * x));
        let mut new_p = Vec::with_capacity(p.len() + 1);
        new_p.push(&d1 * big_c * b);
        new_p.extend(p.iter().map(|x| big_c * x));
        q = new_q;
        p = new_p;
        d1 = d1 * big_a;
        d2 = d2 * big_c;
    }

    Ok(DigitSequence {
        s: ns.len() - 1,
        q,
        p,
        d1,
        d2,
        c: cf.c.clone(),
        a: cf.a.clone(),
    })
}

/// `q1 p1^(ms-1) q2 p2^(m(s-1)-1) ... qs ps^(m1-1) q(s+1)`.
pub fn instantiate_word(seq: &DigitSequence, exponents: &[u32]) -> Result<DigitWord, NumerationError> {
    if exponents.len() != seq.s {
        return Err(NumerationError::BadArity {
            expected: seq.s,
            got: exponents.len(),
        });
    }
    if exponents.contains(&0) {
        return Err(NumerationError::ZeroExponent);
    }
    let mut digits = Vec::with_capacity(1 + exponents.iter().map(|&m| m as usize).sum::<usize>());
    for i in 0..seq.s {
        digits.push(Digit(seq.q[i].clone()));
        let repeats = exponents[seq.s - 1 - i] - 1;
        digits.extend(std::iter::repeat_n(Digit(seq.p[i].clone()), repeats as usize));
    }
    digits.push(Digit(seq.q[seq.s].clone()));
    Ok(DigitWord(digits))
}

/// Multiplies every digit by `factor`.
pub fn scale_digits(word: &DigitWord, factor: &Rational) -> DigitWord {
    DigitWord(word.0.iter().map(|d| Digit(&d.0 * factor)).collect())
}
