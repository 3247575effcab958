use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::EncodeError;
use crate::algebra::{common_denominator, Rational};

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms map exponent vectors (one entry per variable) to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Polynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: impl Into<Rational>) -> Self {
        let mut p = Polynomial::zero(arity);
        p.add_term(vec![0; arity], c.into());
        p
    }

    /// The variable `x_i`, 1-based.
    pub fn variable(arity: usize, i: usize) -> Result<Self, EncodeError> {
        if i == 0 || i > arity {
            return Err(EncodeError::IndexOutOfRange { index: i, arity });
        }
        let mut exps = vec![0; arity];
        exps[i - 1] = 1;
        let mut p = Polynomial::zero(arity);
        p.add_term(exps, Rational::one());
        Ok(p)
    }

    /// Sums the given terms; zero coefficients and repeats are merged away.
    pub fn from_terms(
        arity: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self, EncodeError> {
        let mut p = Polynomial::zero(arity);
        for (exps, c) in terms {
            if exps.len() != arity {
                return Err(EncodeError::ArityMismatch {
                    expected: arity,
                    got: exps.len(),
                });
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get() + &c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(Rational::is_integer)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        common_denominator(self.terms.values())
    }

    fn check_arity(&self, other: &Polynomial) -> Result<(), EncodeError> {
        if self.arity == other.arity {
            Ok(())
        } else {
            Err(EncodeError::ArityMismatch {
                expected: self.arity,
                got: other.arity,
            })
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, EncodeError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, EncodeError> {
        self.add(&other.scale(&Rational::from(-1)))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, EncodeError> {
        self.check_arity(other)?;
        let mut out = Polynomial::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut out = Polynomial::constant(self.arity, 1);
        for _ in 0..n {
            out = out.mul(self).expect("same arity");
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(self.arity);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// The same polynomial viewed in `arity` variables, new ones unused.
    pub fn extend_arity(&self, arity: usize) -> Result<Polynomial, EncodeError> {
        if arity < self.arity {
            return Err(EncodeError::ArityMismatch {
                expected: self.arity,
                got: arity,
            });
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let mut e = e.clone();
            e.resize(arity, 0);
            (e, c.clone())
        });
        Polynomial::from_terms(arity, terms)
    }

    /// `self(args[0], ..., args[n-1])`; all arguments share one arity.
    pub fn compose(&self, args: &[Polynomial]) -> Result<Polynomial, EncodeError> {
        if args.len() != self.arity {
            return Err(EncodeError::ArityMismatch {
                expected: self.arity,
                got: args.len(),
            });
        }
        let arity = args.first().map_or(0, Polynomial::arity);
        if let Some(bad) = args.iter().find(|a| a.arity != arity) {
            return Err(EncodeError::ArityMismatch {
                expected: arity,
                got: bad.arity,
            });
        }
        // powers[i][n] = args[i]^n, filled lazily
        let mut powers: Vec<Vec<Polynomial>> = args
            .iter()
            .map(|_| vec![Polynomial::constant(arity, 1)])
            .collect();
        let mut out = Polynomial::zero(arity);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(arity, c.clone());
            for (i, &n) in e.iter().enumerate() {
                while powers[i].len() <= n as usize {
                    let next = powers[i].last().expect("nonempty").mul(&args[i])?;
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][n as usize])?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational, EncodeError> {
        if point.len() != self.arity {
            return Err(EncodeError::ArityMismatch {
                expected: self.arity,
                got: point.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&n, x)| acc * x.pow(n))
            })
            .sum())
    }

    /// Evaluation at a point of nonnegative integers.
    pub fn eval_at(&self, point: &[u32]) -> Result<Rational, EncodeError> {
        let point: Vec<Rational> = point.iter().map(|&x| Rational::from(x as i64)).collect();
        self.eval(&point)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let monomial: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &n)| n > 0)
                .map(|(i, &n)| match n {
                    1 => format!("x{}", i + 1),
                    _ => format!("x{}^{}", i + 1, n),
                })
                .collect();
            let negative = c.is_negative();
            let magnitude = c.abs();
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            match (monomial.is_empty(), magnitude.is_one()) {
                (true, _) => write!(f, "{magnitude}")?,
                (false, true) => write!(f, "{}", monomial.join("*"))?,
                (false, false) => write!(f, "{magnitude}*{}", monomial.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({self})", self.arity)
    }
}
