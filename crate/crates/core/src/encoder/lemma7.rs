use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::gadget::{compile, corner_value, product_from, Gadget};
use super::{EncodeError, Polynomial};
use crate::algebra::{IntMat, Rational};
use crate::oracle::exponent_vectors;

/// `C2(x1, x2) = (x1 + x2)(x1 + x2 + 1)/2 + x2` and `C(k+1) = C2(Ck, x(k+1))`.
pub fn cantor_polynomial(k: usize) -> Result<Polynomial, EncodeError> {
    if k < 2 {
        return Err(EncodeError::IndexOutOfRange { index: k, arity: 2 });
    }
    let x = |arity, i| Polynomial::variable(arity, i);
    let sum = x(2, 1)?.add(&x(2, 2)?)?;
    let c2 = sum
        .mul(&sum.add(&Polynomial::constant(2, 1))?)?
        .scale(&Rational::new(1, 2))
        .add(&x(2, 2)?)?;
    let mut ck = c2.clone();
    for arity in 3..=k {
        ck = c2.compose(&[ck.extend_arity(arity)?, x(arity, arity)?])?;
    }
    Ok(ck)
}

/// `Q = e · C(m+1)(x1, ..., xm, P² · x(m+1))` with the least `e` making every
/// coefficient an integer.
pub fn build_q(p: &Polynomial) -> Result<(Polynomial, BigInt), EncodeError> {
    let m = p.arity();
    let arity = m + 1;
    let mut args = (1..=m)
        .map(|i| Polynomial::variable(arity, i))
        .collect::<Result<Vec<_>, _>>()?;
    let p_ext = p.extend_arity(arity)?;
    args.push(p_ext.mul(&p_ext)?.mul(&Polynomial::variable(arity, arity)?)?);
    let unscaled = cantor_polynomial(arity)?.compose(&args)?;
    let e = unscaled.denominator_lcm();
    Ok((unscaled.scale(&Rational::from_integer(e.clone())), e))
}

/// Two distinct tails `b != c` with `Q(a, b) = Q(a, c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma7Collision {
    pub left: Vec<u32>,
    pub right: Vec<u32>,
    pub value: Rational,
}

/// Searches tails in `[0, bound]^m` in lexicographic order and returns the
/// first repeated value of `Q(a, ·)`.
pub fn lemma7_check(p: &Polynomial, a: u32, bound: u32) -> Result<Option<Lemma7Collision>, EncodeError> {
    let (q, _) = build_q(p)?;
    let mut seen: BTreeMap<Rational, Vec<u32>> = BTreeMap::new();
    for tail in exponent_vectors(p.arity(), 0, bound) {
        let mut point = vec![a];
        point.extend(&tail);
        let value = q.eval_at(&point)?;
        if let Some(prev) = seen.get(&value) {
            return Ok(Some(Lemma7Collision {
                left: prev.clone(),
                right: tail,
                value,
            }));
        }
        seen.insert(value, tail);
    }
    Ok(None)
}

/// The morphism `μ_a` on `z1 x^e2 y ... y x^e(m+1) z2`: `μ` realizes `Q`
/// through a gadget and `μ_a(z1) = μ(z1 x^a y)`.
#[derive(Clone, Debug)]
pub struct MuA {
    pub q: Polynomial,
    pub gadget: Gadget,
    pub a: u32,
    /// `A · M^a · N`.
    pub z1: IntMat,
}

impl MuA {
    pub fn new(p: &Polynomial, a: u32) -> Result<Self, EncodeError> {
        let (q, _) = build_q(p)?;
        let gadget = compile(&q)?;
        let mut z1 = gadget.a.clone();
        for _ in 0..a {
            z1 = z1.checked_mul(&gadget.m)?;
        }
        z1 = z1.checked_mul(&gadget.n)?;
        Ok(MuA { q, gadget, a, z1 })
    }

    /// `μ_a(z1 x^e2 y ... y x^e(m+1) z2)`; needs one exponent per tail variable.
    pub fn image(&self, exps: &[u32]) -> Result<IntMat, EncodeError> {
        if exps.len() + 1 != self.gadget.t {
            return Err(EncodeError::ArityMismatch {
                expected: self.gadget.t - 1,
                got: exps.len(),
            });
        }
        product_from(&self.z1, &self.gadget, exps)
    }

    /// The scalar of [`MuA::image`] against `E_k`.
    pub fn value(&self, exps: &[u32]) -> Result<BigInt, EncodeError> {
        corner_value(&self.image(exps)?)
    }
}

/// One-shot [`MuA::image`].
pub fn mu_a_products(p: &Polynomial, a: u32, exps: &[u32]) -> Result<IntMat, EncodeError> {
    MuA::new(p, a)?.image(exps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, unit_matrix};
    use std::collections::BTreeSet;

    fn poly(arity: usize, terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_terms(arity, terms.iter().map(|(e, c)| (e.to_vec(), Rational::from(*c)))).unwrap()
    }

    /// Reference pairing straight from the definition.
    fn pair(x: u64, y: u64) -> u64 {
        (x + y) * (x + y + 1) / 2 + y
    }

    #[test]
    fn cantor_values() {
        let c2 = cantor_polynomial(2).unwrap();
        assert_eq!(c2.eval_at(&[0, 0]).unwrap(), rat("0"));
        assert_eq!(c2.eval_at(&[1, 2]).unwrap(), rat("8"));
        let c3 = cantor_polynomial(3).unwrap();
        for (x, y, z) in [(0, 0, 0), (1, 2, 3), (4, 0, 2), (3, 3, 3)] {
            let expected = pair(pair(x, y), z) as i64;
            assert_eq!(c3.eval_at(&[x as u32, y as u32, z as u32]).unwrap(), Rational::from(expected));
        }
        assert!(cantor_polynomial(1).is_err());
    }

    #[test]
    fn cantor_is_injective_on_small_boxes() {
        let c2 = cantor_polynomial(2).unwrap();
        let values: BTreeSet<_> = exponent_vectors(2, 0, 20).iter().map(|v| c2.eval_at(v).unwrap()).collect();
        assert_eq!(values.len(), 21 * 21);
    }

    #[test]
    fn q_construction() {
        // P = x1 - 2*x2
        let p = poly(2, &[(&[1, 0], 1), (&[0, 1], -2)]);
        let (q, e) = build_q(&p).unwrap();
        assert_eq!(q.arity(), 3);
        assert!(q.has_integer_coefficients());
        assert_eq!(e, BigInt::from(8));
        // P(4, 2) = 0, so Q(4, 2, x) does not depend on x
        let base = q.eval_at(&[4, 2, 0]).unwrap();
        for x in 1..6 {
            assert_eq!(q.eval_at(&[4, 2, x]).unwrap(), base);
        }
        let (q0, e0) = build_q(&Polynomial::zero(1)).unwrap();
        assert_eq!(e0, BigInt::from(2));
        assert_eq!(q0, poly(2, &[(&[2, 0], 1), (&[1, 0], 1)]));
    }

    #[test]
    fn lemma7_examples() {
        let p = poly(2, &[(&[1, 0], 1), (&[0, 1], -2)]);
        let hit = lemma7_check(&p, 4, 5).unwrap().expect("x2 = 2 solves P(4, x2) = 0");
        assert_eq!(hit.left[0], 2);
        assert_eq!(hit.right[0], 2);
        assert_ne!(hit.left, hit.right);
        assert_eq!(lemma7_check(&p, 3, 8).unwrap(), None);
        assert_eq!(lemma7_check(&poly(1, &[(&[1], 1)]), 1, 8).unwrap(), None);
    }

    #[test]
    fn mu_a_matches_q() {
        // P = x1 - 2 vanishes at a = 2 only
        let p = poly(1, &[(&[1], 1), (&[0], -2)]);
        for a in [1, 2] {
            let mu = MuA::new(&p, a).unwrap();
            for x in 0..3 {
                let image = mu.image(&[x]).unwrap();
                let expected = mu.q.eval_at(&[a, x]).unwrap().to_integer().unwrap();
                assert_eq!(image, unit_matrix(mu.gadget.k()).scale(&expected));
            }
            let same = mu.value(&[1]).unwrap() == mu.value(&[2]).unwrap();
            assert_eq!(same, a == 2);
        }
        let zero = mu_a_products(&Polynomial::zero(1), 3, &[0]).unwrap();
        assert_eq!(corner_value(&zero).unwrap(), BigInt::from(12));
    }
}
