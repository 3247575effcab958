use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{EncodeError, Polynomial};
use crate::algebra::{direct_sum, kronecker, IntMat};

/// Upper-triangular integer matrices `(A, M, N, B)` with
/// `A M^a1 N M^a2 N ... N M^at B = p(a1, ..., at) · E_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub t: usize,
    pub a: IntMat,
    pub m: IntMat,
    pub n: IntMat,
    pub b: IntMat,
}

impl Gadget {
    /// Checks that the four matrices share a dimension and are upper-triangular.
    pub fn new(t: usize, a: IntMat, m: IntMat, n: IntMat, b: IntMat) -> Result<Self, EncodeError> {
        let k = a.dim();
        for mat in [&a, &m, &n, &b] {
            if mat.dim() != k {
                return Err(EncodeError::MalformedGadget(format!(
                    "matrices of dimension {k} and {}",
                    mat.dim()
                )));
            }
            mat.check_upper_triangular()?;
        }
        Ok(Gadget { t, a, m, n, b })
    }

    pub fn k(&self) -> usize {
        self.a.dim()
    }

    pub fn matrices(&self) -> [&IntMat; 4] {
        [&self.a, &self.m, &self.n, &self.b]
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.matrices().iter().all(|m| m.is_upper_triangular())
    }
}

fn entry(dim: usize, i: usize, j: usize) -> IntMat {
    IntMat::from_entries(dim, [(i, j, BigInt::one())])
}

/// Realizes `p = x_i` (1-based) in dimension `2t`.
pub fn variable_gadget(t: usize, i: usize) -> Result<Gadget, EncodeError> {
    if t == 0 || i == 0 || i > t {
        return Err(EncodeError::IndexOutOfRange { index: i, arity: t });
    }
    let k = 2 * t;
    let a = entry(k, 0, 0);
    let b = entry(k, k - 1, k - 1);
    let mut m = IntMat::identity(k);
    m.set(2 * (i - 1), 2 * (i - 1) + 1, BigInt::one());
    // identity blocks on the block superdiagonal
    let n = IntMat::from_entries(k, (0..k.saturating_sub(2)).map(|r| (r, r + 2, BigInt::one())));
    Ok(Gadget { t, a, m, n, b })
}

/// Realizes the constant `c` in dimension 2.
pub fn constant_gadget(t: usize, c: impl Into<BigInt>) -> Gadget {
    Gadget {
        t,
        a: entry(2, 0, 1).scale(&c.into()),
        m: IntMat::identity(2),
        n: IntMat::identity(2),
        b: IntMat::identity(2),
    }
}

fn check_arity(g1: &Gadget, g2: &Gadget) -> Result<(), EncodeError> {
    if g1.t == g2.t {
        Ok(())
    } else {
        Err(EncodeError::ArityMismatch {
            expected: g1.t,
            got: g2.t,
        })
    }
}

/// Realizes `p1 + p2` in dimension `k1 + k2`.
pub fn sum_gadget(g1: &Gadget, g2: &Gadget) -> Result<Gadget, EncodeError> {
    check_arity(g1, g2)?;
    let k = g1.k() + g2.k();
    let first_row = IntMat::from_entries(k, (0..k).map(|j| (0, j, BigInt::one())));
    let last_col = IntMat::from_entries(k, (0..k).map(|i| (i, k - 1, BigInt::one())));
    Ok(Gadget {
        t: g1.t,
        a: &first_row * &direct_sum(&g1.a, &g2.a),
        m: direct_sum(&g1.m, &g2.m),
        n: direct_sum(&g1.n, &g2.n),
        b: &direct_sum(&g1.b, &g2.b) * &last_col,
    })
}

/// Realizes `p1 · p2` in dimension `k1 · k2`.
pub fn product_gadget(g1: &Gadget, g2: &Gadget) -> Result<Gadget, EncodeError> {
    check_arity(g1, g2)?;
    Ok(Gadget {
        t: g1.t,
        a: kronecker(&g1.a, &g2.a),
        m: kronecker(&g1.m, &g2.m),
        n: kronecker(&g1.n, &g2.n),
        b: kronecker(&g1.b, &g2.b),
    })
}

/// Realizes `c · p`.
pub fn scale_gadget(g: &Gadget, c: impl Into<BigInt>) -> Gadget {
    Gadget {
        a: g.a.scale(&c.into()),
        ..g.clone()
    }
}

fn monomial_dimension(t: usize, exps: &[u32]) -> u128 {
    let degree: u32 = exps.iter().sum();
    if degree == 0 {
        2
    } else {
        (2 * t as u128).saturating_pow(degree)
    }
}

/// Dimension of [`compile`]'s output, computed without building it.
pub fn compiled_dimension(p: &Polynomial) -> u128 {
    if p.is_zero() {
        return 2;
    }
    p.terms()
        .map(|(e, _)| monomial_dimension(p.arity(), e))
        .fold(0u128, u128::saturating_add)
}

fn integer_coefficient(c: &crate::algebra::Rational) -> Result<BigInt, EncodeError> {
    c.to_integer()
        .ok_or_else(|| EncodeError::NonIntegerCoefficient(c.to_string()))
}

/// One monomial gadget per term, summed in term order.
pub fn compile(p: &Polynomial) -> Result<Gadget, EncodeError> {
    let t = p.arity();
    let coefficients = p
        .terms()
        .map(|(e, c)| Ok((e, integer_coefficient(c)?)))
        .collect::<Result<Vec<_>, EncodeError>>()?;
    let mut total: Option<Gadget> = None;
    for (exps, c) in coefficients {
        let mut monomial: Option<Gadget> = None;
        for (i, &n) in exps.iter().enumerate() {
            for _ in 0..n {
                let v = variable_gadget(t, i + 1)?;
                monomial = Some(match monomial {
                    None => v,
                    Some(g) => product_gadget(&g, &v)?,
                });
            }
        }
        let term = match monomial {
            None => constant_gadget(t, c),
            Some(g) => scale_gadget(&g, c),
        };
        total = Some(match total {
            None => term,
            Some(g) => sum_gadget(&g, &term)?,
        });
    }
    Ok(total.unwrap_or_else(|| constant_gadget(t, 0)))
}

/// `A M^a1 N ... N M^at B` by exact multiplication.
pub fn gadget_product(g: &Gadget, point: &[u32]) -> Result<IntMat, EncodeError> {
    if point.len() != g.t {
        return Err(EncodeError::ArityMismatch {
            expected: g.t,
            got: point.len(),
        });
    }
    product_from(&g.a, g, point)
}

/// `start M^e1 N ... N M^en B`; `start` is multiplied in from the left, so a
/// sparse first factor keeps every step cheap.
pub(crate) fn product_from(start: &IntMat, g: &Gadget, exps: &[u32]) -> Result<IntMat, EncodeError> {
    let mut acc = start.clone();
    for (idx, &e) in exps.iter().enumerate() {
        if idx > 0 {
            acc = acc.checked_mul(&g.n)?;
        }
        for _ in 0..e {
            acc = acc.checked_mul(&g.m)?;
        }
    }
    Ok(acc.checked_mul(&g.b)?)
}

/// The scalar `p(point)`; fails unless the product is a multiple of `E_k`.
pub fn evaluate_gadget(g: &Gadget, point: &[u32]) -> Result<BigInt, EncodeError> {
    let product = gadget_product(g, point)?;
    corner_value(&product)
}

pub(crate) fn corner_value(product: &IntMat) -> Result<BigInt, EncodeError> {
    let k = product.dim();
    let mut corner = BigInt::zero();
    for (i, j, v) in product.nonzeros() {
        if (i, j) == (0, k - 1) {
            corner = v.clone();
        } else {
            return Err(EncodeError::MalformedGadget(format!(
                "entry ({}, {}) is {v}",
                i + 1,
                j + 1
            )));
        }
    }
    Ok(corner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, unit_matrix, Rational};
    use crate::oracle::exponent_vectors;

    fn eval(g: &Gadget, point: &[u32]) -> i64 {
        let product = gadget_product(g, point).unwrap();
        let v = corner_value(&product).unwrap();
        assert_eq!(product, unit_matrix(g.k()).scale(&v));
        v.try_into().unwrap()
    }

    fn var(t: usize, i: usize) -> Gadget {
        variable_gadget(t, i).unwrap()
    }

    #[test]
    fn variables() {
        assert_eq!(eval(&var(1, 1), &[0]), 0);
        assert_eq!(eval(&var(1, 1), &[7]), 7);
        assert_eq!(eval(&var(2, 1), &[3, 5]), 3);
        assert_eq!(eval(&var(2, 2), &[3, 5]), 5);
        assert_eq!(var(2, 1).k(), 4);
        for t in 1..=3 {
            for i in 1..=t {
                let g = var(t, i);
                assert!(g.is_upper_triangular());
                for pt in exponent_vectors(t, 0, 3) {
                    assert_eq!(eval(&g, &pt), pt[i - 1] as i64);
                }
            }
        }
        assert!(variable_gadget(2, 3).is_err());
        assert!(variable_gadget(2, 0).is_err());
    }

    #[test]
    fn constants() {
        assert_eq!(eval(&constant_gadget(2, 0), &[4, 1]), 0);
        assert_eq!(eval(&constant_gadget(2, 1), &[4, 1]), 1);
        assert_eq!(eval(&constant_gadget(1, -7), &[9]), -7);
    }

    #[test]
    fn combinators() {
        let x1 = var(2, 1);
        let x2 = var(2, 2);
        let sum = sum_gadget(&x1, &x2).unwrap();
        assert_eq!((sum.k(), eval(&sum, &[2, 3])), (8, 5));
        let double = sum_gadget(&var(1, 1), &var(1, 1)).unwrap();
        assert_eq!(eval(&double, &[4]), 8);
        let plus_zero = sum_gadget(&x1, &constant_gadget(2, 0)).unwrap();
        let prod = product_gadget(&x1, &x2).unwrap();
        assert_eq!((prod.k(), eval(&prod, &[2, 3])), (16, 6));
        let square = product_gadget(&var(1, 1), &var(1, 1)).unwrap();
        assert_eq!(eval(&square, &[3]), 9);
        let times_one = product_gadget(&x1, &constant_gadget(2, 1)).unwrap();
        for pt in exponent_vectors(2, 0, 3) {
            assert_eq!(eval(&plus_zero, &pt), pt[0] as i64);
            assert_eq!(eval(&times_one, &pt), pt[0] as i64);
            assert_eq!(eval(&scale_gadget(&x1, 1), &pt), pt[0] as i64);
            assert_eq!(eval(&scale_gadget(&x1, 0), &pt), 0);
        }
        assert_eq!(eval(&scale_gadget(&var(1, 1), -2), &[5]), -10);
        assert!(sum_gadget(&x1, &var(1, 1)).is_err());
        assert!(product_gadget(&x1, &var(3, 1)).is_err());
        for g in [sum, prod, square, plus_zero, times_one] {
            assert!(g.is_upper_triangular());
        }
    }

    fn poly(arity: usize, terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_terms(arity, terms.iter().map(|(e, c)| (e.to_vec(), Rational::from(*c)))).unwrap()
    }

    #[test]
    fn compiled_polynomials() {
        let zero = compile(&Polynomial::zero(2)).unwrap();
        assert_eq!(eval(&zero, &[3, 1]), 0);
        let p = poly(2, &[(&[2, 0], 1), (&[0, 1], -1)]);
        let g = compile(&p).unwrap();
        assert_eq!(eval(&g, &[2, 3]), 1);
        assert_eq!(g.k() as u128, compiled_dimension(&p));
        let q = poly(2, &[(&[1, 1], 3), (&[0, 0], 1)]);
        assert_eq!(eval(&compile(&q).unwrap(), &[1, 1]), 4);
        assert_eq!(compiled_dimension(&q), 18);
        let half = Polynomial::constant(1, rat("1/2"));
        assert!(matches!(compile(&half), Err(EncodeError::NonIntegerCoefficient(_))));
        assert!(matches!(evaluate_gadget(&g, &[1]), Err(EncodeError::ArityMismatch { .. })));
    }

    #[test]
    fn malformed_products_are_reported() {
        let mut g = var(1, 1);
        g.b = IntMat::identity(2);
        assert!(matches!(evaluate_gadget(&g, &[1]), Err(EncodeError::MalformedGadget(_))));
        assert!(Gadget::new(1, IntMat::identity(2), IntMat::identity(3), IntMat::identity(2), IntMat::identity(2)).is_err());
        let lower = IntMat::from_rows(&[vec![1, 0], vec![1, 1]]).unwrap();
        assert!(Gadget::new(1, lower, IntMat::identity(2), IntMat::identity(2), IntMat::identity(2)).is_err());
    }
}
