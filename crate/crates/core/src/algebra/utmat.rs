use std::fmt;
use std::ops::Mul;

use super::rational::Rational;

/// A 2×2 upper-triangular rational matrix `[[e11, e12], [0, e22]]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UTMat2 {
    pub e11: Rational,
    pub e12: Rational,
    pub e22: Rational,
}

impl UTMat2 {
    pub fn new(e11: impl Into<Rational>, e12: impl Into<Rational>, e22: impl Into<Rational>) -> Self {
        UTMat2 {
            e11: e11.into(),
            e12: e12.into(),
            e22: e22.into(),
        }
    }

    pub fn identity() -> Self {
        UTMat2::new(1, 0, 1)
    }

    pub fn zero() -> Self {
        UTMat2::new(0, 0, 0)
    }

    pub fn scalar(c: Rational) -> Self {
        UTMat2 {
            e11: c.clone(),
            e12: Rational::zero(),
            e22: c,
        }
    }

    pub fn det(&self) -> Rational {
        &self.e11 * &self.e22
    }

    pub fn is_singular(&self) -> bool {
        self.e11.is_zero() || self.e22.is_zero()
    }

    pub fn scale(&self, k: &Rational) -> UTMat2 {
        UTMat2 {
            e11: &self.e11 * k,
            e12: &self.e12 * k,
            e22: &self.e22 * k,
        }
    }

    /// `self^n` by repeated squaring; `n = 0` gives the identity.
    pub fn pow(&self, mut n: u64) -> UTMat2 {
        let mut result = UTMat2::identity();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Rows in the `[[e11, e12], [0, e22]]` layout.
    pub fn rows(&self) -> [[Rational; 2]; 2] {
        [
            [self.e11.clone(), self.e12.clone()],
            [Rational::zero(), self.e22.clone()],
        ]
    }

    /// Product of a sequence of matrices, left to right.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a UTMat2>) -> UTMat2 {
        factors
            .into_iter()
            .fold(UTMat2::identity(), |acc, m| &acc * m)
    }
}

impl<'a> Mul<&'a UTMat2> for &'a UTMat2 {
    type Output = UTMat2;

    fn mul(self, rhs: &'a UTMat2) -> UTMat2 {
        UTMat2 {
            e11: &self.e11 * &rhs.e11,
            e12: &self.e11 * &rhs.e12 + &self.e12 * &rhs.e22,
            e22: &self.e22 * &rhs.e22,
        }
    }
}

impl Mul for UTMat2 {
    type Output = UTMat2;

    fn mul(self, rhs: UTMat2) -> UTMat2 {
        &self * &rhs
    }
}

impl fmt::Display for UTMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [0, {}]]", self.e11, self.e12, self.e22)
    }
}

impl fmt::Debug for UTMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `M = c · [[a, b], [0, 1]]` with `a` and `c` nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub c: Rational,
    pub a: Rational,
    pub b: Rational,
}

impl CanonicalForm {
    pub fn reconstruct(&self) -> UTMat2 {
        UTMat2 {
            e11: &self.c * &self.a,
            e12: &self.c * &self.b,
            e22: self.c.clone(),
        }
    }

    pub fn matrix(&self) -> UTMat2 {
        self.reconstruct()
    }
}

/// Shape of a singular upper-triangular matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularKind {
    /// `[[a, b], [0, 0]]` with `a ≠ 0`.
    BottomRowZero,
    /// `[[0, b], [0, c]]` with `c ≠ 0`.
    TopLeftZero,
    /// Both diagonal entries vanish.
    Zero,
}

pub fn canonical_form(m: &UTMat2) -> Result<CanonicalForm, SingularKind> {
    match (m.e11.is_zero(), m.e22.is_zero()) {
        (false, false) => Ok(CanonicalForm {
            c: m.e22.clone(),
            a: &m.e11 / &m.e22,
            b: &m.e12 / &m.e22,
        }),
        (false, true) => Err(SingularKind::BottomRowZero),
        (true, false) => Err(SingularKind::TopLeftZero),
        (true, true) => Err(SingularKind::Zero),
    }
}
