//! Deciding injectivity of `μ` on `L_t = z1 x* z2 ... zt x* z(t+1)`.
//!
//! [`decide`] first handles the cases where `μ(x)` is singular or has
//! `a = ±1` in its canonical form `c·[[a, b], [0, 1]]`. Otherwise the words
//! are split by the set `K` of positions carrying exponent zero, and every
//! pair of subsets becomes an emptiness question for a product of a pair
//! pattern automaton with the equal-value automaton in base `a`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{canonical_form, common_denominator, CanonicalForm, Rational, SingularKind, UTMat2};
use crate::automata::{
    ambiguity_check, exponents_from_positions, pair_pattern_automaton, pattern_automaton, product,
    AutomataError, EqualityAutomaton, PairLetter, PatternSpec,
};
use crate::numeration::{digit_sequence, Base, Digit, DigitSequence, NumerationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("z{index} is singular; only nonsingular z images are supported")]
    UnsupportedInstance { index: usize },
    #[error("expected {expected} z matrices, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("t must be at least 1")]
    ZeroT,
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error(transparent)]
    Numeration(#[from] NumerationError),
    #[error("internal error: witness {0} does not verify")]
    WitnessRejected(Witness),
}

/// A morphism `μ` given by `μ(x)` and `μ(z1) ... μ(z(t+1))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    t: usize,
    x: UTMat2,
    z: Vec<UTMat2>,
}

impl Instance {
    /// Fails with [`DecideError::UnsupportedInstance`] if some `μ(zi)` is singular.
    pub fn new(t: usize, x: UTMat2, z: Vec<UTMat2>) -> Result<Self, DecideError> {
        if t == 0 {
            return Err(DecideError::ZeroT);
        }
        if z.len() != t + 1 {
            return Err(DecideError::Arity {
                expected: t + 1,
                got: z.len(),
            });
        }
        if let Some(i) = z.iter().position(UTMat2::is_singular) {
            return Err(DecideError::UnsupportedInstance { index: i + 1 });
        }
        Ok(Instance { t, x, z })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn x(&self) -> &UTMat2 {
        &self.x
    }

    pub fn z(&self) -> &[UTMat2] {
        &self.z
    }

    /// `μ(z1 x^m1 z2 ... zt x^mt z(t+1))`. Panics if `exponents.len() != t`.
    pub fn image(&self, exponents: &[u32]) -> UTMat2 {
        word_image(&self.x, &self.z, exponents)
    }
}

/// `z[0] x^m1 z[1] ... x^mt z[t]` for arbitrary (possibly singular) matrices.
pub fn word_image(x: &UTMat2, z: &[UTMat2], exponents: &[u32]) -> UTMat2 {
    assert_eq!(z.len(), exponents.len() + 1, "need one more z than exponents");
    let mut acc = z[0].clone();
    for (m, zi) in exponents.iter().zip(&z[1..]) {
        acc = &(&acc * &x.pow(*m as u64)) * zi;
    }
    acc
}

/// Two distinct exponent vectors whose words have the same image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

impl Witness {
    pub fn new(left: Vec<u32>, right: Vec<u32>) -> Self {
        Witness { left, right }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} vs {:?}", self.left, self.right)
    }
}

/// Which case of the case analysis produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    #[serde(rename = "SingularX-t1")]
    SingularXT1,
    #[serde(rename = "SingularX-tGe2")]
    SingularXTGe2,
    #[serde(rename = "AMinus1-t1")]
    AMinus1T1,
    #[serde(rename = "AMinus1-tGe2")]
    AMinus1TGe2,
    #[serde(rename = "A1-t1")]
    A1T1,
    #[serde(rename = "A1-t2")]
    A1T2,
    #[serde(rename = "A1-tGe3")]
    A1TGe3,
    #[serde(rename = "Main-PairCollision")]
    MainPairCollision,
    #[serde(rename = "Main-SelfAmbiguity")]
    MainSelfAmbiguity,
    #[serde(rename = "Main-SelfCollision")]
    MainSelfCollision,
    #[serde(rename = "Main-Injective")]
    MainInjective,
    #[serde(rename = "ProblemB-Vacuous")]
    ProblemBVacuous,
}

impl Branch {
    pub const ALL: [Branch; 12] = [
        Branch::SingularXT1,
        Branch::SingularXTGe2,
        Branch::AMinus1T1,
        Branch::AMinus1TGe2,
        Branch::A1T1,
        Branch::A1T2,
        Branch::A1TGe3,
        Branch::MainPairCollision,
        Branch::MainSelfAmbiguity,
        Branch::MainSelfCollision,
        Branch::MainInjective,
        Branch::ProblemBVacuous,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::SingularXT1 => "SingularX-t1",
            Branch::SingularXTGe2 => "SingularX-tGe2",
            Branch::AMinus1T1 => "AMinus1-t1",
            Branch::AMinus1TGe2 => "AMinus1-tGe2",
            Branch::A1T1 => "A1-t1",
            Branch::A1T2 => "A1-t2",
            Branch::A1TGe3 => "A1-tGe3",
            Branch::MainPairCollision => "Main-PairCollision",
            Branch::MainSelfAmbiguity => "Main-SelfAmbiguity",
            Branch::MainSelfCollision => "Main-SelfCollision",
            Branch::MainInjective => "Main-Injective",
            Branch::ProblemBVacuous => "ProblemB-Vacuous",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown branch tag {0:?}")]
pub struct UnknownBranch(pub String);

impl FromStr for Branch {
    type Err = UnknownBranch;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Branch::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| UnknownBranch(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub injective: bool,
    pub branch: Branch,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn injective(branch: Branch) -> Self {
        Verdict {
            injective: true,
            branch,
            witness: None,
        }
    }

    fn collision(branch: Branch, left: Vec<u32>, right: Vec<u32>) -> Self {
        Verdict {
            injective: false,
            branch,
            witness: Some(Witness::new(left, right)),
        }
    }
}

/// True iff the vectors differ and their words have the same image.
pub fn verify_witness(inst: &Instance, left: &[u32], right: &[u32]) -> bool {
    left.len() == inst.t
        && right.len() == inst.t
        && left != right
        && inst.image(left) == inst.image(right)
}

pub fn decide(inst: &Instance) -> Result<Verdict, DecideError> {
    if let Some(i) = inst.z.iter().position(UTMat2::is_singular) {
        return Err(DecideError::UnsupportedInstance { index: i + 1 });
    }
    let verdict = match canonical_form(&inst.x) {
        Err(kind) => branch_singular_x(inst, kind),
        Ok(cf) if cf.a == Rational::from(-1) => branch_a_minus1(inst, &cf),
        Ok(cf) if cf.a.is_one() => branch_a_1(inst, &cf),
        Ok(_) => main_branch(inst)?,
    };
    if let Some(w) = &verdict.witness {
        if !verify_witness(inst, &w.left, &w.right) {
            return Err(DecideError::WitnessRejected(w.clone()));
        }
    }
    Ok(verdict)
}

/// `e_i` scaled: `value` at position `i` of a length-`t` vector.
fn unit(t: usize, i: usize, value: u32) -> Vec<u32> {
    let mut v = vec![0; t];
    v[i] = value;
    v
}

pub fn branch_singular_x(inst: &Instance, kind: SingularKind) -> Verdict {
    let t = inst.t;
    if t >= 2 {
        let mut left = vec![0; t];
        let mut right = vec![0; t];
        left[..2].copy_from_slice(&[2, 1]);
        right[..2].copy_from_slice(&[1, 2]);
        return Verdict::collision(Branch::SingularXTGe2, left, right);
    }
    // x^n = d^(n-1)·x for the nonzero diagonal entry d
    let diagonal = match kind {
        SingularKind::BottomRowZero => Some(&inst.x.e11),
        SingularKind::TopLeftZero => Some(&inst.x.e22),
        SingularKind::Zero => None,
    };
    match diagonal {
        Some(d) if d.is_one() => Verdict::collision(Branch::SingularXT1, vec![1], vec![2]),
        Some(d) if *d == Rational::from(-1) => Verdict::collision(Branch::SingularXT1, vec![1], vec![3]),
        Some(_) => Verdict::injective(Branch::SingularXT1),
        // x^2 = 0; x itself is zero only when the corner entry is
        None if inst.x.e12.is_zero() => Verdict::collision(Branch::SingularXT1, vec![1], vec![2]),
        None => Verdict::collision(Branch::SingularXT1, vec![2], vec![3]),
    }
}

pub fn branch_a_minus1(inst: &Instance, cf: &CanonicalForm) -> Verdict {
    let t = inst.t;
    if t >= 2 {
        // x^2 = c^2·I commutes with everything
        return Verdict::collision(Branch::AMinus1TGe2, unit(t, 0, 2), unit(t, t - 1, 2));
    }
    if cf.c.is_unit() {
        Verdict::collision(Branch::AMinus1T1, vec![0], vec![2])
    } else {
        // |det x| = c^2 != 1, so the determinants of x^n are pairwise distinct
        Verdict::injective(Branch::AMinus1T1)
    }
}

pub fn branch_a_1(inst: &Instance, cf: &CanonicalForm) -> Verdict {
    let t = inst.t;
    let c_unit = cf.c.is_unit();
    let c_neg = cf.c.is_negative();
    let b_zero = cf.b.is_zero();
    match t {
        1 => {
            if c_unit && b_zero {
                let n = if c_neg { 2 } else { 1 };
                Verdict::collision(Branch::A1T1, vec![0], vec![n])
            } else {
                Verdict::injective(Branch::A1T1)
            }
        }
        2 => {
            let (a2, c2) = (&inst.z[1].e11, &inst.z[1].e22);
            if !c_unit {
                if (a2 * &cf.b) == (c2 * &cf.b) {
                    Verdict::collision(Branch::A1T2, vec![1, 0], vec![0, 1])
                } else {
                    Verdict::injective(Branch::A1T2)
                }
            } else {
                let scale = if c_neg { 2 } else { 1 };
                let (left, right) = if b_zero {
                    (vec![0, 0], vec![1, 0])
                } else {
                    // x^m z2 x^n has corner A2·b·n + C2·b·m up to a constant
                    let ratio = a2 / c2;
                    let p = ratio.numer().abs().to_u32().expect("small ratio numerator");
                    let q = ratio.denom().to_u32().expect("small ratio denominator");
                    if ratio.is_negative() {
                        (vec![p, q], vec![0, 0])
                    } else {
                        (vec![p, 0], vec![0, q])
                    }
                };
                let s = |v: Vec<u32>| v.into_iter().map(|x| x * scale).collect();
                Verdict::collision(Branch::A1T2, s(left), s(right))
            }
        }
        _ => {
            let (a2, c2) = (&inst.z[1].e11, &inst.z[1].e22);
            let (a3, c3) = (&inst.z[2].e11, &inst.z[2].e22);
            let weights = [c2 * c3, a2 * c3, a2 * a3];
            let kernel = small_kernel_vector(&weights);
            let mut left = vec![0; t];
            let mut right = vec![0; t];
            for (i, k) in kernel.iter().enumerate() {
                let magnitude = k.abs().to_u32().expect("small kernel entry");
                if k.is_positive() {
                    left[i] = magnitude;
                } else {
                    right[i] = magnitude;
                }
            }
            Verdict::collision(Branch::A1TGe3, left, right)
        }
    }
}

/// A nonzero integer vector orthogonal to both `(1, 1, 1)` and `weights`.
fn small_kernel_vector(weights: &[Rational; 3]) -> [BigInt; 3] {
    let lcd = common_denominator(weights.iter());
    let w: Vec<BigInt> = weights
        .iter()
        .map(|x| (x * &Rational::from_integer(lcd.clone())).to_integer().expect("cleared denominators"))
        .collect();
    let cross = [&w[2] - &w[1], &w[0] - &w[2], &w[1] - &w[0]];
    if cross.iter().all(Zero::is_zero) {
        return [BigInt::from(1), BigInt::from(-1), BigInt::zero()];
    }
    let g = cross.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    cross.map(|x| x / &g)
}

/// Words of `L_t` whose zero exponents are exactly at the positions in `zeros`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetProblem {
    t: usize,
    /// 1-based positions with exponent zero.
    pub zeros: BTreeSet<usize>,
    pub s: usize,
    /// `s + 1` matrices, multiplied together across the zero positions.
    pub collapsed: Vec<UTMat2>,
    /// `None` when `s = 0`.
    pub seq: Option<DigitSequence>,
}

impl SubsetProblem {
    /// Spreads `s` positive exponents over the positions outside the subset.
    pub fn expand(&self, exponents: &[u32]) -> Vec<u32> {
        let mut free = exponents.iter();
        (1..=self.t)
            .map(|i| {
                if self.zeros.contains(&i) {
                    0
                } else {
                    *free.next().expect("one exponent per free position")
                }
            })
            .collect()
    }

    fn pattern(&self) -> Option<PatternSpec> {
        self.seq.as_ref().map(PatternSpec::from_sequence)
    }
}

/// Requires `μ(x)` nonsingular with `a` not in `{-1, 0, 1}`.
pub fn subset_problem(inst: &Instance, zeros: &BTreeSet<usize>) -> Result<SubsetProblem, DecideError> {
    let cf = canonical_form(&inst.x).map_err(|_| NumerationError::SingularInput)?;
    let mut collapsed = Vec::with_capacity(inst.t + 1 - zeros.len());
    let mut current = inst.z[0].clone();
    for i in 1..=inst.t {
        if zeros.contains(&i) {
            current = &current * &inst.z[i];
        } else {
            collapsed.push(current);
            current = inst.z[i].clone();
        }
    }
    collapsed.push(current);
    let s = collapsed.len() - 1;
    let seq = if s == 0 {
        None
    } else {
        Some(digit_sequence(&cf, &collapsed)?)
    };
    Ok(SubsetProblem {
        t: inst.t,
        zeros: zeros.clone(),
        s,
        collapsed,
        seq,
    })
}

/// Result of comparing the words of two subset languages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairOutcome {
    /// Exactly one side has no positive exponents: images can never agree.
    Vacuous,
    /// Both sides are the single word with all exponents zero.
    SingleWord,
    NoCollision,
    SelfAmbiguity(Witness),
    SelfCollision(Witness),
    PairCollision(Witness),
}

impl PairOutcome {
    pub fn branch(&self) -> Branch {
        match self {
            PairOutcome::Vacuous => Branch::ProblemBVacuous,
            PairOutcome::SingleWord | PairOutcome::NoCollision => Branch::MainInjective,
            PairOutcome::SelfAmbiguity(_) => Branch::MainSelfAmbiguity,
            PairOutcome::SelfCollision(_) => Branch::MainSelfCollision,
            PairOutcome::PairCollision(_) => Branch::MainPairCollision,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            PairOutcome::SelfAmbiguity(w) | PairOutcome::SelfCollision(w) | PairOutcome::PairCollision(w) => Some(w),
            _ => None,
        }
    }
}

/// Looks for two distinct words, one per side, with the same image. With
/// `same`, both sides are the same subset.
pub fn check_pair(left: &SubsetProblem, right: &SubsetProblem, same: bool) -> Result<PairOutcome, DecideError> {
    let (top, bottom, seq) = match (left.pattern(), right.pattern(), &left.seq) {
        (None, None, _) => return Ok(PairOutcome::SingleWord),
        (None, Some(_), _) | (Some(_), None, _) => return Ok(PairOutcome::Vacuous),
        (Some(top), Some(bottom), Some(seq)) => (top, bottom, seq),
        (Some(_), Some(_), None) => unreachable!("a pattern implies a sequence"),
    };

    if same {
        if let Some(amb) = ambiguity_check(&pattern_automaton(&top)) {
            let w = Witness::new(
                left.expand(&exponents_from_positions(left.s, &amb.first)),
                left.expand(&exponents_from_positions(left.s, &amb.second)),
            );
            return Ok(PairOutcome::SelfAmbiguity(w));
        }
    }

    // equal images need equal exponent sums, which is equal word length
    let factor = Rational::from_integer(common_denominator(
        top.digit_set().iter().chain(bottom.digit_set().iter()).map(Digit::value),
    ));
    let (top, bottom) = (top.scaled(&factor), bottom.scaled(&factor));
    let digits: BTreeSet<Digit> = top.digit_set().into_iter().chain(bottom.digit_set()).collect();
    let digits: Vec<Digit> = digits.into_iter().collect();
    let letters: Vec<PairLetter> = digits
        .iter()
        .flat_map(|a| digits.iter().map(move |b| PairLetter::new(a.clone(), b.clone())))
        .collect();

    let pairs = pair_pattern_automaton(&top, &bottom, same).with_alphabet(letters)?;
    let base = Base::new(seq.a.clone())?;
    let equal = EqualityAutomaton::msd_first(&base, &digits)?;
    let joint = product(&pairs, &equal)?;
    let Some(run) = joint.shortest_run() else {
        return Ok(PairOutcome::NoCollision);
    };
    let (tops, bottoms): (Vec<usize>, Vec<usize>) = run
        .states
        .iter()
        .map(|&i| {
            let state = &joint.label_of(i).0;
            (state.top, state.bottom)
        })
        .unzip();
    let w = Witness::new(
        left.expand(&exponents_from_positions(left.s, &tops)),
        right.expand(&exponents_from_positions(right.s, &bottoms)),
    );
    Ok(if same {
        PairOutcome::SelfCollision(w)
    } else {
        PairOutcome::PairCollision(w)
    })
}

fn main_branch(inst: &Instance) -> Result<Verdict, DecideError> {
    let subsets = (0u64..1 << inst.t)
        .map(|mask| {
            let zeros = (1..=inst.t).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            subset_problem(inst, &zeros)
        })
        .collect::<Result<Vec<_>, _>>()?;
    for i in 0..subsets.len() {
        for j in i..subsets.len() {
            let outcome = check_pair(&subsets[i], &subsets[j], i == j)?;
            if let Some(w) = outcome.witness() {
                return Ok(Verdict::collision(outcome.branch(), w.left.clone(), w.right.clone()));
            }
        }
    }
    Ok(Verdict::injective(Branch::MainInjective))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{exponent_vectors, search_collisions};

    fn m(e11: i64, e12: i64, e22: i64) -> UTMat2 {
        UTMat2::new(e11, e12, e22)
    }

    fn id() -> UTMat2 {
        UTMat2::identity()
    }

    fn inst(x: UTMat2, z: Vec<UTMat2>) -> Instance {
        Instance::new(z.len() - 1, x, z).unwrap()
    }

    fn run(x: UTMat2, z: Vec<UTMat2>) -> Verdict {
        decide(&inst(x, z)).unwrap()
    }

    #[test]
    fn paper_examples() {
        let v = run(m(3, 0, 1), vec![id(), m(2, 1, 3), id()]);
        assert!(v.injective);
        assert_eq!(v.branch, Branch::MainInjective);

        let v = run(id(), vec![id(), id()]);
        assert_eq!((v.injective, v.branch), (false, Branch::A1T1));
        assert_eq!(v.witness, Some(Witness::new(vec![0], vec![1])));

        // c = 2, b = 1
        let x = m(2, 2, 2);
        let v = run(x.clone(), vec![id(), m(3, 0, 3), id()]);
        assert_eq!((v.injective, v.branch), (false, Branch::A1T2));
        let v = run(x.clone(), vec![id(), m(3, 0, 1), id()]);
        assert_eq!((v.injective, v.branch), (true, Branch::A1T2));

        let n = m(1, 0, 2);
        let v = run(x, vec![id(), n.clone(), n, id()]);
        assert_eq!((v.injective, v.branch), (false, Branch::A1TGe3));

        let v = run(m(1, 1, 0), vec![id(), m(2, 1, 3), id()]);
        assert_eq!((v.injective, v.branch), (false, Branch::SingularXTGe2));
        assert_eq!(v.witness, Some(Witness::new(vec![2, 1], vec![1, 2])));
    }

    #[test]
    fn singular_x_with_one_block() {
        let z = || vec![m(2, 1, 3), m(1, -1, 5)];
        assert!(run(m(2, 5, 0), z()).injective);
        assert!(run(m(0, 5, -3), z()).injective);
        for x in [m(1, 5, 0), m(-1, 5, 0), m(0, 5, 1), m(0, 5, -1), m(0, 0, 0), m(0, 4, 0)] {
            let v = run(x.clone(), z());
            assert_eq!((v.injective, v.branch), (false, Branch::SingularXT1), "{x}");
        }
    }

    #[test]
    fn a_equals_minus_one() {
        let v = run(m(-1, 0, 1), vec![id(), m(2, 1, 3), id()]);
        assert_eq!((v.injective, v.branch), (false, Branch::AMinus1TGe2));
        let v = run(m(-1, 0, 1), vec![m(2, 1, 3), id()]);
        assert_eq!((v.injective, v.branch), (false, Branch::AMinus1T1));
        let v = run(m(1, 7, -1), vec![m(2, 1, 3), id()]);
        assert_eq!((v.injective, v.branch), (false, Branch::AMinus1T1));
        let v = run(m(-2, 0, 2), vec![m(2, 1, 3), id()]);
        assert_eq!((v.injective, v.branch), (true, Branch::AMinus1T1));
    }

    #[test]
    fn a_equals_one_with_unit_c() {
        for c in [1, -1] {
            for (b, n2) in [(0, m(2, 1, 3)), (1, m(2, 1, 3)), (1, m(-2, 1, 3)), (3, m(4, 0, 6))] {
                let v = run(m(c, b, c), vec![m(1, 1, 2), n2.clone(), m(3, 0, 1)]);
                assert_eq!((v.injective, v.branch), (false, Branch::A1T2), "c={c} b={b} {n2}");
            }
            let v = run(m(c, 1, c), vec![id(), id()]);
            assert_eq!((v.injective, v.branch), (true, Branch::A1T1));
        }
        assert!(run(m(2, 0, 2), vec![id(), id()]).injective);
    }

    #[test]
    fn a_equals_one_with_equal_weights() {
        let v = run(m(1, 1, 1), vec![id(), id(), id(), id(), id()]);
        assert_eq!((v.injective, v.branch), (false, Branch::A1TGe3));
        assert_eq!(v.witness.unwrap().left.len(), 4);
        let v = run(m(3, 3, 3), vec![id(), m(2, 0, 1), m(1, 0, 5), m(-1, 1, 7)]);
        assert!(!v.injective);
    }

    #[test]
    fn main_branch_fixtures() {
        let v = run(m(1, 1, -2), vec![m(1, -2, 3), m(-2, -1, 1), m(3, 0, 2)]);
        assert_eq!((v.injective, v.branch), (false, Branch::MainSelfCollision));

        let v = run(m(3, 3, 1), vec![m(-2, 3, 3), m(2, 0, 2), m(-2, 1, 3)]);
        assert_eq!((v.injective, v.branch), (false, Branch::MainSelfAmbiguity));

        let z = vec![m(-2, -2, 1), m(-1, -2, -2), m(-2, -1, 2), m(3, 2, 1)];
        let v = run(m(2, 1, 3), z);
        assert_eq!((v.injective, v.branch), (false, Branch::MainPairCollision));
    }

    #[test]
    fn rational_base_below_one() {
        // a = 1/2
        let v = run(m(1, 0, 2), vec![id(), m(2, 1, 3), id()]);
        let report = search_collisions(&inst(m(1, 0, 2), vec![id(), m(2, 1, 3), id()]), 6);
        assert_eq!(v.injective, !report.found);
    }

    #[test]
    fn subset_problems() {
        let x = m(3, 0, 1);
        let z = vec![m(1, 2, 1), m(2, 1, 3), m(5, 0, 1)];
        let i = inst(x, z.clone());
        let none = subset_problem(&i, &BTreeSet::new()).unwrap();
        assert_eq!((none.s, &none.collapsed), (2, &z));
        let all = subset_problem(&i, &BTreeSet::from([1, 2])).unwrap();
        assert_eq!(all.s, 0);
        assert_eq!(all.collapsed, vec![UTMat2::product(&z)]);
        assert!(all.seq.is_none());
        let first = subset_problem(&i, &BTreeSet::from([1])).unwrap();
        assert_eq!(first.collapsed, vec![&z[0] * &z[1], z[2].clone()]);
        assert_eq!(UTMat2::product(&first.collapsed), UTMat2::product(&z));
        assert_eq!(first.expand(&[4]), vec![0, 4]);
        assert_eq!(check_pair(&all, &none, false).unwrap(), PairOutcome::Vacuous);
        assert_eq!(check_pair(&all, &none, false).unwrap().branch(), Branch::ProblemBVacuous);
        assert_eq!(check_pair(&all, &all, true).unwrap(), PairOutcome::SingleWord);
        assert_eq!(check_pair(&none, &none, true).unwrap(), PairOutcome::NoCollision);
    }

    #[test]
    fn subsets_partition_the_words() {
        let x = m(2, 1, 3);
        let z = vec![m(1, 2, 1), m(2, 1, 3), m(5, 0, 1), m(-1, 1, 2)];
        let i = inst(x.clone(), z);
        for v in exponent_vectors(3, 0, 2) {
            let zeros: BTreeSet<usize> = (1..=3).filter(|&k| v[k - 1] == 0).collect();
            let sp = subset_problem(&i, &zeros).unwrap();
            let free: Vec<u32> = v.iter().copied().filter(|&e| e > 0).collect();
            assert_eq!(sp.expand(&free), v);
            assert_eq!(word_image(&x, &sp.collapsed, &free), i.image(&v));
            if let Some(seq) = &sp.seq {
                assert_eq!(seq.evaluate(&free).unwrap(), i.image(&v));
            }
        }
    }

    #[test]
    fn witnesses_and_errors() {
        let i = inst(id(), vec![id(), id()]);
        assert!(!verify_witness(&i, &[1], &[1]));
        assert!(verify_witness(&i, &[0], &[1]));
        assert!(!verify_witness(&i, &[0, 1], &[1]));
        assert_eq!(
            Instance::new(1, id(), vec![id(), m(1, 0, 0)]),
            Err(DecideError::UnsupportedInstance { index: 2 })
        );
        assert_eq!(
            Instance::new(2, id(), vec![id(), id()]),
            Err(DecideError::Arity { expected: 3, got: 2 })
        );
    }

    #[test]
    fn branch_tags_round_trip() {
        for b in Branch::ALL {
            assert_eq!(b.as_str().parse::<Branch>().unwrap(), b);
            assert_eq!(serde_json::to_string(&b).unwrap(), format!("\"{b}\""));
        }
        assert!("Main".parse::<Branch>().is_err());
    }
}
