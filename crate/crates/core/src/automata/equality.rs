//! The automaton recognising pairs of equal-length digit words with equal value
//! in a rational base `r = u/v`.
//!
//! Reading least-significant digits first, the state is the carry `i`: on the
//! pair `(a, b)` it moves to `j` with `i + a - b = r·j`. With digits in
//! `{-m+1, ..., m-1}` and `|r| > 1` every carry stays within
//! `d = (2m - 2) / (|r| - 1)`, so the states are the integers of `[-d, d]` and
//! `q0` is both initial and accepting.

use std::fmt;

use num_traits::ToPrimitive;

use super::{Automaton, AutomataError, Nfa, PairLetter};
use crate::numeration::{Base, Digit};

/// Carries above this bound are refused rather than explored.
const MAX_CARRY: i64 = 1 << 26;

/// Carry state `q{i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EqState(pub i64);

impl fmt::Display for EqState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

/// Direction in which pair words are consumed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reading {
    LeastSignificantFirst,
    MostSignificantFirst,
}

/// Implicit equal-value automaton; transitions are computed on demand.
#[derive(Clone, Debug)]
pub struct EqualityAutomaton {
    /// Numerator and denominator of the expanding base actually used.
    u: i128,
    v: i128,
    bound: i64,
    /// `true` when transitions run backwards (carry `j` to carry `i`).
    backwards: bool,
    reading: Reading,
    digits: Vec<i64>,
    letters: Vec<PairLetter>,
}

fn digit_to_i64(d: &Digit) -> Result<i64, AutomataError> {
    d.value()
        .to_i64()
        .ok_or_else(|| AutomataError::NonIntegerDigit(d.to_string()))
}

impl EqualityAutomaton {
    /// The automaton for base `r` reading least-significant digits first.
    /// Requires `|r| > 1` and integer digits.
    pub fn lsd_first(base: &Base, digits: &[Digit]) -> Result<Self, AutomataError> {
        if !base.is_expanding() {
            return Err(AutomataError::BadBase(base.value().to_string()));
        }
        Self::build(base, digits, false, Reading::LeastSignificantFirst)
    }

    /// An automaton accepting pair words, read most-significant digit first,
    /// whose tracks have equal value in base `r`. For `|r| > 1` this is the
    /// reversal of [`EqualityAutomaton::lsd_first`]; for `|r| < 1` it is the
    /// least-significant-first automaton of `1/r`, since equal-length words
    /// agree in base `r` exactly when their reversals agree in base `1/r`.
    pub fn msd_first(base: &Base, digits: &[Digit]) -> Result<Self, AutomataError> {
        if base.is_expanding() {
            Self::build(base, digits, true, Reading::MostSignificantFirst)
        } else {
            Self::build(&base.inverse(), digits, false, Reading::MostSignificantFirst)
        }
    }

    fn build(base: &Base, digits: &[Digit], backwards: bool, reading: Reading) -> Result<Self, AutomataError> {
        let too_large = || AutomataError::TooLarge(format!("base {}", base.value()));
        let u = base.numer().to_i64().ok_or_else(too_large)? as i128;
        let v = base.denom().to_i64().ok_or_else(too_large)? as i128;
        let mut ints = digits
            .iter()
            .map(digit_to_i64)
            .collect::<Result<Vec<_>, _>>()?;
        ints.sort_unstable();
        ints.dedup();
        let m = ints.iter().map(|d| d.unsigned_abs() as i128).max().unwrap_or(0) + 1;
        // d = (2m - 2) / (|u|/v - 1) = (2m - 2)·v / (|u| - v)
        let bound = ((2 * m - 2) * v) / (u.abs() - v);
        if bound > MAX_CARRY as i128 {
            return Err(AutomataError::TooLarge(format!("{}", 2 * bound + 1)));
        }
        let mut letters = Vec::with_capacity(ints.len() * ints.len());
        for &a in &ints {
            for &b in &ints {
                letters.push(PairLetter::new(a, b));
            }
        }
        letters.sort();
        Ok(EqualityAutomaton {
            u,
            v,
            bound: bound as i64,
            backwards,
            reading,
            digits: ints,
            letters,
        })
    }

    pub fn reading(&self) -> Reading {
        self.reading
    }

    /// Largest carry magnitude, `floor(d)`.
    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn state_count(&self) -> usize {
        (2 * self.bound + 1) as usize
    }

    pub fn digits(&self) -> &[i64] {
        &self.digits
    }

    fn in_range(&self, x: i128) -> Option<i64> {
        (x.abs() <= self.bound as i128).then_some(x as i64)
    }

    fn next(&self, carry: i64, a: i64, b: i64) -> Option<i64> {
        let (i, a, b) = (carry as i128, a as i128, b as i128);
        if self.backwards {
            // i + a - b = r·j, solved for i given j = carry
            let scaled = self.u * i;
            if scaled % self.v != 0 {
                return None;
            }
            self.in_range(scaled / self.v - a + b)
        } else {
            let scaled = (i + a - b) * self.v;
            if scaled % self.u != 0 {
                return None;
            }
            self.in_range(scaled / self.u)
        }
    }

    fn letter_ints(letter: &PairLetter) -> Option<(i64, i64)> {
        Some((letter.top.value().to_i64()?, letter.bottom.value().to_i64()?))
    }

    /// Materializes every state in `[-d, d]`, indexed from `-d` upwards.
    pub fn to_nfa(&self) -> Nfa<EqState, PairLetter> {
        let mut nfa = Nfa::new(self.letters.iter().cloned());
        for i in -self.bound..=self.bound {
            nfa.add_state(EqState(i));
        }
        let offset = self.bound;
        for i in -self.bound..=self.bound {
            for letter in &self.letters {
                let (a, b) = Self::letter_ints(letter).expect("letters are built from integers");
                if let Some(j) = self.next(i, a, b) {
                    nfa.add_transition((i + offset) as usize, letter.clone(), (j + offset) as usize)
                        .expect("state in range");
                }
            }
        }
        nfa.set_initial(offset as usize).expect("q0 exists");
        nfa.set_accepting(offset as usize).expect("q0 exists");
        nfa
    }
}

impl Automaton for EqualityAutomaton {
    type State = i64;
    type Label = EqState;
    type Letter = PairLetter;

    fn alphabet(&self) -> Vec<PairLetter> {
        self.letters.clone()
    }

    fn initial_states(&self) -> Vec<i64> {
        vec![0]
    }

    fn is_accepting(&self, state: &i64) -> bool {
        *state == 0
    }

    fn label(&self, state: &i64) -> EqState {
        EqState(*state)
    }

    fn outgoing(&self, state: &i64) -> Vec<(PairLetter, i64)> {
        self.letters
            .iter()
            .filter_map(|l| {
                let (a, b) = Self::letter_ints(l)?;
                self.next(*state, a, b).map(|j| (l.clone(), j))
            })
            .collect()
    }

    fn successors(&self, state: &i64, letter: &PairLetter) -> Vec<i64> {
        match Self::letter_ints(letter) {
            Some((a, b)) if self.digits.binary_search(&a).is_ok() && self.digits.binary_search(&b).is_ok() => {
                self.next(*state, a, b).into_iter().collect()
            }
            _ => Vec::new(),
        }
    }
}

/// The least-significant-first equal-value automaton for base `r` over the
/// integer digit set `digits`, fully materialized.
pub fn equality_automaton(base: &Base, digits: &[Digit]) -> Result<Nfa<EqState, PairLetter>, AutomataError> {
    Ok(EqualityAutomaton::lsd_first(base, digits)?.to_nfa())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::automata::{product, reverse, zip_tracks};
    use crate::numeration::{value_of, DigitWord};

    fn digits(range: std::ops::RangeInclusive<i64>) -> Vec<Digit> {
        range.map(Digit::from).collect()
    }

    fn base(text: &str) -> Base {
        Base::new(rat(text)).unwrap()
    }

    #[test]
    fn state_counts() {
        // d = (2·3 - 2) / (3 - 1) = 2
        assert_eq!(equality_automaton(&base("3"), &digits(-2..=2)).unwrap().len(), 5);
        // d = 4 / (1/2) = 8
        assert_eq!(equality_automaton(&base("3/2"), &digits(-2..=2)).unwrap().len(), 17);
        // d = 4 / (2 - 1) = 4
        assert_eq!(equality_automaton(&base("-2"), &digits(-2..=2)).unwrap().len(), 9);
        // d = 4 / (2/3) = 6
        assert_eq!(equality_automaton(&base("5/3"), &digits(-2..=2)).unwrap().len(), 13);
    }

    #[test]
    fn rejects_contracting_or_degenerate_bases() {
        assert!(matches!(
            equality_automaton(&base("2/3"), &digits(-1..=1)),
            Err(AutomataError::BadBase(_))
        ));
        assert!(matches!(
            equality_automaton(&base("2"), &[Digit(rat("1/2"))]),
            Err(AutomataError::NonIntegerDigit(_))
        ));
    }

    #[test]
    fn accepts_equal_values_after_reversal() {
        let nfa = equality_automaton(&base("3"), &digits(-2..=2)).unwrap();
        let u1 = DigitWord::from_ints(&[1, -2]);
        let u2 = DigitWord::from_ints(&[0, 1]);
        assert_eq!(value_of(&u1, &rat("3")), value_of(&u2, &rat("3")));
        let lsd = zip_tracks(u1.reversed().digits(), u2.reversed().digits());
        assert!(nfa.accepts(&lsd));

        let w1 = DigitWord::from_ints(&[1, 1]);
        let w2 = DigitWord::from_ints(&[0, 0]);
        assert!(!nfa.accepts(&zip_tracks(w1.reversed().digits(), w2.reversed().digits())));
        assert!(nfa.accepts(&[]));
    }

    #[test]
    fn msd_view_matches_reversed_nfa() {
        for r in ["3", "-2", "3/2", "-3/2"] {
            let b = base(r);
            let ds = digits(-2..=2);
            let reversed = reverse(&equality_automaton(&b, &ds).unwrap());
            let implicit = EqualityAutomaton::msd_first(&b, &ds).unwrap();
            assert_eq!(implicit.to_nfa().len(), reversed.len());
            // same language on all words of length <= 2
            let letters = implicit.alphabet();
            for x in &letters {
                for y in &letters {
                    let w = vec![x.clone(), y.clone()];
                    assert_eq!(implicit.to_nfa().accepts(&w), reversed.accepts(&w), "{r} {w:?}");
                }
            }
        }
    }

    #[test]
    fn contracting_base_uses_inverse() {
        let b = base("2/3");
        let ds = digits(-2..=2);
        let msd = EqualityAutomaton::msd_first(&b, &ds).unwrap();
        assert_eq!(msd.reading(), Reading::MostSignificantFirst);
        let nfa = msd.to_nfa();
        let r = rat("2/3");
        let cases: [(&[i64], &[i64]); 3] = [(&[2, 0], &[0, 2]), (&[2, 0], &[1, 2]), (&[1, -2, 0], &[0, 1, -2])];
        for (t, b) in cases {
            let (u1, u2) = (DigitWord::from_ints(t), DigitWord::from_ints(b));
            let eq = value_of(&u1, &r) == value_of(&u2, &r);
            assert_eq!(nfa.accepts(&zip_tracks(u1.digits(), u2.digits())), eq, "{u1} vs {u2}");
        }
    }

    #[test]
    fn implicit_product_equals_materialized_product() {
        let b = base("3/2");
        let ds = digits(-1..=1);
        let implicit = EqualityAutomaton::msd_first(&b, &ds).unwrap();
        let explicit = implicit.to_nfa();
        let p1 = product(&explicit, &implicit).unwrap();
        let p2 = product(&explicit, &explicit).unwrap();
        assert_eq!(p1.len(), p2.len());
        assert_eq!(p1.transition_count(), p2.transition_count());
    }

    #[test]
    fn dot_labels_use_carry_names() {
        let dot = equality_automaton(&base("3"), &digits(-1..=1)).unwrap().to_dot();
        assert!(dot.contains("label=\"q0\", shape=doublecircle"));
        assert!(dot.contains("label=\"1|-1\""));
    }
}
