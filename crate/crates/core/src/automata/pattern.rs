//! Automata for the patterned words `q1 p1* q2 ... qs ps* q(s+1)`.
//!
//! A pattern automaton has states `0..=s+1`: state 0 is initial, reading `q1`
//! leads to state 1, state `i` loops on `pi` and advances on `q(i+1)`, and
//! state `s+1` accepts. Accepting runs are in bijection with loop counts, and
//! the loop count at state `i` is `m(s+1-i) - 1`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use super::{AutomataError, Nfa, PairLetter};
use crate::algebra::Rational;
use crate::numeration::{Digit, DigitSequence};

/// The expression `fixed[0] starred[0]* fixed[1] ... starred[s-1]* fixed[s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSpec {
    fixed: Vec<Digit>,
    starred: Vec<Digit>,
}

impl PatternSpec {
    pub fn new(fixed: Vec<Digit>, starred: Vec<Digit>) -> Result<Self, AutomataError> {
        if fixed.len() != starred.len() + 1 {
            return Err(AutomataError::PatternShape {
                fixed: fixed.len(),
                starred: starred.len(),
            });
        }
        Ok(PatternSpec { fixed, starred })
    }

    pub fn from_ints(fixed: &[i64], starred: &[i64]) -> Result<Self, AutomataError> {
        PatternSpec::new(
            fixed.iter().map(|&x| Digit::from(x)).collect(),
            starred.iter().map(|&x| Digit::from(x)).collect(),
        )
    }

    /// The pattern of a digit sequence: fixed digits `q`, starred digits `p`.
    pub fn from_sequence(seq: &DigitSequence) -> Self {
        PatternSpec {
            fixed: seq.q.iter().cloned().map(Digit).collect(),
            starred: seq.p.iter().cloned().map(Digit).collect(),
        }
    }

    pub fn s(&self) -> usize {
        self.starred.len()
    }

    pub fn fixed(&self) -> &[Digit] {
        &self.fixed
    }

    pub fn starred(&self) -> &[Digit] {
        &self.starred
    }

    pub fn scaled(&self, factor: &Rational) -> PatternSpec {
        let scale = |ds: &[Digit]| ds.iter().map(|d| Digit(d.value() * factor)).collect();
        PatternSpec {
            fixed: scale(&self.fixed),
            starred: scale(&self.starred),
        }
    }

    pub fn digit_set(&self) -> BTreeSet<Digit> {
        self.fixed.iter().chain(&self.starred).cloned().collect()
    }

    /// Moves out of pattern state `state`: `(letter, target)` pairs.
    fn moves(&self, state: usize) -> Vec<(&Digit, usize)> {
        let s = self.s();
        let mut out = Vec::with_capacity(2);
        if state == 0 {
            out.push((&self.fixed[0], 1));
        } else if state <= s {
            out.push((&self.starred[state - 1], state));
            out.push((&self.fixed[state], state + 1));
        }
        out
    }

    fn accepting_state(&self) -> usize {
        self.s() + 1
    }
}

pub fn pattern_automaton(pattern: &PatternSpec) -> Nfa<usize, Digit> {
    let mut nfa = Nfa::new(pattern.digit_set());
    let states = pattern.accepting_state() + 1;
    for i in 0..states {
        nfa.add_state(i);
    }
    for i in 0..states {
        for (letter, to) in pattern.moves(i) {
            nfa.add_transition(i, letter.clone(), to)
                .expect("pattern letters are in the alphabet");
        }
    }
    nfa.set_initial(0).expect("state 0 exists");
    nfa.set_accepting(pattern.accepting_state())
        .expect("final state exists");
    nfa
}

/// State of the synchronized pattern product: one position per track, plus a
/// flag recording whether the tracks have already differed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairPatternState {
    pub top: usize,
    pub bottom: usize,
    pub differed: bool,
}

impl fmt::Display for PairPatternState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.top, self.bottom)?;
        if self.differed {
            f.write_str("*")?;
        }
        Ok(())
    }
}

/// Pair words whose top track matches `top` and bottom track matches `bottom`.
/// With `require_diff`, the two tracks must also differ as words.
pub fn pair_pattern_automaton(
    top: &PatternSpec,
    bottom: &PatternSpec,
    require_diff: bool,
) -> Nfa<PairPatternState, PairLetter> {
    let top_digits = top.digit_set();
    let bottom_digits = bottom.digit_set();
    let alphabet = top_digits
        .iter()
        .flat_map(|a| bottom_digits.iter().map(move |b| PairLetter::new(a.clone(), b.clone())));
    let mut nfa = Nfa::new(alphabet);
    let mut index: BTreeMap<PairPatternState, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();

    let start = PairPatternState {
        top: 0,
        bottom: 0,
        differed: false,
    };
    let s0 = nfa.add_state(start);
    index.insert(start, s0);
    queue.push_back(start);
    nfa.set_initial(s0).expect("start state exists");

    while let Some(state) = queue.pop_front() {
        let from = index[&state];
        if state.top == top.accepting_state()
            && state.bottom == bottom.accepting_state()
            && (state.differed || !require_diff)
        {
            nfa.set_accepting(from).expect("state exists");
        }
        for (a, ti) in top.moves(state.top) {
            for (b, bi) in bottom.moves(state.bottom) {
                let next = PairPatternState {
                    top: ti,
                    bottom: bi,
                    differed: require_diff && (state.differed || a != b),
                };
                let to = *index.entry(next).or_insert_with(|| {
                    queue.push_back(next);
                    nfa.add_state(next)
                });
                nfa.add_transition(from, PairLetter::new(a.clone(), b.clone()), to)
                    .expect("letters come from the pattern digits");
            }
        }
    }
    nfa
}

/// Recovers the exponents `(m1, ..., ms)` from the sequence of pattern states
/// visited by an accepting run.
pub fn exponents_from_positions(s: usize, positions: &[usize]) -> Vec<u32> {
    let mut exps = vec![1u32; s];
    for w in positions.windows(2) {
        if w[0] == w[1] && (1..=s).contains(&w[0]) {
            exps[s - w[0]] += 1;
        }
    }
    exps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;
    use crate::automata::{split_tracks, zip_tracks};
    use crate::numeration::{instantiate_word, DigitSequence, DigitWord};

    fn word(ints: &[i64]) -> Vec<Digit> {
        ints.iter().map(|&x| Digit::from(x)).collect()
    }

    fn seq_of(p: &PatternSpec) -> DigitSequence {
        DigitSequence {
            s: p.s(),
            q: p.fixed().iter().map(|d| d.value().clone()).collect(),
            p: p.starred().iter().map(|d| d.value().clone()).collect(),
            d1: Rational::one(),
            d2: Rational::one(),
            c: Rational::one(),
            a: Rational::from(2),
        }
    }

    /// Independent matcher: does `w` match the pattern, by instantiating all
    /// exponent tuples whose word length equals `|w|`.
    fn brute_matches(p: &PatternSpec, w: &[Digit]) -> bool {
        tuples(p.s(), w.len()).iter().any(|k| {
            instantiate_word(&seq_of(p), k).unwrap().digits() == w
        })
    }

    /// All exponent tuples (entries >= 1) whose instantiated word has length `len`.
    fn tuples(s: usize, len: usize) -> Vec<Vec<u32>> {
        if len < s + 1 {
            return Vec::new();
        }
        let total = (len - 1) as u32;
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(s: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == s {
                if remaining == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            for k in 1..=remaining {
                cur.push(k);
                rec(s, remaining - k, cur, out);
                cur.pop();
            }
        }
        rec(s, total, &mut cur, &mut out);
        out
    }

    #[test]
    fn pattern_examples() {
        let single = PatternSpec::from_ints(&[1], &[]).unwrap();
        let a = pattern_automaton(&single);
        assert!(a.accepts(&word(&[1])));
        assert!(!a.accepts(&word(&[1, 1])));
        assert!(!a.accepts(&[]));

        let p = PatternSpec::from_ints(&[1, 0], &[0]).unwrap();
        let a = pattern_automaton(&p);
        for n in 0..5 {
            let mut w = vec![1];
            w.extend(std::iter::repeat_n(0, n + 1));
            assert!(a.accepts(&word(&w)));
        }
        assert!(!a.accepts(&word(&[1])));

        let p = PatternSpec::from_ints(&[1, 3], &[2]).unwrap();
        let a = pattern_automaton(&p).with_alphabet(word(&[1, 2, 3])).unwrap();
        assert!(!a.accepts(&word(&[1, 2])));
    }

    #[test]
    fn pattern_shape_is_checked() {
        assert_eq!(
            PatternSpec::from_ints(&[1, 2], &[3, 4]),
            Err(AutomataError::PatternShape { fixed: 2, starred: 2 })
        );
    }

    #[test]
    fn pair_pattern_examples() {
        let one = PatternSpec::from_ints(&[1], &[]).unwrap();
        let plain = pair_pattern_automaton(&one, &one, false);
        assert_eq!(plain.emptiness_witness(), Some(zip_tracks(&word(&[1]), &word(&[1]))));
        let diff = pair_pattern_automaton(&one, &one, true);
        assert_eq!(diff.emptiness_witness(), None);
    }

    #[test]
    fn pair_pattern_matches_brute_force() {
        let p1 = PatternSpec::from_ints(&[1, 0], &[0]).unwrap();
        let p2 = PatternSpec::from_ints(&[1, 1], &[0]).unwrap();
        let digits = [0i64, 1];
        for require_diff in [false, true] {
            let nfa = pair_pattern_automaton(&p1, &p2, require_diff)
                .with_alphabet(
                    digits
                        .iter()
                        .flat_map(|&a| digits.iter().map(move |&b| PairLetter::new(a, b))),
                )
                .unwrap();
            for len in 0..=5u32 {
                for code in 0..(1u32 << (2 * len)) {
                    let top: Vec<i64> = (0..len).map(|i| ((code >> i) & 1) as i64).collect();
                    let bot: Vec<i64> = (0..len).map(|i| ((code >> (i + len)) & 1) as i64).collect();
                    let (t, b) = (word(&top), word(&bot));
                    let expected = brute_matches(&p1, &t)
                        && brute_matches(&p2, &b)
                        && (!require_diff || t != b);
                    assert_eq!(nfa.accepts(&zip_tracks(&t, &b)), expected, "{top:?} {bot:?}");
                }
            }
        }
    }

    #[test]
    fn runs_correspond_to_exponent_tuples() {
        let patterns = [
            PatternSpec::from_ints(&[1, 1, 1], &[1, 1]).unwrap(),
            PatternSpec::from_ints(&[1, 2, 3], &[4, 5]).unwrap(),
            PatternSpec::from_ints(&[0, 1, 0, 1], &[1, 0, 1]).unwrap(),
            PatternSpec::from_ints(&[2, 2], &[2]).unwrap(),
            PatternSpec::from_ints(&[7], &[]).unwrap(),
        ];
        for p in &patterns {
            let nfa = pattern_automaton(p);
            let seq = seq_of(p);
            let mut counts: BTreeMap<DigitWord, u128> = BTreeMap::new();
            let all = all_tuples(p.s(), 4);
            for k in &all {
                *counts.entry(instantiate_word(&seq, k).unwrap()).or_default() += 1;
            }
            for (w, n) in &counts {
                let exact = tuples(p.s(), w.len())
                    .iter()
                    .filter(|k| instantiate_word(&seq, k).unwrap() == *w)
                    .count() as u128;
                assert_eq!(nfa.count_accepting_runs(w.digits()), exact, "{w}");
                assert!(exact >= *n);
            }
        }
    }

    fn all_tuples(s: usize, bound: u32) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for _ in 0..s {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (1..=bound).map(move |k| {
                        let mut t = t.clone();
                        t.push(k);
                        t
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn exponents_decode_from_runs() {
        let p = PatternSpec::from_ints(&[1, 2, 3], &[4, 5]).unwrap();
        let nfa = pattern_automaton(&p);
        let seq = seq_of(&p);
        for k in all_tuples(2, 4) {
            let w = instantiate_word(&seq, &k).unwrap();
            let single = pattern_automaton(&p);
            assert_eq!(single.count_accepting_runs(w.digits()), 1);
            let pairs = pair_pattern_automaton(&p, &p, false);
            let zipped = zip_tracks(w.digits(), w.digits());
            assert!(pairs.accepts(&zipped));
            assert_eq!(split_tracks(&zipped).0, w.digits().to_vec());
            // walk the unique run
            let mut state = 0usize;
            let mut positions = vec![0usize];
            for d in w.digits() {
                state = nfa.step(state, d)[0];
                positions.push(*nfa.label_of(state));
            }
            assert_eq!(exponents_from_positions(2, &positions), k);
        }
    }
}
