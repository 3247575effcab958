//! Finite automata over digits and digit pairs.
//!
//! [`Nfa`] is the materialized automaton. [`Automaton`] is the read-only view
//! that [`product`] consumes, which lets the equal-value automaton be explored
//! implicitly: only the carries reachable in a product are ever generated.

mod ambiguity;
mod equality;
mod nfa;
mod pattern;

use std::fmt;

use thiserror::Error;

use crate::numeration::Digit;

pub use ambiguity::{ambiguity_check, Ambiguity};
pub use equality::{equality_automaton, EqState, EqualityAutomaton, Reading};
pub use nfa::{product, reverse, Nfa, Run};
pub use pattern::{
    exponents_from_positions, pair_pattern_automaton, pattern_automaton, PairPatternState,
    PatternSpec,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomataError {
    #[error("base {0} is not usable (need |r| > 1 and r not in {{-1, 0, 1}})")]
    BadBase(String),
    #[error("digit {0} is not an integer")]
    NonIntegerDigit(String),
    #[error("automaton would need {0} states, above the supported limit")]
    TooLarge(String),
    #[error("automata have different alphabets")]
    AlphabetMismatch,
    #[error("letter {0} is not in the alphabet")]
    UnknownLetter(String),
    #[error("state {0} does not exist")]
    UnknownState(usize),
    #[error("fixed digits must outnumber starred digits by one ({fixed} vs {starred})")]
    PatternShape { fixed: usize, starred: usize },
}

/// A vertical pair of digits; a word over pairs encodes two equal-length words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairLetter {
    pub top: Digit,
    pub bottom: Digit,
}

impl PairLetter {
    pub fn new(top: impl Into<Digit>, bottom: impl Into<Digit>) -> Self {
        PairLetter {
            top: top.into(),
            bottom: bottom.into(),
        }
    }
}

impl fmt::Display for PairLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.top, self.bottom)
    }
}

impl fmt::Debug for PairLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}/{}]", self.top, self.bottom)
    }
}

/// Splits a pair word into its two tracks.
pub fn split_tracks(word: &[PairLetter]) -> (Vec<Digit>, Vec<Digit>) {
    word.iter()
        .map(|l| (l.top.clone(), l.bottom.clone()))
        .unzip()
}

/// Zips two equal-length words into a pair word. Panics on a length mismatch.
pub fn zip_tracks(top: &[Digit], bottom: &[Digit]) -> Vec<PairLetter> {
    assert_eq!(top.len(), bottom.len(), "pair words need equal-length tracks");
    top.iter()
        .zip(bottom)
        .map(|(a, b)| PairLetter {
            top: a.clone(),
            bottom: b.clone(),
        })
        .collect()
}

/// State label of a product automaton.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair<A, B>(pub A, pub B);

impl<A: fmt::Display, B: fmt::Display> fmt::Display for Pair<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

/// Read-only access to an automaton, materialized or not.
pub trait Automaton {
    /// Key identifying a state.
    type State: Clone + Ord;
    /// Human-facing label carried into products.
    type Label: Clone;
    type Letter: Clone + Ord;

    /// Sorted, deduplicated.
    fn alphabet(&self) -> Vec<Self::Letter>;
    fn initial_states(&self) -> Vec<Self::State>;
    fn is_accepting(&self, state: &Self::State) -> bool;
    fn label(&self, state: &Self::State) -> Self::Label;
    /// Outgoing transitions sorted by letter, then target.
    fn outgoing(&self, state: &Self::State) -> Vec<(Self::Letter, Self::State)>;
    fn successors(&self, state: &Self::State, letter: &Self::Letter) -> Vec<Self::State>;
}
