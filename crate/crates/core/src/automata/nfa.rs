use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::{self, Display, Write as _};

use super::{Automaton, AutomataError, Pair};

/// A nondeterministic finite automaton with labelled states.
///
/// States are indexed `0..len()`; each carries a label of type `S`. Letters are
/// kept in sorted maps so every traversal is deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct Nfa<S, L> {
    labels: Vec<S>,
    alphabet: BTreeSet<L>,
    transitions: Vec<BTreeMap<L, Vec<usize>>>,
    initial: BTreeSet<usize>,
    accepting: Vec<bool>,
}

/// An accepting run: `states.len() == word.len() + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run<L> {
    pub word: Vec<L>,
    pub states: Vec<usize>,
}

impl<S: Clone, L: Clone + Ord + fmt::Debug> Nfa<S, L> {
    pub fn new(alphabet: impl IntoIterator<Item = L>) -> Self {
        Nfa {
            labels: Vec::new(),
            alphabet: alphabet.into_iter().collect(),
            transitions: Vec::new(),
            initial: BTreeSet::new(),
            accepting: Vec::new(),
        }
    }

    pub fn add_state(&mut self, label: S) -> usize {
        self.labels.push(label);
        self.transitions.push(BTreeMap::new());
        self.accepting.push(false);
        self.labels.len() - 1
    }

    pub fn add_transition(&mut self, from: usize, letter: L, to: usize) -> Result<(), AutomataError> {
        self.check_state(from)?;
        self.check_state(to)?;
        if !self.alphabet.contains(&letter) {
            return Err(AutomataError::UnknownLetter(format!("{letter:?}")));
        }
        let targets = self.transitions[from].entry(letter).or_default();
        if let Err(pos) = targets.binary_search(&to) {
            targets.insert(pos, to);
        }
        Ok(())
    }

    pub fn set_initial(&mut self, state: usize) -> Result<(), AutomataError> {
        self.check_state(state)?;
        self.initial.insert(state);
        Ok(())
    }

    pub fn set_accepting(&mut self, state: usize) -> Result<(), AutomataError> {
        self.check_state(state)?;
        self.accepting[state] = true;
        Ok(())
    }

    fn check_state(&self, state: usize) -> Result<(), AutomataError> {
        if state < self.labels.len() {
            Ok(())
        } else {
            Err(AutomataError::UnknownState(state))
        }
    }

    /// Replaces the alphabet by a superset of it.
    pub fn with_alphabet(mut self, alphabet: impl IntoIterator<Item = L>) -> Result<Self, AutomataError> {
        let extended: BTreeSet<L> = alphabet.into_iter().collect();
        if let Some(missing) = self.alphabet.iter().find(|l| !extended.contains(l)) {
            return Err(AutomataError::UnknownLetter(format!("{missing:?}")));
        }
        self.alphabet = extended;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[S] {
        &self.labels
    }

    pub fn label_of(&self, state: usize) -> &S {
        &self.labels[state]
    }

    pub fn alphabet_set(&self) -> &BTreeSet<L> {
        &self.alphabet
    }

    pub fn initial(&self) -> impl Iterator<Item = usize> + '_ {
        self.initial.iter().copied()
    }

    pub fn accepting(&self) -> impl Iterator<Item = usize> + '_ {
        self.accepting
            .iter()
            .enumerate()
            .filter_map(|(i, &acc)| acc.then_some(i))
    }

    pub fn is_accepting_state(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn transitions_from(&self, state: usize) -> &BTreeMap<L, Vec<usize>> {
        &self.transitions[state]
    }

    pub fn transition_count(&self) -> usize {
        self.transitions
            .iter()
            .flat_map(|m| m.values())
            .map(Vec::len)
            .sum()
    }

    pub fn step(&self, state: usize, letter: &L) -> &[usize] {
        self.transitions[state]
            .get(letter)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn accepts(&self, word: &[L]) -> bool {
        let mut current: BTreeSet<usize> = self.initial.clone();
        for letter in word {
            current = current
                .iter()
                .flat_map(|&s| self.step(s, letter).iter().copied())
                .collect();
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|&s| self.accepting[s])
    }

    /// Number of distinct accepting runs on `word`.
    pub fn count_accepting_runs(&self, word: &[L]) -> u128 {
        let mut counts = vec![0u128; self.len()];
        for &s in &self.initial {
            counts[s] = 1;
        }
        for letter in word {
            let mut next = vec![0u128; self.len()];
            for (s, &n) in counts.iter().enumerate() {
                if n == 0 {
                    continue;
                }
                for &t in self.step(s, letter) {
                    next[t] += n;
                }
            }
            counts = next;
        }
        counts
            .iter()
            .enumerate()
            .filter(|(s, _)| self.accepting[*s])
            .map(|(_, &n)| n)
            .sum()
    }

    /// A shortest accepting run, found by breadth-first search with states and
    /// letters visited in ascending order.
    pub fn shortest_run(&self) -> Option<Run<L>> {
        let mut parent: Vec<Option<(usize, L)>> = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::new();
        for &s in &self.initial {
            seen[s] = true;
            queue.push_back(s);
        }
        while let Some(s) = queue.pop_front() {
            if self.accepting[s] {
                let mut states = vec![s];
                let mut word = Vec::new();
                let mut cur = s;
                while let Some((prev, letter)) = &parent[cur] {
                    word.push(letter.clone());
                    states.push(*prev);
                    cur = *prev;
                }
                word.reverse();
                states.reverse();
                return Some(Run { word, states });
            }
            for (letter, targets) in &self.transitions[s] {
                for &t in targets {
                    if !seen[t] {
                        seen[t] = true;
                        parent[t] = Some((s, letter.clone()));
                        queue.push_back(t);
                    }
                }
            }
        }
        None
    }

    /// A shortest accepted word, or `None` when the language is empty.
    pub fn emptiness_witness(&self) -> Option<Vec<L>> {
        self.shortest_run().map(|run| run.word)
    }

    pub fn is_language_empty(&self) -> bool {
        self.shortest_run().is_none()
    }

    /// Renames states while keeping the structure.
    pub fn map_labels<T: Clone>(&self, f: impl Fn(&S) -> T) -> Nfa<T, L> {
        Nfa {
            labels: self.labels.iter().map(f).collect(),
            alphabet: self.alphabet.clone(),
            transitions: self.transitions.clone(),
            initial: self.initial.clone(),
            accepting: self.accepting.clone(),
        }
    }
}

impl<S: Clone + Display, L: Clone + Ord + Display + fmt::Debug> Nfa<S, L> {
    /// Graphviz rendering: accepting states are double circles, one edge per letter.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph nfa {{").unwrap();
        writeln!(out, "  rankdir=LR;").unwrap();
        writeln!(out, "  node [shape=circle];").unwrap();
        for (i, label) in self.labels.iter().enumerate() {
            let shape = if self.accepting[i] { "doublecircle" } else { "circle" };
            writeln!(out, "  s{i} [label=\"{}\", shape={shape}];", escape(&label.to_string())).unwrap();
        }
        for &i in &self.initial {
            writeln!(out, "  init{i} [shape=point];").unwrap();
            writeln!(out, "  init{i} -> s{i};").unwrap();
        }
        for (i, map) in self.transitions.iter().enumerate() {
            for (letter, targets) in map {
                for t in targets {
                    writeln!(out, "  s{i} -> s{t} [label=\"{}\"];", escape(&letter.to_string())).unwrap();
                }
            }
        }
        writeln!(out, "}}").unwrap();
        out
    }
}

fn escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

impl<S: Clone, L: Clone + Ord> Automaton for Nfa<S, L> {
    type State = usize;
    type Label = S;
    type Letter = L;

    fn alphabet(&self) -> Vec<L> {
        self.alphabet.iter().cloned().collect()
    }

    fn initial_states(&self) -> Vec<usize> {
        self.initial.iter().copied().collect()
    }

    fn is_accepting(&self, state: &usize) -> bool {
        self.accepting[*state]
    }

    fn label(&self, state: &usize) -> S {
        self.labels[*state].clone()
    }

    fn outgoing(&self, state: &usize) -> Vec<(L, usize)> {
        self.transitions[*state]
            .iter()
            .flat_map(|(l, ts)| ts.iter().map(move |&t| (l.clone(), t)))
            .collect()
    }

    fn successors(&self, state: &usize, letter: &L) -> Vec<usize> {
        self.transitions[*state]
            .get(letter)
            .cloned()
            .unwrap_or_default()
    }
}

/// Language reversal: transitions flipped, initial and accepting sets swapped.
pub fn reverse<S: Clone, L: Clone + Ord + fmt::Debug>(nfa: &Nfa<S, L>) -> Nfa<S, L> {
    let mut out = Nfa::new(nfa.alphabet.iter().cloned());
    for label in &nfa.labels {
        out.add_state(label.clone());
    }
    for (from, map) in nfa.transitions.iter().enumerate() {
        for (letter, targets) in map {
            for &to in targets {
                out.add_transition(to, letter.clone(), from)
                    .expect("states and letters come from a valid automaton");
            }
        }
    }
    for s in nfa.accepting() {
        out.initial.insert(s);
    }
    for &s in &nfa.initial {
        out.accepting[s] = true;
    }
    out
}

/// Intersection of two automata over the same alphabet. Only pairs reachable
/// from the initial pairs are built; labels keep both components.
pub fn product<A, B, L>(a: &A, b: &B) -> Result<Nfa<Pair<A::Label, B::Label>, L>, AutomataError>
where
    A: Automaton<Letter = L>,
    B: Automaton<Letter = L>,
    L: Clone + Ord + fmt::Debug,
{
    let alphabet = a.alphabet();
    if alphabet != b.alphabet() {
        return Err(AutomataError::AlphabetMismatch);
    }
    let mut out = Nfa::new(alphabet);
    let mut index: BTreeMap<(A::State, B::State), usize> = BTreeMap::new();
    let mut queue = VecDeque::new();

    let mut intern = |out: &mut Nfa<Pair<A::Label, B::Label>, L>,
                      queue: &mut VecDeque<(A::State, B::State, usize)>,
                      p: A::State,
                      q: B::State|
     -> usize {
        if let Some(&i) = index.get(&(p.clone(), q.clone())) {
            return i;
        }
        let i = out.add_state(Pair(a.label(&p), b.label(&q)));
        if a.is_accepting(&p) && b.is_accepting(&q) {
            out.accepting[i] = true;
        }
        index.insert((p.clone(), q.clone()), i);
        queue.push_back((p, q, i));
        i
    };

    for p in a.initial_states() {
        for q in b.initial_states() {
            let i = intern(&mut out, &mut queue, p.clone(), q);
            out.initial.insert(i);
        }
    }
    while let Some((p, q, i)) = queue.pop_front() {
        for (letter, p2) in a.outgoing(&p) {
            for q2 in b.successors(&q, &letter) {
                let j = intern(&mut out, &mut queue, p2.clone(), q2);
                let targets = out.transitions[i].entry(letter.clone()).or_default();
                if let Err(pos) = targets.binary_search(&j) {
                    targets.insert(pos, j);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Accepts exactly the given word over {0, 1, 2}.
    fn single_word(word: &[u8]) -> Nfa<usize, u8> {
        let mut nfa = Nfa::new(0..3u8);
        let mut prev = nfa.add_state(0);
        nfa.set_initial(prev).unwrap();
        for (i, &letter) in word.iter().enumerate() {
            let next = nfa.add_state(i + 1);
            nfa.add_transition(prev, letter, next).unwrap();
            prev = next;
        }
        nfa.set_accepting(prev).unwrap();
        nfa
    }

    fn universal() -> Nfa<usize, u8> {
        let mut nfa = Nfa::new(0..3u8);
        let s = nfa.add_state(0);
        nfa.set_initial(s).unwrap();
        nfa.set_accepting(s).unwrap();
        for l in 0..3 {
            nfa.add_transition(s, l, s).unwrap();
        }
        nfa
    }

    fn empty_language() -> Nfa<usize, u8> {
        let mut nfa = Nfa::new(0..3u8);
        let s = nfa.add_state(0);
        nfa.set_initial(s).unwrap();
        nfa
    }

    fn random_nfa(rng: &mut ChaCha8Rng) -> Nfa<usize, u8> {
        let n = rng.gen_range(1..6);
        let mut nfa = Nfa::new(0..3u8);
        for i in 0..n {
            nfa.add_state(i);
        }
        for _ in 0..rng.gen_range(0..3 * n) {
            let (from, to, l) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..3));
            nfa.add_transition(from, l, to).unwrap();
        }
        nfa.set_initial(rng.gen_range(0..n)).unwrap();
        for s in 0..n {
            if rng.gen_bool(0.4) {
                nfa.set_accepting(s).unwrap();
            }
        }
        nfa
    }

    fn random_word(rng: &mut ChaCha8Rng) -> Vec<u8> {
        let len = rng.gen_range(0..7);
        (0..len).map(|_| rng.gen_range(0..3)).collect()
    }

    #[test]
    fn builder_validates() {
        let mut nfa: Nfa<usize, u8> = Nfa::new([0u8]);
        let s = nfa.add_state(0);
        assert_eq!(nfa.add_transition(s, 1, s), Err(AutomataError::UnknownLetter("1".into())));
        assert_eq!(nfa.add_transition(s, 0, 7), Err(AutomataError::UnknownState(7)));
    }

    #[test]
    fn emptiness_examples() {
        assert_eq!(empty_language().emptiness_witness(), None);
        assert_eq!(single_word(&[1, 0]).emptiness_witness(), Some(vec![1, 0]));
        assert_eq!(universal().emptiness_witness(), Some(vec![]));
    }

    #[test]
    fn reverse_examples() {
        let a = single_word(&[1, 2]);
        let r = reverse(&a);
        assert!(r.accepts(&[2, 1]));
        assert!(!r.accepts(&[1, 2]));
        let rr = reverse(&r);
        assert!(rr.accepts(&[1, 2]));
        assert!(!rr.accepts(&[2, 1]));
    }

    #[test]
    fn product_examples() {
        let a = single_word(&[1, 0, 2]);
        let with_universal = product(&a, &universal()).unwrap();
        let with_empty = product(&a, &empty_language()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let w = random_word(&mut rng);
            assert_eq!(with_universal.accepts(&w), a.accepts(&w));
            assert!(!with_empty.accepts(&w));
        }
        assert!(with_universal.accepts(&[1, 0, 2]));

        let other: Nfa<usize, u8> = Nfa::new([0u8]);
        assert_eq!(product(&a, &other).err(), Some(AutomataError::AlphabetMismatch));
    }

    #[test]
    fn randomized_product_and_reverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let (a, b) = (random_nfa(&mut rng), random_nfa(&mut rng));
            let p = product(&a, &b).unwrap();
            let r = reverse(&a);
            for _ in 0..20 {
                let w = random_word(&mut rng);
                assert_eq!(p.accepts(&w), a.accepts(&w) && b.accepts(&w), "{w:?}");
                let wt: Vec<u8> = w.iter().rev().copied().collect();
                assert_eq!(a.accepts(&w), r.accepts(&wt));
            }
            if let Some(w) = p.emptiness_witness() {
                assert!(a.accepts(&w) && b.accepts(&w));
            }
        }
    }

    #[test]
    fn shortest_run_is_shortest() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let a = random_nfa(&mut rng);
            let found = a.shortest_run();
            // brute force over all words up to length 6
            let mut shortest = None;
            'outer: for len in 0..=6u32 {
                for code in 0..3u32.pow(len) {
                    let w: Vec<u8> = (0..len).map(|i| ((code / 3u32.pow(i)) % 3) as u8).collect();
                    if a.accepts(&w) {
                        shortest = Some(len as usize);
                        break 'outer;
                    }
                }
            }
            match (found, shortest) {
                (Some(run), Some(len)) => {
                    assert_eq!(run.word.len(), len);
                    assert!(a.accepts(&run.word));
                    assert_eq!(run.states.len(), run.word.len() + 1);
                }
                (None, None) => {}
                // accepting states more than 6 steps away are impossible with 5 states
                (f, s) => panic!("mismatch {f:?} vs {s:?}"),
            }
        }
    }

    #[test]
    fn dot_output_marks_accepting_states() {
        let dot = single_word(&[1]).to_dot();
        assert!(dot.starts_with("digraph nfa {"));
        assert!(dot.contains("s1 [label=\"1\", shape=doublecircle];"));
        assert!(dot.contains("s0 -> s1 [label=\"1\"];"));
        assert!(dot.contains("init0 -> s0;"));
    }
}
