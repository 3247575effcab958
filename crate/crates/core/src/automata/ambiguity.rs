use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use super::Nfa;

/// Two distinct accepting runs on the same word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity<L> {
    pub word: Vec<L>,
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

/// Looks for a word with two distinct accepting runs.
///
/// Works on the self-product restricted to equal letters: the automaton is
/// ambiguous exactly when some pair `(p, q)` with `p != q` is reachable from a
/// pair of initial states and can reach a pair of accepting states.
pub fn ambiguity_check<S: Clone, L: Clone + Ord + fmt::Debug>(nfa: &Nfa<S, L>) -> Option<Ambiguity<L>> {
    type Node = (usize, usize);
    let mut index: BTreeMap<Node, usize> = BTreeMap::new();
    let mut nodes: Vec<Node> = Vec::new();
    let mut parent: Vec<Option<(usize, L)>> = Vec::new();
    let mut edges: Vec<Vec<(L, usize)>> = Vec::new();
    let mut queue = VecDeque::new();

    let initial: Vec<usize> = nfa.initial().collect();
    for &p in &initial {
        for &q in &initial {
            index.insert((p, q), nodes.len());
            queue.push_back(nodes.len());
            nodes.push((p, q));
            parent.push(None);
            edges.push(Vec::new());
        }
    }
    while let Some(i) = queue.pop_front() {
        let (p, q) = nodes[i];
        for (letter, p_targets) in nfa.transitions_from(p) {
            let q_targets = nfa.step(q, letter);
            for &p2 in p_targets {
                for &q2 in q_targets {
                    let j = match index.get(&(p2, q2)) {
                        Some(&j) => j,
                        None => {
                            let j = nodes.len();
                            index.insert((p2, q2), j);
                            nodes.push((p2, q2));
                            parent.push(Some((i, letter.clone())));
                            edges.push(Vec::new());
                            queue.push_back(j);
                            j
                        }
                    };
                    edges[i].push((letter.clone(), j));
                }
            }
        }
    }

    // pairs from which both runs can still accept
    let mut reverse: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    for (i, out) in edges.iter().enumerate() {
        for (_, j) in out {
            reverse[*j].push(i);
        }
    }
    let mut live = vec![false; nodes.len()];
    let mut stack: Vec<usize> = (0..nodes.len())
        .filter(|&i| nfa.is_accepting_state(nodes[i].0) && nfa.is_accepting_state(nodes[i].1))
        .collect();
    for &i in &stack {
        live[i] = true;
    }
    while let Some(j) = stack.pop() {
        for &i in &reverse[j] {
            if !live[i] {
                live[i] = true;
                stack.push(i);
            }
        }
    }

    // node indices are in BFS discovery order, so this is the closest split
    let split = (0..nodes.len()).find(|&i| live[i] && nodes[i].0 != nodes[i].1)?;

    let mut word = Vec::new();
    let mut path = vec![split];
    let mut cur = split;
    while let Some((prev, letter)) = &parent[cur] {
        word.push(letter.clone());
        path.push(*prev);
        cur = *prev;
    }
    word.reverse();
    path.reverse();

    // shortest continuation to an accepting pair, through live nodes only
    let mut back: BTreeMap<usize, (usize, L)> = BTreeMap::new();
    let mut queue = VecDeque::from([split]);
    let mut end = None;
    while let Some(i) = queue.pop_front() {
        let (p, q) = nodes[i];
        if nfa.is_accepting_state(p) && nfa.is_accepting_state(q) {
            end = Some(i);
            break;
        }
        for (letter, j) in &edges[i] {
            if live[*j] && *j != split && !back.contains_key(j) {
                back.insert(*j, (i, letter.clone()));
                queue.push_back(*j);
            }
        }
    }
    let end = end.expect("split node is live");
    let mut tail = Vec::new();
    let mut tail_letters = Vec::new();
    let mut cur = end;
    while cur != split {
        let (prev, letter) = back[&cur].clone();
        tail.push(cur);
        tail_letters.push(letter);
        cur = prev;
    }
    tail.reverse();
    tail_letters.reverse();
    word.extend(tail_letters);
    path.extend(tail);

    Some(Ambiguity {
        word,
        first: path.iter().map(|&i| nodes[i].0).collect(),
        second: path.iter().map(|&i| nodes[i].1).collect(),
    })
}
