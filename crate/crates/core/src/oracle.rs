//! Brute-force ground truth: exhaustive search over bounded exponents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::UTMat2;
use crate::automata::PatternSpec;
use crate::decider::{Instance, Witness};
use crate::numeration::{Digit, DigitSequence};

/// All colliding pairs among exponent vectors in `[0, bound]^t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionReport {
    pub found: bool,
    pub bound: u32,
    /// Each pair has `left < right`; pairs are sorted.
    pub pairs: Vec<Witness>,
}

/// Every vector in `[lo, hi]^len`, in lexicographic order.
pub fn exponent_vectors(len: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (lo..=hi).map(move |m| {
                    let mut v = prefix.clone();
                    v.push(m);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn search_collisions(inst: &Instance, bound: u32) -> CollisionReport {
    search_collisions_in(inst.x(), inst.z(), bound)
}

/// Same as [`search_collisions`] but accepts singular matrices.
pub fn search_collisions_in(x: &UTMat2, z: &[UTMat2], bound: u32) -> CollisionReport {
    assert!(!z.is_empty(), "need at least one z matrix");
    let t = z.len() - 1;
    let powers: Vec<UTMat2> = (0..=bound).map(|m| x.pow(m as u64)).collect();
    let mut groups: BTreeMap<UTMat2, Vec<Vec<u32>>> = BTreeMap::new();
    for v in exponent_vectors(t, 0, bound) {
        let mut acc = z[0].clone();
        for (m, zi) in v.iter().zip(&z[1..]) {
            acc = &(&acc * &powers[*m as usize]) * zi;
        }
        groups.entry(acc).or_default().push(v);
    }
    let mut pairs = Vec::new();
    for members in groups.values() {
        for (i, left) in members.iter().enumerate() {
            for right in &members[i + 1..] {
                pairs.push(Witness::new(left.clone(), right.clone()));
            }
        }
    }
    pairs.sort_by(|p, q| (&p.left, &p.right).cmp(&(&q.left, &q.right)));
    CollisionReport {
        found: !pairs.is_empty(),
        bound,
        pairs,
    }
}

/// The word `fixed[0] starred[0]^(e_s - 1) fixed[1] ... starred[s-1]^(e_1 - 1) fixed[s]`.
fn spell(pattern: &PatternSpec, exponents: &[u32]) -> Vec<Digit> {
    let s = pattern.s();
    let mut word = Vec::new();
    for i in 0..s {
        word.push(pattern.fixed()[i].clone());
        for _ in 1..exponents[s - 1 - i] {
            word.push(pattern.starred()[i].clone());
        }
    }
    word.push(pattern.fixed()[s].clone());
    word
}

/// Two distinct tuples in `[1, bound]^s` that spell the same word, smaller first.
pub fn pattern_tuple_collision(pattern: &PatternSpec, bound: u32) -> Option<(Vec<u32>, Vec<u32>)> {
    if pattern.s() == 0 {
        return None;
    }
    let mut seen: BTreeMap<Vec<Digit>, Vec<u32>> = BTreeMap::new();
    for v in exponent_vectors(pattern.s(), 1, bound) {
        let word = spell(pattern, &v);
        if let Some(prev) = seen.get(&word) {
            return Some((prev.clone(), v));
        }
        seen.insert(word, v);
    }
    None
}

/// [`pattern_tuple_collision`] on the digits of a sequence.
pub fn tuple_collision_bruteforce(seq: &DigitSequence, bound: u32) -> Option<(Vec<u32>, Vec<u32>)> {
    pattern_tuple_collision(&PatternSpec::from_sequence(seq), bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vectors_are_lexicographic() {
        let v = exponent_vectors(2, 0, 1);
        assert_eq!(v, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(exponent_vectors(0, 0, 3), vec![Vec::<u32>::new()]);
        assert_eq!(exponent_vectors(3, 1, 4).len(), 64);
    }

    #[test]
    fn example_instances() {
        let id = UTMat2::identity();
        let ex1 = Instance::new(2, UTMat2::new(3, 0, 1), vec![id.clone(), UTMat2::new(2, 1, 3), id.clone()]).unwrap();
        assert!(!search_collisions(&ex1, 6).found);

        let ex2 = Instance::new(1, id.clone(), vec![id.clone(), id.clone()]).unwrap();
        let report = search_collisions(&ex2, 2);
        assert_eq!(report.pairs[0], Witness::new(vec![0], vec![1]));
        assert_eq!(report.pairs.len(), 3);

        // singular last z, still injective
        let n = UTMat2::new(3, 1, 1);
        let report = search_collisions_in(&UTMat2::new(3, 0, 1), &[n, UTMat2::new(0, 1, 1)], 6);
        assert!(!report.found);
    }

    #[test]
    fn tuple_collisions() {
        let ones = PatternSpec::from_ints(&[1, 1, 1], &[1, 1]).unwrap();
        let (a, b) = pattern_tuple_collision(&ones, 3).unwrap();
        assert_eq!((a, b), (vec![1, 2], vec![2, 1]));
        let distinct = PatternSpec::from_ints(&[1, 2, 3], &[4, 5]).unwrap();
        assert_eq!(pattern_tuple_collision(&distinct, 4), None);
        let single = PatternSpec::from_ints(&[5], &[]).unwrap();
        assert_eq!(pattern_tuple_collision(&single, 4), None);
    }

    #[test]
    fn spelling_matches_instantiation() {
        use crate::numeration::instantiate_word;
        let seq = DigitSequence {
            s: 2,
            q: vec![1.into(), 2.into(), 3.into()],
            p: vec![4.into(), 5.into()],
            d1: 1.into(),
            d2: 1.into(),
            c: 1.into(),
            a: 2.into(),
        };
        let pattern = PatternSpec::from_sequence(&seq);
        for v in exponent_vectors(2, 1, 4) {
            assert_eq!(spell(&pattern, &v), instantiate_word(&seq, &v).unwrap().0);
        }
    }
}
