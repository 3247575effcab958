//! Pattern automata `q1 p1* q2 ... ps* q(s+1)` and the check for two exponent
//! tuples that spell the same word.

use bounded_freeness::automata::{ambiguity_check, exponents_from_positions, pattern_automaton, PatternSpec};
use bounded_freeness::oracle::pattern_tuple_collision;

fn main() {
    let cases: [(&[i64], &[i64]); 4] = [
        (&[1, 1, 1], &[1, 1]),
        (&[1, 2, 3], &[4, 5]),
        (&[0, 0, 5, 0], &[0, 0, 7]),
        (&[2, 1, 2], &[1, 2]),
    ];
    for (fixed, starred) in cases {
        let pattern = PatternSpec::from_ints(fixed, starred).unwrap();
        let nfa = pattern_automaton(&pattern);
        let brute = pattern_tuple_collision(&pattern, 4);
        match ambiguity_check(&nfa) {
            Some(amb) => {
                let s = pattern.s();
                println!(
                    "q={fixed:?} p={starred:?}: ambiguous, word {:?}, tuples {:?} and {:?}; brute force: {brute:?}",
                    amb.word,
                    exponents_from_positions(s, &amb.first),
                    exponents_from_positions(s, &amb.second)
                );
            }
            None => println!("q={fixed:?} p={starred:?}: unambiguous; brute force: {brute:?}"),
        }
    }
}
