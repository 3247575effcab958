//! The automaton accepting pairs of digit words with equal value in base 3/2.
//!
//! Prints the state count, checks a few pair words, and writes the automaton
//! in Graphviz format to stdout when run with `--dot`.

use bounded_freeness::algebra::rat;
use bounded_freeness::automata::{equality_automaton, reverse, zip_tracks};
use bounded_freeness::numeration::{value_of, Base, Digit, DigitWord};

fn main() {
    let r = rat("3/2");
    let base = Base::new(r.clone()).unwrap();
    let digits: Vec<Digit> = (-2..=2).map(Digit::from).collect();
    let lsd = equality_automaton(&base, &digits).unwrap();
    println!("base {r}, digits -2..2: {} states", lsd.len());

    // words are written most significant digit first, so read them with the reversal
    let msd = reverse(&lsd);
    for (top, bottom) in [("2,0", "1,2"), ("1,0,0", "0,2,-1"), ("1,1", "2,-1"), ("2,-2,1", "0,1,1")] {
        let (u, v): (DigitWord, DigitWord) = (top.parse().unwrap(), bottom.parse().unwrap());
        let accepted = msd.accepts(&zip_tracks(u.digits(), v.digits()));
        println!(
            "{u:>8} = {:<6} {v:>8} = {:<6} accepted: {accepted}",
            value_of(&u, &r).to_string(),
            value_of(&v, &r).to_string()
        );
    }

    if std::env::args().any(|a| a == "--dot") {
        print!("{}", lsd.to_dot());
    }
}
