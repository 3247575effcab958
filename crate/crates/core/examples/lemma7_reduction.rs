//! The reduction from `P(a, x2, ..., xm) = 0` to non-injectivity:
//! `Q = e·C(m+1)(x1, ..., xm, P²·x(m+1))` repeats a value on tails `(x2, ..., x(m+1))`
//! exactly when `P(a, ·)` has a root in nonnegative integers.

use bounded_freeness::algebra::Rational;
use bounded_freeness::encoder::{build_q, cantor_polynomial, lemma7_check, MuA, Polynomial};

fn poly(arity: usize, terms: &[(&[u32], i64)]) -> Polynomial {
    Polynomial::from_terms(arity, terms.iter().map(|(e, c)| (e.to_vec(), Rational::from(*c)))).unwrap()
}

fn main() {
    println!("C2 = {}", cantor_polynomial(2).unwrap());

    let p = poly(2, &[(&[1, 0], 1), (&[0, 1], -2)]);
    let (q, e) = build_q(&p).unwrap();
    println!("P = {p}: Q has {} terms, degree {}, e = {e}", q.term_count(), q.degree());
    for a in 1..=6 {
        match lemma7_check(&p, a, 5).unwrap() {
            Some(hit) => println!("a = {a}: Q({a}, {:?}) = Q({a}, {:?}) = {}", hit.left, hit.right, hit.value),
            None => println!("a = {a}: no collision with tails up to 5"),
        }
    }

    // small enough to build the matrices of mu_a themselves
    let p = poly(1, &[(&[1], 1), (&[0], -2)]);
    for a in [1, 2, 3] {
        let mu = MuA::new(&p, a).unwrap();
        let values: Vec<String> = (0..4).map(|x| mu.value(&[x]).unwrap().to_string()).collect();
        println!("P = {p}, a = {a}, k = {}: mu_a(z1 x^n z2) for n = 0..3 -> {}", mu.gadget.k(), values.join(", "));
    }
}
