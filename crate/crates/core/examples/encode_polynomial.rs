//! Compiles `p(x1, x2) = x1·x2 - 3·x2 + 2` into upper-triangular integer matrices
//! `(A, M, N, B)` and checks `A M^a1 N M^a2 B = p(a1, a2)·E_k` on a grid.

use bounded_freeness::algebra::Rational;
use bounded_freeness::encoder::{compile, compiled_dimension, evaluate_gadget, Polynomial};

fn main() {
    let p = Polynomial::from_terms(
        2,
        [
            (vec![1, 1], Rational::from(1)),
            (vec![0, 1], Rational::from(-3)),
            (vec![0, 0], Rational::from(2)),
        ],
    )
    .unwrap();
    let g = compile(&p).unwrap();
    println!("p = {p}");
    println!("k = {} (predicted {}), all upper-triangular: {}", g.k(), compiled_dimension(&p), g.is_upper_triangular());
    for a1 in 0..4 {
        let row: Vec<String> = (0..4)
            .map(|a2| {
                let gadget = evaluate_gadget(&g, &[a1, a2]).unwrap();
                let symbolic = p.eval_at(&[a1, a2]).unwrap();
                assert_eq!(Rational::from_integer(gadget.clone()), symbolic);
                format!("{gadget:>4}")
            })
            .collect();
        println!("a1 = {a1}: {}", row.join(" "));
    }
}
