//! Matrix products `N1 M^m1 N2 ... Ns M^ms N(s+1)` rewritten as values of digit
//! words in the base `a` taken from `M = c·[[a, b], [0, 1]]`.

use bounded_freeness::algebra::{canonical_form, UTMat2};
use bounded_freeness::numeration::{digit_sequence, instantiate_word, power_closed_form, value_of};

fn main() {
    let m = UTMat2::new(3, 1, 2);
    let cf = canonical_form(&m).unwrap();
    println!("M = {m} = {} * [[{}, {}], [0, 1]]", cf.c, cf.a, cf.b);
    for n in [1, 4] {
        println!("M^{n} = {}  (closed form {})", m.pow(n as u64), power_closed_form(&cf.c, &cf.a, &cf.b, n));
    }

    let ns = vec![UTMat2::new(1, 2, 1), UTMat2::new(2, 1, 3), UTMat2::new(5, 0, 1)];
    let seq = digit_sequence(&cf, &ns).unwrap();
    let show = |v: &[_]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    println!("fixed digits q = ({}), starred digits p = ({})", show(&seq.q), show(&seq.p));

    for exps in [[1, 1], [2, 1], [1, 3]] {
        let word = instantiate_word(&seq, &exps).unwrap();
        let direct = &(&(&(&ns[0] * &m.pow(exps[0] as u64)) * &ns[1]) * &m.pow(exps[1] as u64)) * &ns[2];
        let via_digits = seq.evaluate(&exps).unwrap();
        println!(
            "m = {exps:?}: word {word}, value {}, product {direct}, matches: {}",
            value_of(&word, &cf.a),
            direct == via_digits
        );
    }
}
