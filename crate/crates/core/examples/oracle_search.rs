//! Exhaustive collision search over bounded exponents, including an instance
//! with a singular `z` matrix that the decider does not accept.

use bounded_freeness::algebra::UTMat2;
use bounded_freeness::decider::{decide, Instance};
use bounded_freeness::oracle::{search_collisions, search_collisions_in};

fn main() {
    let id = UTMat2::identity();
    let ex1 = Instance::new(2, UTMat2::new(3, 0, 1), vec![id.clone(), UTMat2::new(2, 1, 3), id.clone()]).unwrap();
    let report = search_collisions(&ex1, 6);
    println!("example 1, bound 6: {} collisions; decider says injective = {}", report.pairs.len(), decide(&ex1).unwrap().injective);

    let ex2 = Instance::new(1, id.clone(), vec![id.clone(), id.clone()]).unwrap();
    let report = search_collisions(&ex2, 2);
    println!("x = z1 = z2 = I, bound 2: {:?}", report.pairs.iter().map(ToString::to_string).collect::<Vec<_>>());

    let n = UTMat2::new(3, 1, 1);
    let last = UTMat2::new(0, 1, 1);
    let report = search_collisions_in(&UTMat2::new(3, 0, 1), &[n, last], 6);
    println!("singular last z, bound 6: found = {}", report.found);
    println!("{}", serde_json::to_string(&report).unwrap());
}
