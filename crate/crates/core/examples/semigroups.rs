//! Finite aperiodic semigroups as an oracle for identities.

use omega_terms::semigroup::{enumerate_aperiodic, find_refutation, parse_assignment, FiniteSemigroup};
use omega_terms::OmegaTerm;

pub fn main() {
    let count = enumerate_aperiodic(3).expect("small order").count();
    println!("aperiodic tables of order ≤ 3: {count}");
    let s = FiniteSemigroup::new(vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 0]]).expect("associative");
    println!("aperiodic={} ind={}", s.is_aperiodic(), s.ind());
    let g = parse_assignment("a=1,b=2").expect("valid");
    let t = OmegaTerm::parse("(ab)a").expect("valid");
    println!("value of {t}: {}", s.evaluate(&t, &g).expect("assigned"));
    let (x, y) = (
        OmegaTerm::parse("(a)b").expect("valid"),
        OmegaTerm::parse("(a)bb").expect("valid"),
    );
    match find_refutation(&x, &y, 3).expect("small order") {
        Some(r) => println!("{x} != {y}: {:?} under {:?}", r.semigroup.rows(), r.assignment),
        None => println!("{x} and {y} agree up to order 3"),
    }
    println!("{}", s.to_json());
}
