//! Deciding equality of ω-terms by normal forms and by language disjointness.

use omega_terms::decide::{decide_eq, decide_eq_language, threshold};
use omega_terms::term::Alphabet;
use omega_terms::OmegaTerm;

pub fn main() {
    let alph = Alphabet::default();
    let p = |s: &str| OmegaTerm::parse(s).expect("valid");
    for (a, b) in [("(a)", "(a)(a)"), ("((a))", "(a)"), ("a", "aa"), ("(ab)a", "a(ba)")] {
        let v = decide_eq(&p(a), &p(b), &alph).expect("within budget");
        println!("{a} = {b}: {}", v.to_json());
    }
    let (x, y) = (p("(a)ab(b)"), p("(a)b"));
    println!("threshold({x}, {y}) = {}", threshold(&x, &y));
    let v = decide_eq_language(&x, &y, &alph).expect("normal forms");
    println!("by languages: equal={}", v.equal);
    match decide_eq_language(&p("(ab)a"), &p("a(ba)"), &alph) {
        Ok(_) => unreachable!(),
        Err(e) => println!("refused: {e}"),
    }
}
