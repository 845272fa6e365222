//! Checking the normal-form and circular normal-form conditions.

use omega_terms::normal_form::{check_circular_normal_form, check_normal_form};
use omega_terms::term::Alphabet;
use omega_terms::OmegaTerm;

pub fn main() {
    let alph = Alphabet::default();
    for s in [
        "(a)ab(b)",
        "b(ab)abaa(a)aaab(aab)",
        "((a)ab(b)ba)(a)ab(b)",
        "(ba)",
        "(a)(a)",
        "a(ba)",
        "(a)a",
    ] {
        let r = check_normal_form(&OmegaTerm::parse(s).expect("valid"), &alph);
        println!("{s:>24}  normal={}", r.verdict);
        for f in r.failures {
            println!("{:>26}condition {} at {}: {}", "", f.condition, f.position, f.witness);
        }
    }
    for s in ["(a)ab(b)ba", "(a)a(b)"] {
        let r = check_circular_normal_form(&OmegaTerm::parse(s).expect("valid"), &alph).expect("positive rank");
        println!("{s:>24}  circular normal={}", r.verdict);
    }
    let reversed = Alphabet::with_order("ba").expect("two letters");
    let t = OmegaTerm::parse("(ba)").expect("valid");
    println!("(ba) with b < a: normal={}", check_normal_form(&t, &reversed).verdict);
}
