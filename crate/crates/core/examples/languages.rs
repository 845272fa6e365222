//! The languages L_n[t] as regular expressions and minimal automata.

use omega_terms::lang::expansion::{build_ln, intersect_empty, ln_dfa, monotone_check, sample_expansion};
use omega_terms::lang::RegularExpr;
use omega_terms::OmegaTerm;

pub fn main() {
    let t = OmegaTerm::parse("((a)b)").expect("valid");
    let re = build_ln(&t, 3).expect("small");
    let dfa = ln_dfa(&t, 3).expect("small");
    println!("L_3[{t}] = {re}");
    println!("minimal automaton: {} states", dfa.num_states());
    let reference = RegularExpr::parse("(a*aaab)*(a*aaab)^3").expect("valid").to_dfa();
    println!("equals (a*a³b)*(a*a³b)³: {}", dfa.equivalent(&reference));
    let e = sample_expansion(&t, 3, &[4]).expect("exponent at least n");
    println!("a member of E_3: {e}");
    for w in dfa.accepted_words(16).iter().take(3) {
        println!("word: {}", w.iter().map(ToString::to_string).collect::<String>());
    }
    println!("L_4 ⊆ L_3: {}", monotone_check(&t, 3).expect("small"));
    let (x, y) = (
        OmegaTerm::parse("(a)ab(b)").expect("valid"),
        OmegaTerm::parse("(a)b").expect("valid"),
    );
    println!(
        "L_17 of {x} and {y} disjoint: {}",
        intersect_empty(&x, 17, &y, 17).expect("small")
    );
    println!("{}", dfa.to_dot());
}
