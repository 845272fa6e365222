//! Recovering the exponents of a word against a rank-1 normal form.

use omega_terms::decide::{expansion_witness, factorizations, subsumption, synchronize_rank1};
use omega_terms::lang::expansion::sample_expansion;
use omega_terms::term::{Alphabet, Letter};
use omega_terms::OmegaTerm;

pub fn main() {
    let alph = Alphabet::default();
    let t = OmegaTerm::parse("(a)b(a)").expect("valid");
    let n = t.mu();
    let w: Vec<Letter> = format!("{}b{}", "a".repeat(n), "a".repeat(n + 2))
        .chars()
        .map(Letter::Plain)
        .collect();
    let f = synchronize_rank1(&w, &t, n, &alph).expect("member");
    println!("n = μ = {n}: exponents {:?}", f.exponents);
    let loose: Vec<Letter> = "aaaa".chars().map(Letter::Plain).collect();
    let all = factorizations(&loose, &OmegaTerm::parse("(a)(a)").expect("valid"), 1);
    println!("aaaa against (a)(a) at n = 1: {} factorizations", all.len());
    let base = OmegaTerm::parse("((a)b)").expect("valid");
    let e = sample_expansion(&base, 49, &[49]).expect("exponent at least n");
    println!(
        "L_49 meet: {}",
        subsumption(&e, &base, 49, &alph).expect("preconditions")
    );
    let chain = expansion_witness(&e, &base, 49).expect("one expansion");
    println!("witness exponents {:?}", chain[0].exponents);
}
