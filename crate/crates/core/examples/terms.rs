//! Parsing ω-terms and reading off rank, length, crucial portions and μ.

use omega_terms::OmegaTerm;

pub fn main() {
    let t = OmegaTerm::parse("((a)ab(b)ba)(a)ab(b)").expect("well parenthesized");
    println!("term    {t}");
    println!("rank    {}", t.rank());
    println!("length  {}", t.len());
    println!("mu      {}", t.mu());
    let sq = t.concat(&t);
    for p in sq.crucial_portions().expect("positive rank") {
        println!("crucial portion of t² at {}: {}", p.location, p.to_term());
    }
    let frozen = t.freeze().expect("positive rank");
    println!("frozen  {frozen} (rank {})", frozen.rank());
    assert_eq!(frozen.unfreeze().expect("frozen letters"), t);
    match OmegaTerm::parse("(a(b)") {
        Ok(_) => unreachable!(),
        Err(e) => println!("parse error: {e}"),
    }
}
