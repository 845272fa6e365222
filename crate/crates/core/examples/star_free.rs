//! Star-freeness of L_n[t] through aperiodicity of the transition semigroup.

use omega_terms::lang::expansion::{is_star_free, ln_dfa};
use omega_terms::OmegaTerm;

pub fn main() {
    let cases = [
        ("(a)ab(b)", None),
        ("(a)b", None),
        ("b(ab)", None),
        ("((a)ab(b)aabb)", Some(1)),
    ];
    for (s, n) in cases {
        let t = OmegaTerm::parse(s).expect("valid");
        let n = n.unwrap_or_else(|| t.mu());
        let dfa = ln_dfa(&t, n).expect("small");
        println!(
            "L_{n}[{t}]: {} states, star-free={}",
            dfa.num_states(),
            is_star_free(&dfa)
        );
    }
}
