//! Normalizing ω-terms with a trace of rule applications.

use omega_terms::normal_form::{is_normal_form, normalize, verify_trace, RewriteTrace};
use omega_terms::semigroup::agree_on_aperiodic;
use omega_terms::term::Alphabet;
use omega_terms::OmegaTerm;

pub fn main() {
    let alph = Alphabet::default();
    for s in ["(a)(a)", "a(ba)", "((a))", "(a)(b)", "((a)ba)", "(abb(b))"] {
        let t = OmegaTerm::parse(s).expect("valid");
        let (nf, trace) = normalize(&t, &alph).expect("within budget");
        assert!(is_normal_form(&nf, &alph));
        assert!(verify_trace(&trace));
        assert!(agree_on_aperiodic(&t, &nf, 3).expect("small order"));
        println!("{s} -> {nf} in {} steps", trace.steps.len());
    }
    let (_, trace) = normalize(&OmegaTerm::parse("(a)(b)").expect("valid"), &alph).expect("within budget");
    let text = trace.to_text();
    print!("{text}");
    assert_eq!(RewriteTrace::parse(&text).expect("round trip"), trace);
}
