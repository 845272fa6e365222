//! Normal forms of ω-terms: the recursive conditions 1–4, the rewriting
//! rules and normalization.

mod check;
mod normalize;
mod rules;
mod search;
mod view;

pub use check::{check_circular_normal_form, check_normal_form, is_normal_form, Failure, NormalFormReport};
pub use normalize::normalize;
pub use rules::{apply_rule, verify_trace, Direction, RewriteStep, RewriteTrace, Rule};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{Alphabet, OmegaTerm};

    fn nf(s: &str) -> String {
        let alph = Alphabet::default();
        let (out, trace) = normalize(&OmegaTerm::parse(s).unwrap(), &alph).unwrap();
        assert!(verify_trace(&trace), "{s}");
        assert!(is_normal_form(&out, &alph), "{s} -> {out}");
        out.to_string()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(nf("(a)(a)"), "(a)");
        assert_eq!(nf("a(ba)"), "(ab)a");
        assert_eq!(nf("((a))"), "(a)");
        assert_eq!(nf("(a)ab(b)"), "(a)ab(b)");
        assert_eq!(nf("(a)(b)"), "(a)ab(b)");
        assert_eq!(nf("((a)ba)"), "((a)b)a");
        assert_eq!(nf("((a)b(a))"), "((a)b)(a)");
        assert_eq!(nf("(ab)a(c)"), "(ab)ac(c)");
    }

    #[test]
    fn fixed_points_have_empty_traces() {
        let alph = Alphabet::default();
        for s in ["(a)ab(b)", "b(ab)abaa(a)aaab(aab)", "((a)ab(b)ba)(a)ab(b)"] {
            let t = OmegaTerm::parse(s).unwrap();
            let (out, trace) = normalize(&t, &alph).unwrap();
            assert_eq!(out, t);
            assert!(trace.steps.is_empty());
        }
    }
}
