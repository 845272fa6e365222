mod common;

use common::{all_terms, t, term_strategy, top_powers};
use omega_terms::lang::expansion::sample_expansion;
use omega_terms::OmegaTerm;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn render_parse_round_trip(x in term_strategy(14)) {
        let s = x.to_string();
        let back = OmegaTerm::parse(&s).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(back.to_string(), s);
    }

    #[test]
    fn rank_of_concat_and_power(x in term_strategy(8), y in term_strategy(8)) {
        prop_assert_eq!(x.concat(&y).rank(), x.rank().max(y.rank()));
        prop_assert_eq!(x.clone().power().rank(), x.rank() + 1);
    }

    #[test]
    fn freezing_halves_mu(x in term_strategy(10)) {
        prop_assume!(x.rank() > 0);
        let f = x.freeze().unwrap();
        prop_assert_eq!(f.rank(), x.rank() - 1);
        prop_assert!(2 * f.mu() <= x.mu(), "mu({}) = {}, mu({}) = {}", f, f.mu(), x, x.mu());
        prop_assert_eq!(f.unfreeze().unwrap(), x);
    }

    #[test]
    fn expansion_does_not_raise_mu(x in term_strategy(10), k in 1usize..4, extra in proptest::collection::vec(0usize..3, 8)) {
        prop_assume!(x.rank() > 0);
        let ks: Vec<usize> = (0..top_powers(&x)).map(|i| k + extra[i % extra.len()]).collect();
        let e = sample_expansion(&x, k, &ks).unwrap();
        prop_assert!(e.mu() <= x.mu(), "mu({}) = {} > mu({}) = {}", e, e.mu(), x, x.mu());
    }

    #[test]
    fn squares_have_crucial_portions(x in term_strategy(10)) {
        prop_assume!(x.rank() > 0);
        prop_assert!(!x.concat(&x).crucial_portions().unwrap().is_empty());
    }
}

#[test]
fn every_small_serialization_round_trips() {
    let all = all_terms(7, &['a', 'b']);
    assert!(all.len() > 1000);
    for x in all {
        let s = x.to_string();
        assert_eq!(t(&s).to_string(), s);
    }
}

#[test]
fn malformed_words_are_rejected() {
    for s in ["", "(", ")", "()", "a)", "(a", "a()b", "((a)"] {
        assert!(OmegaTerm::parse(s).is_err(), "{s}");
    }
}
