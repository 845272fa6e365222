mod common;

use common::{all_terms, nf_strategy, term_strategy, top_powers};
use omega_terms::lang::expansion::sample_expansion;
use omega_terms::normal_form::{
    apply_rule, check_circular_normal_form, check_normal_form, is_normal_form, normalize, Direction, Rule,
};
use omega_terms::semigroup::agree_on_aperiodic;
use omega_terms::term::Alphabet;
use omega_terms::OmegaTerm;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn alph() -> Alphabet {
    Alphabet::default()
}

/// One random rule application that keeps the term short, if any applies.
fn random_step<R: Rng>(rng: &mut R, x: &OmegaTerm, max_len: usize) -> Option<OmegaTerm> {
    for _ in 0..200 {
        let rule = Rule::ALL[rng.gen_range(0..Rule::ALL.len())];
        let dir = if rng.gen_bool(0.6) {
            Direction::Contract
        } else {
            Direction::Expand
        };
        let pos = rng.gen_range(0..x.len());
        let arg = rng.gen_range(0..4);
        if let Ok(y) = apply_rule(x, rule, dir, pos, arg) {
            if y.len() <= max_len {
                return Some(y);
            }
        }
    }
    None
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn steps_preserve_value(x in term_strategy(10)) {
        let (_, tr) = normalize(&x, &alph()).unwrap();
        for s in &tr.steps {
            prop_assert!(agree_on_aperiodic(&s.before, &s.after, 3).unwrap(), "{}", s);
            prop_assert_eq!(apply_rule(&s.before, s.rule, s.direction, s.position, s.arg).unwrap(), s.after.clone());
        }
    }

    #[test]
    fn normal_forms_are_fixed(x in nf_strategy(12)) {
        prop_assert!(check_normal_form(&x, &alph()).verdict);
        let (y, tr) = normalize(&x, &alph()).unwrap();
        prop_assert_eq!(y, x);
        prop_assert!(tr.steps.is_empty());
    }

    #[test]
    fn expansions_of_normal_forms_are_normal(x in nf_strategy(12), seed in any::<u64>()) {
        prop_assume!(x.rank() > 0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..4);
        let ks: Vec<usize> = (0..top_powers(&x)).map(|_| n + rng.gen_range(0..3)).collect();
        let e = sample_expansion(&x, n, &ks).unwrap();
        prop_assert!(is_normal_form(&e, &alph()), "{} expands to {}", x, e);
    }

    #[test]
    fn random_rule_walks_reach_the_same_normal_form(x in term_strategy(10), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (expected, _) = normalize(&x, &alph()).unwrap();
        let mut cur = x.clone();
        for _ in 0..rng.gen_range(1..8) {
            match random_step(&mut rng, &cur, 2 * x.len() + 6) {
                Some(y) => cur = y,
                None => break,
            }
        }
        let (got, _) = normalize(&cur, &alph()).unwrap();
        prop_assert_eq!(got, expected, "walk from {} reached {}", x, cur);
    }
}

#[test]
fn worked_circular_examples() {
    let c = |s: &str| {
        check_circular_normal_form(&OmegaTerm::parse(s).unwrap(), &alph())
            .unwrap()
            .verdict
    };
    assert!(c("(a)ab(b)ba"));
    assert!(!c("(a)a(b)"));
}

#[test]
fn expansions_keep_circular_normal_form() {
    let corpus: Vec<OmegaTerm> = all_terms(10, &['a', 'b'])
        .into_iter()
        .filter(|x| x.rank() > 0 && check_circular_normal_form(x, &alph()).unwrap().verdict)
        .collect();
    assert!(corpus.len() >= 20, "{}", corpus.len());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    for x in &corpus {
        for _ in 0..4 {
            let n = rng.gen_range(2..4);
            let ks: Vec<usize> = (0..top_powers(x)).map(|_| n + rng.gen_range(0..3)).collect();
            let e = sample_expansion(x, n, &ks).unwrap();
            if e.rank() == 0 {
                continue;
            }
            assert!(
                check_circular_normal_form(&e, &alph()).unwrap().verdict,
                "{x} expands to {e}"
            );
            checked += 1;
        }
    }
    assert!(checked > 0);
}
