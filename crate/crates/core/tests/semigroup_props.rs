mod common;

use std::collections::HashSet;

use common::{term_strategy, text};
use omega_terms::lang::expansion::{is_star_free, ln_dfa};
use omega_terms::lang::Dfa;
use omega_terms::semigroup::{enumerate_aperiodic, enumerate_semigroups, transition_semigroup, FiniteSemigroup};
use omega_terms::OmegaTerm;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn aperiodic_tables() -> Vec<&'static FiniteSemigroup> {
    enumerate_aperiodic(3).unwrap().collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn terms_agree_with_their_long_expansions(x in term_strategy(7), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let letters: Vec<char> = x.letters().into_iter().collect();
        for s in aperiodic_tables() {
            let n = s.ind().max(1);
            let Some(w) = ln_dfa(&x, n).unwrap().sample_word(&mut rng, 12) else { continue };
            let chars: Vec<char> = text(&w).chars().collect();
            for g in s.assignments(&letters) {
                prop_assert_eq!(s.evaluate(&x, &g).unwrap(), s.evaluate_word(&chars, &g).unwrap(), "{} vs {}", x, text(&w));
            }
        }
    }

    #[test]
    fn evaluation_respects_concatenation(x in term_strategy(8), y in term_strategy(8)) {
        let xy = x.concat(&y);
        let letters: Vec<char> = xy.letters().into_iter().collect();
        for s in aperiodic_tables() {
            for g in s.assignments(&letters) {
                let whole = s.evaluate(&xy, &g).unwrap();
                let parts = s.mul(s.evaluate(&x, &g).unwrap(), s.evaluate(&y, &g).unwrap());
                prop_assert_eq!(whole, parts);
            }
        }
    }
}

#[test]
fn omega_powers_are_idempotent_and_stable() {
    for order in 1..=3 {
        for s in enumerate_semigroups(order).unwrap() {
            let ind = s.ind();
            for e in 0..s.order() {
                let w = s.omega_power(e);
                assert_eq!(s.mul(w, w), w);
                if s.is_aperiodic() {
                    for m in ind.max(1)..ind + 4 {
                        assert_eq!(s.pow(e, m), w, "{:?} element {e}", s.rows());
                    }
                }
            }
        }
    }
}

/// Aperiodicity of the letter transformations of a raw table.
fn closure_aperiodic(delta: &[Vec<usize>]) -> bool {
    let n = delta.len();
    let gens: Vec<Vec<usize>> = (0..delta[0].len())
        .map(|x| (0..n).map(|q| delta[q][x]).collect())
        .collect();
    let mut seen: HashSet<Vec<usize>> = gens.iter().cloned().collect();
    let mut stack = gens.clone();
    while let Some(f) = stack.pop() {
        for g in &gens {
            let h: Vec<usize> = f.iter().map(|&q| g[q]).collect();
            if seen.insert(h.clone()) {
                stack.push(h);
            }
        }
    }
    seen.iter().all(|f| {
        let mut p: Vec<usize> = (0..n).collect();
        for _ in 0..n {
            p = p.iter().map(|&q| f[q]).collect();
        }
        p.iter().map(|&q| f[q]).collect::<Vec<_>>() == p
    })
}

#[test]
fn aperiodicity_ignores_state_names() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (s, n) in [
        ("(a)ab(b)", 2),
        ("((a)ab(b)aabb)", 1),
        ("(ab)", 2),
        ("((a)b)", 2),
        ("(aab)b", 1),
    ] {
        let d = ln_dfa(&OmegaTerm::parse(s).unwrap(), n).unwrap();
        let mut perm: Vec<usize> = (0..d.num_states()).collect();
        perm.shuffle(&mut rng);
        let k = d.alphabet().len();
        let mut delta = vec![vec![0; k]; d.num_states()];
        let mut accepting = vec![false; d.num_states()];
        for q in 0..d.num_states() {
            for x in 0..k {
                delta[perm[q]][x] = perm[d.next(q, x)];
            }
            accepting[perm[q]] = d.is_accepting(q);
        }
        let expected = is_star_free(&d);
        assert_eq!(closure_aperiodic(&delta), expected, "{s}");
        let renamed = Dfa::from_parts(d.alphabet().to_vec(), delta, perm[d.initial()], accepting).unwrap();
        assert!(renamed.equivalent(&d));
        assert_eq!(is_star_free(&renamed), expected);
        assert_eq!(transition_semigroup(&renamed).is_aperiodic(), expected);
    }
}
