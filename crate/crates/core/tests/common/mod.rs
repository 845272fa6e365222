#![allow(dead_code)]

use omega_terms::gen::random_term;
use omega_terms::normal_form::normalize;
use omega_terms::term::{Alphabet, Letter};
use omega_terms::OmegaTerm;
use rand::Rng;

pub fn t(s: &str) -> OmegaTerm {
    OmegaTerm::parse(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn word(s: &str) -> Vec<Letter> {
    s.chars().map(Letter::Plain).collect()
}

pub fn text(w: &[Letter]) -> String {
    w.iter().map(ToString::to_string).collect()
}

/// Every nonempty well-parenthesized word over `letters` and `(`, `)` of
/// length at most `max_len` with no empty parentheses.
pub fn all_terms(max_len: usize, letters: &[char]) -> Vec<OmegaTerm> {
    fn go(cur: &mut String, depth: usize, last_open: bool, max_len: usize, letters: &[char], out: &mut Vec<String>) {
        if depth == 0 && !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() >= max_len {
            return;
        }
        // room left to close every open parenthesis
        let room = max_len - cur.len();
        for &c in letters {
            if room > depth {
                cur.push(c);
                go(cur, depth, false, max_len, letters, out);
                cur.pop();
            }
        }
        if room >= depth + 3 {
            cur.push('(');
            go(cur, depth + 1, true, max_len, letters, out);
            cur.pop();
        }
        if depth > 0 && !last_open {
            cur.push(')');
            go(cur, depth - 1, false, max_len, letters, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut String::new(), 0, false, max_len, letters, &mut out);
    out.sort();
    out.iter().map(|s| t(s)).collect()
}

/// The normal form of a random term, redrawn until it is at most
/// `max_len` long.
pub fn random_nf<R: Rng>(rng: &mut R, gen_len: usize, max_len: usize, alph: &Alphabet) -> OmegaTerm {
    loop {
        let raw = random_term(rng, gen_len, &['a', 'b']);
        let (nf, _) = normalize(&raw, alph).expect("normalization succeeds");
        if nf.len() <= max_len {
            return nf;
        }
    }
}

/// Brute-force `u^∞` and `v^∞` agree on their first `k` letters.
pub fn powers_share_prefix<T: PartialEq + Clone>(u: &[T], v: &[T], k: usize) -> bool {
    let pu: Vec<T> = u.iter().cycle().take(k).cloned().collect();
    let pv: Vec<T> = v.iter().cycle().take(k).cloned().collect();
    pu.len() == k && pv.len() == k && pu == pv
}

/// Every word of length `1..=max_len` over `letters`.
pub fn all_words(max_len: usize, letters: &[char]) -> Vec<Vec<char>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<char>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                letters.iter().map(move |&c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Terms drawn from a seeded generator, so failing cases replay.
pub fn term_strategy(max_len: usize) -> impl proptest::strategy::Strategy<Value = OmegaTerm> {
    use proptest::strategy::Strategy;
    proptest::num::u64::ANY.prop_map(move |seed| {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        random_term(&mut rng, max_len, &['a', 'b'])
    })
}

/// Normal forms of seeded random terms.
pub fn nf_strategy(max_len: usize) -> impl proptest::strategy::Strategy<Value = OmegaTerm> {
    use proptest::strategy::Strategy;
    term_strategy(max_len).prop_map(|t| normalize(&t, &Alphabet::default()).expect("normalizes").0)
}

/// Number of powers at maximal rank.
pub fn top_powers(t: &OmegaTerm) -> usize {
    if t.rank() == 0 {
        0
    } else {
        t.max_rank_powers().len()
    }
}
