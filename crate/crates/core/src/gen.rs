//! Random ω-terms for property tests and the fuzz harness.

use rand::Rng;

use crate::term::{Atom, Letter, OmegaTerm};

/// A random term with serialization length at most `max_len` over
/// `letters`.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R, max_len: usize, letters: &[char]) -> OmegaTerm {
    assert!(max_len >= 1 && !letters.is_empty());
    let budget = rng.gen_range(1..=max_len);
    OmegaTerm::from_atoms(random_seq(rng, budget, letters))
}

fn random_seq<R: Rng + ?Sized>(rng: &mut R, budget: usize, letters: &[char]) -> Vec<Atom> {
    let mut atoms = Vec::new();
    let mut remaining = budget;
    while remaining > 0 && (atoms.is_empty() || rng.gen_bool(0.75)) {
        if remaining >= 3 && rng.gen_bool(0.35) {
            let inner = rng.gen_range(1..=remaining - 2);
            let body = random_seq(rng, inner, letters);
            remaining -= crate::term::atoms_len(&body) + 2;
            atoms.push(Atom::Power(OmegaTerm::from_atoms(body)));
        } else {
            atoms.push(Atom::Letter(Letter::Plain(letters[rng.gen_range(0..letters.len())])));
            remaining -= 1;
        }
    }
    atoms
}

/// A random word of length `len`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, len: usize, letters: &[char]) -> String {
    (0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect()
}
