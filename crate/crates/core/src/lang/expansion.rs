//! Expansions of ω-terms and their languages `L_n`.

use crate::error::{Error, Result};
use crate::lang::{Dfa, RegularExpr};
use crate::semigroup::TransformationSemigroup;
use crate::term::{Atom, Letter, OmegaTerm};

/// Largest accepted `n · |t|` when building `L_n[t]`.
pub const LN_GUARD: usize = 10_000;

/// One member of `E_n[t]`: every maximal-rank power `(δ)` of `t` replaced
/// by `δ^k` with `k >= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionSample {
    pub base: OmegaTerm,
    /// `(atom index of the power in base, exponent)`, left to right.
    pub exponents: Vec<(usize, usize)>,
    pub result: OmegaTerm,
}

impl ExpansionSample {
    pub fn new(t: &OmegaTerm, n: usize, exponents: &[usize]) -> Result<Self> {
        let powers = if t.rank() == 0 { Vec::new() } else { t.max_rank_powers() };
        if powers.len() != exponents.len() {
            return Err(Error::ExponentCount {
                expected: powers.len(),
                got: exponents.len(),
            });
        }
        if let Some(&e) = exponents.iter().find(|&&e| e < n) {
            return Err(Error::ExponentBelowThreshold { exponent: e, n });
        }
        let mut atoms = Vec::new();
        let mut next = powers.iter().zip(exponents).peekable();
        for (i, a) in t.atoms().iter().enumerate() {
            match next.peek() {
                Some((&p, &k)) if p == i => {
                    let body = a.body().expect("power");
                    for _ in 0..k {
                        atoms.extend(body.atoms().iter().cloned());
                    }
                    next.next();
                }
                _ => atoms.push(a.clone()),
            }
        }
        Ok(ExpansionSample {
            base: t.clone(),
            exponents: powers.into_iter().zip(exponents.iter().copied()).collect(),
            result: OmegaTerm::from_atoms(atoms),
        })
    }
}

/// A member of `E_n[t]` with the given exponents, one per maximal-rank
/// power; rank-0 terms are returned unchanged.
pub fn sample_expansion(t: &OmegaTerm, n: usize, exponents: &[usize]) -> Result<OmegaTerm> {
    Ok(ExpansionSample::new(t, n, exponents)?.result)
}

/// Regular expression for `L_n[t]`.
pub fn build_ln(t: &OmegaTerm, n: usize) -> Result<RegularExpr> {
    if n < 1 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let size = n.saturating_mul(t.len());
    if size > LN_GUARD {
        return Err(Error::BoundExceeded {
            what: "n·|t|",
            value: size,
            limit: LN_GUARD,
        });
    }
    Ok(ln_expr(t, n))
}

fn ln_expr(t: &OmegaTerm, n: usize) -> RegularExpr {
    let mut parts: Vec<RegularExpr> = t
        .atoms()
        .iter()
        .map(|a| match a {
            Atom::Letter(l) => RegularExpr::Symbol(*l),
            Atom::Power(body) => {
                let l = ln_expr(body, n);
                RegularExpr::Concat(vec![l.clone().star(), l.pow(n)])
            }
        })
        .collect();
    match parts.len() {
        0 => RegularExpr::Epsilon,
        1 => parts.pop().unwrap(),
        _ => RegularExpr::Concat(parts),
    }
}

/// Minimal automaton of `L_n[t]` over the letters of `t`.
pub fn ln_dfa(t: &OmegaTerm, n: usize) -> Result<Dfa> {
    let alphabet: Vec<Letter> = t.all_letters().into_iter().collect();
    Ok(build_ln(t, n)?.to_dfa_over(&alphabet))
}

/// Whether `w ∈ L_n[t]`.
pub fn member(w: &[Letter], t: &OmegaTerm, n: usize) -> Result<bool> {
    Ok(ln_dfa(t, n)?.accepts(w))
}

pub fn member_str(w: &str, t: &OmegaTerm, n: usize) -> Result<bool> {
    let letters: Vec<Letter> = w.chars().map(Letter::Plain).collect();
    member(&letters, t, n)
}

/// Whether `L_{n1}[t1] ∩ L_{n2}[t2] = ∅`.
pub fn intersect_empty(t1: &OmegaTerm, n1: usize, t2: &OmegaTerm, n2: usize) -> Result<bool> {
    Ok(ln_dfa(t1, n1)?.intersection_is_empty(&ln_dfa(t2, n2)?))
}

/// Aperiodicity of the transition semigroup.
pub fn is_star_free(d: &Dfa) -> bool {
    TransformationSemigroup::of_dfa(d).is_aperiodic()
}

/// Whether `L_{n+1}[t] ⊆ L_n[t]`.
pub fn monotone_check(t: &OmegaTerm, n: usize) -> Result<bool> {
    Ok(ln_dfa(t, n + 1)?.is_subset_of(&ln_dfa(t, n)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> OmegaTerm {
        OmegaTerm::parse(s).unwrap()
    }

    #[test]
    fn samples() {
        assert_eq!(
            sample_expansion(&t("((a)b)"), 3, &[3]).unwrap().to_string(),
            "(a)b(a)b(a)b"
        );
        assert_eq!(sample_expansion(&t("ab"), 9, &[]).unwrap().to_string(), "ab");
        assert_eq!(
            sample_expansion(&t("(a)c(b)"), 2, &[2, 3]).unwrap().to_string(),
            "aacbbb"
        );
        assert!(matches!(
            sample_expansion(&t("(a)c(b)"), 2, &[1, 3]),
            Err(Error::ExponentBelowThreshold { exponent: 1, n: 2 })
        ));
        assert!(matches!(
            sample_expansion(&t("(a)c(b)"), 2, &[2]),
            Err(Error::ExponentCount { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn ln_expressions() {
        let a = RegularExpr::symbol('a');
        let inner = RegularExpr::Concat(vec![
            RegularExpr::Concat(vec![a.clone().star(), a.clone().pow(3)]),
            RegularExpr::symbol('b'),
        ]);
        let expected = RegularExpr::Concat(vec![inner.clone().star(), inner.pow(3)]);
        assert_eq!(build_ln(&t("((a)b)"), 3).unwrap(), expected);
        assert_eq!(
            build_ln(&t("(a)"), 2).unwrap(),
            RegularExpr::Concat(vec![a.clone().star(), a.pow(2)])
        );
        assert!(build_ln(&t("(a)"), 0).is_err());
        assert!(matches!(build_ln(&t("(a)"), 5000), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn membership_and_disjointness() {
        assert!(member_str("aaab", &t("(a)b"), 3).unwrap());
        assert!(!member_str("ab", &t("(a)b"), 3).unwrap());
        assert!(member_str("ab", &t("ab"), 5).unwrap());
        assert!(intersect_empty(&t("(a)"), 2, &t("(b)"), 2).unwrap());
        assert!(!intersect_empty(&t("(a)b"), 3, &t("(a)b"), 3).unwrap());
        assert!(intersect_empty(&t("(a)ab(b)"), 17, &t("(a)b"), 17).unwrap());
    }

    #[test]
    fn star_freeness() {
        assert!(is_star_free(&ln_dfa(&t("(a)ab(b)"), 16).unwrap()));
        assert!(!is_star_free(&ln_dfa(&t("((a)ab(b)aabb)"), 1).unwrap()));
        assert!(!is_star_free(&RegularExpr::parse("(aa)*aa").unwrap().to_dfa()));
    }

    #[test]
    fn monotone() {
        assert!(monotone_check(&t("(a)"), 1).unwrap());
        assert!(monotone_check(&t("((a)b)"), 2).unwrap());
        assert!(monotone_check(&t("ab"), 7).unwrap());
    }
}
