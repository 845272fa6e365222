use serde::Serialize;

use super::view::{expand_atoms, position, View};
use crate::error::{Error, Result};
use crate::term::{atoms_syms, syms_to_string, Alphabet, Atom, OmegaTerm, Sym};
use crate::words::is_lyndon_by;

/// One violated condition. Positions are serialization offsets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub condition: u8,
    pub position: usize,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalFormReport {
    pub verdict: bool,
    pub failures: Vec<Failure>,
}

impl NormalFormReport {
    fn from_failures(failures: Vec<Failure>) -> Self {
        NormalFormReport {
            verdict: failures.is_empty(),
            failures,
        }
    }
}

/// A violation found at one level of expansion; indices refer to the atoms
/// of that level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Violation {
    /// Condition 1 at the power `power`.
    NotLyndon { power: usize },
    /// Condition 2 for the intermediate between powers `left` and `right`.
    Intermediate { left: usize, right: usize, prefix: bool },
    /// Condition 4: the copy of the base of `power` occupying
    /// `start..end` can be removed.
    Removable {
        power: usize,
        prefix: bool,
        start: usize,
        end: usize,
    },
}

impl Violation {
    pub fn condition(&self) -> u8 {
        match self {
            Violation::NotLyndon { .. } => 1,
            Violation::Intermediate { .. } => 2,
            Violation::Removable { .. } => 4,
        }
    }

    /// Inclusive range of atoms involved.
    pub fn region(&self) -> (usize, usize) {
        match *self {
            Violation::NotLyndon { power } => (power, power),
            Violation::Intermediate { left, right, .. } => (left, right),
            Violation::Removable { power, start, end, .. } => (start.min(power), (end - 1).max(power)),
        }
    }

    fn describe(&self, atoms: &[Atom]) -> String {
        let body = |i: usize| atoms[i].body().expect("power").to_string();
        match *self {
            Violation::NotLyndon { power } => format!("base {} is not a Lyndon word", body(power)),
            Violation::Intermediate { left, right, prefix } => {
                let mid = syms_to_string(&atoms_syms(&atoms[left + 1..right]));
                let mid = if mid.is_empty() { "ε".to_string() } else { mid };
                if prefix {
                    format!("intermediate {mid} is a prefix of a power of {}", body(left))
                } else {
                    format!("intermediate {mid} is a suffix of a power of {}", body(right))
                }
            }
            Violation::Removable { power, prefix, .. } => format!(
                "removing the {} {} keeps conditions 2 and 3",
                if prefix { "prefix" } else { "suffix" },
                body(power)
            ),
        }
    }
}

fn max_rank_powers(atoms: &[Atom]) -> Vec<usize> {
    let r = atoms.iter().map(Atom::rank).max().unwrap_or(0);
    if r == 0 {
        return Vec::new();
    }
    (0..atoms.len()).filter(|&i| atoms[i].rank() == r).collect()
}

fn prefix_of_power(a: &[Sym], b: &[Sym]) -> bool {
    a.iter().enumerate().all(|(i, s)| *s == b[i % b.len()])
}

fn suffix_of_power(a: &[Sym], b: &[Sym]) -> bool {
    let (n, m) = (a.len(), b.len());
    (0..n).all(|i| a[n - 1 - i] == b[m - 1 - i % m])
}

fn base(atoms: &[Atom], i: usize) -> &[Atom] {
    atoms[i].body().expect("power").atoms()
}

/// Condition 2 for the intermediate between powers `l` and `r`.
fn intermediate_violation(atoms: &[Atom], l: usize, r: usize) -> Option<Violation> {
    let mid = atoms_syms(&atoms[l + 1..r]);
    if prefix_of_power(&mid, &atoms_syms(base(atoms, l))) {
        return Some(Violation::Intermediate {
            left: l,
            right: r,
            prefix: true,
        });
    }
    if suffix_of_power(&mid, &atoms_syms(base(atoms, r))) {
        return Some(Violation::Intermediate {
            left: l,
            right: r,
            prefix: false,
        });
    }
    None
}

fn fails_condition_2(atoms: &[Atom]) -> bool {
    max_rank_powers(atoms)
        .windows(2)
        .any(|w| intermediate_violation(atoms, w[0], w[1]).is_some())
}

/// Whether removing `start..end` breaks condition 2 or 3.
fn removal_breaks(atoms: &[Atom], start: usize, end: usize, alph: &Alphabet) -> bool {
    let mut m = atoms[..start].to_vec();
    m.extend_from_slice(&atoms[end..]);
    fails_condition_2(&m) || !is_nf_atoms(&expand_atoms(&m), alph)
}

/// Conditions 1, 2 and 4 at the top level of `atoms`.
pub(crate) fn level_violations(atoms: &[Atom], alph: &Alphabet, first_only: bool) -> Vec<Violation> {
    let mut out = Vec::new();
    let ps = max_rank_powers(atoms);
    if ps.is_empty() {
        return out;
    }
    for &p in &ps {
        let syms = atoms_syms(base(atoms, p));
        if !is_lyndon_by(&syms, |a, b| alph.cmp_sym(*a, *b)).unwrap_or(false) {
            out.push(Violation::NotLyndon { power: p });
            if first_only {
                return out;
            }
        }
    }
    for w in ps.windows(2) {
        if let Some(v) = intermediate_violation(atoms, w[0], w[1]) {
            out.push(v);
            if first_only {
                return out;
            }
        }
    }
    for (k, &p) in ps.iter().enumerate() {
        let b = base(atoms, p);
        // prefix of the factor following the power
        let next = ps.get(k + 1).copied().unwrap_or(atoms.len());
        let end = p + 1 + b.len();
        if end <= next && atoms[p + 1..end] == *b && !removal_breaks(atoms, p + 1, end, alph) {
            out.push(Violation::Removable {
                power: p,
                prefix: true,
                start: p + 1,
                end,
            });
            if first_only {
                return out;
            }
        }
        // suffix of the factor preceding the power
        let prev = if k == 0 { 0 } else { ps[k - 1] + 1 };
        if p >= prev + b.len() && atoms[p - b.len()..p] == *b && !removal_breaks(atoms, p - b.len(), p, alph) {
            out.push(Violation::Removable {
                power: p,
                prefix: false,
                start: p - b.len(),
                end: p,
            });
            if first_only {
                return out;
            }
        }
    }
    out
}

pub(crate) fn is_nf_atoms(atoms: &[Atom], alph: &Alphabet) -> bool {
    let mut cur = atoms.to_vec();
    loop {
        if max_rank_powers(&cur).is_empty() {
            return true;
        }
        if !level_violations(&cur, alph, true).is_empty() {
            return false;
        }
        cur = expand_atoms(&cur);
    }
}

/// Number of violations summed over the successive expansions.
pub(crate) fn defect(atoms: &[Atom], alph: &Alphabet) -> usize {
    let mut cur = atoms.to_vec();
    let mut n = 0;
    while !max_rank_powers(&cur).is_empty() {
        n += level_violations(&cur, alph, false).len();
        cur = expand_atoms(&cur);
    }
    n
}

/// First violation over the successive expansions, with the level it
/// appears at.
pub(crate) fn first_violation(atoms: &[Atom], alph: &Alphabet) -> Option<(View, Violation, usize)> {
    let mut view = View::of(atoms);
    let mut level = 0;
    loop {
        if view.rank() == 0 {
            return None;
        }
        if let Some(v) = level_violations(&view.atoms, alph, true).pop() {
            return Some((view, v, level));
        }
        view = view.expand();
        level += 1;
    }
}

pub fn is_normal_form(t: &OmegaTerm, alph: &Alphabet) -> bool {
    is_nf_atoms(t.atoms(), alph)
}

/// Checks conditions 1 to 4, recursively through condition 3.
pub fn check_normal_form(t: &OmegaTerm, alph: &Alphabet) -> NormalFormReport {
    let atoms = t.atoms();
    let mut failures: Vec<Failure> = level_violations(atoms, alph, false)
        .into_iter()
        .map(|v| Failure {
            condition: v.condition(),
            position: t.offset_of(v.region().0),
            witness: v.describe(atoms),
        })
        .collect();
    if t.rank() > 0 {
        let top = View::of(atoms).expand();
        let mut view = top.clone();
        let mut level = 1;
        while view.rank() > 0 {
            if let Some(v) = level_violations(&view.atoms, alph, true).pop() {
                let o = &view.origins[v.region().0];
                let expanded = OmegaTerm::from_atoms(top.atoms.clone());
                failures.push(Failure {
                    condition: 3,
                    position: position(t, &o.path, o.idx),
                    witness: format!(
                        "expansion {expanded} is not in normal form: at depth {level}, condition {} fails: {}",
                        v.condition(),
                        v.describe(&view.atoms)
                    ),
                });
                break;
            }
            view = view.expand();
            level += 1;
        }
    }
    NormalFormReport::from_failures(failures)
}

/// Checks that every crucial portion of `t²` is in normal form. Failure
/// positions refer to `t²`.
pub fn check_circular_normal_form(t: &OmegaTerm, alph: &Alphabet) -> Result<NormalFormReport> {
    if t.rank() == 0 {
        return Err(Error::RankZero);
    }
    let sq = t.concat(t);
    let mut failures = Vec::new();
    for portion in sq.crucial_portions()? {
        let term = portion.to_term();
        for f in check_normal_form(&term, alph).failures {
            failures.push(Failure {
                condition: f.condition,
                position: portion.location + f.position,
                witness: format!("in crucial portion {term}: {}", f.witness),
            });
        }
    }
    Ok(NormalFormReport::from_failures(failures))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(s: &str) -> NormalFormReport {
        check_normal_form(&OmegaTerm::parse(s).unwrap(), &Alphabet::default())
    }

    fn conditions(s: &str) -> Vec<u8> {
        report(s).failures.iter().map(|f| f.condition).collect()
    }

    #[test]
    fn normal_examples() {
        for s in [
            "(a)ab(b)",
            "b(ab)abaa(a)aaab(aab)",
            "((a)ab(b)ba)(a)ab(b)",
            "ab",
            "(ab)a",
            "(a)",
            "((a)b)(a)",
        ] {
            let r = report(s);
            assert!(r.verdict, "{s}: {:?}", r.failures);
        }
    }

    #[test]
    fn rejected_examples() {
        assert_eq!(conditions("(ba)"), vec![1]);
        // the empty intermediate is a prefix of every power
        assert_eq!(conditions("(a)(a)"), vec![2]);
        assert_eq!(conditions("a(ba)"), vec![1]);
        assert_eq!(conditions("(a)a(b)"), vec![2]);
        assert_eq!(conditions("(a)a"), vec![4]);
        assert_eq!(conditions("((a)ab(b))"), vec![3]);
        assert!(!report("(aa)").verdict);
    }

    #[test]
    fn circular() {
        let alph = Alphabet::default();
        let c = |s: &str| check_circular_normal_form(&OmegaTerm::parse(s).unwrap(), &alph).unwrap();
        assert!(!c("(a)a(b)").verdict);
        assert!(c("(a)ab(b)ba").verdict);
        // wrap-around portions (a)b(a)(a) and (a)(a) have empty intermediates
        assert!(!c("(a)b(a)").verdict);
        assert!(!c("(a)").verdict);
        assert!(check_circular_normal_form(&OmegaTerm::parse("ab").unwrap(), &alph).is_err());
    }
}
