//! Iterated expansions `(β) ↦ ββ` of a term, with every atom traced back to
//! the atom of the original term it is a copy of.

use crate::term::{Atom, OmegaTerm};

/// Where an atom of an expansion comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Origin {
    /// Atom indices of the enclosing powers, outermost first.
    pub path: Vec<usize>,
    /// Which copy of each enclosing power body the atom lies in.
    pub copies: Vec<u8>,
    /// Index within the innermost enclosing sequence.
    pub idx: usize,
}

impl Origin {
    /// Whether `next` directly follows `self` in the original term.
    pub fn adjacent(&self, next: &Origin) -> bool {
        self.path == next.path && self.copies == next.copies && self.idx + 1 == next.idx
    }
}

#[derive(Clone, Debug)]
pub(crate) struct View {
    pub atoms: Vec<Atom>,
    pub origins: Vec<Origin>,
}

impl View {
    pub fn of(atoms: &[Atom]) -> Self {
        View {
            atoms: atoms.to_vec(),
            origins: (0..atoms.len())
                .map(|idx| Origin {
                    path: Vec::new(),
                    copies: Vec::new(),
                    idx,
                })
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.atoms.iter().map(Atom::rank).max().unwrap_or(0)
    }

    /// Replaces every maximal-rank power by two copies of its body.
    pub fn expand(&self) -> View {
        let r = self.rank();
        let mut atoms = Vec::new();
        let mut origins = Vec::new();
        for (a, o) in self.atoms.iter().zip(&self.origins) {
            match a {
                Atom::Power(body) if a.rank() == r => {
                    for copy in 0..2u8 {
                        for (i, b) in body.atoms().iter().enumerate() {
                            let mut path = o.path.clone();
                            path.push(o.idx);
                            let mut copies = o.copies.clone();
                            copies.push(copy);
                            atoms.push(b.clone());
                            origins.push(Origin { path, copies, idx: i });
                        }
                    }
                }
                _ => {
                    atoms.push(a.clone());
                    origins.push(o.clone());
                }
            }
        }
        View { atoms, origins }
    }
}

/// The expansion `(β) ↦ ββ` of the maximal-rank powers of a sequence.
pub(crate) fn expand_atoms(atoms: &[Atom]) -> Vec<Atom> {
    let r = atoms.iter().map(Atom::rank).max().unwrap_or(0);
    let mut out = Vec::new();
    for a in atoms {
        match a {
            Atom::Power(body) if a.rank() == r => {
                out.extend(body.atoms().iter().cloned());
                out.extend(body.atoms().iter().cloned());
            }
            _ => out.push(a.clone()),
        }
    }
    out
}

/// The sequence reached by following `path` from `atoms`.
pub(crate) fn seq_at<'a>(atoms: &'a [Atom], path: &[usize]) -> &'a [Atom] {
    let mut seq = atoms;
    for &p in path {
        seq = seq[p].body().expect("path runs through powers").atoms();
    }
    seq
}

/// Serialization offset of atom `idx` of the sequence at `path`.
pub(crate) fn position(t: &OmegaTerm, path: &[usize], idx: usize) -> usize {
    let mut seq = t.atoms();
    let mut off = 0;
    for &p in path {
        off += crate::term::atoms_len(&seq[..p]) + 1;
        seq = seq[p].body().expect("path runs through powers").atoms();
    }
    off + crate::term::atoms_len(&seq[..idx])
}
